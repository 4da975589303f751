"""Writes the two-topic-cluster corpus and checks its cosine margin with gensim.

Words alpha00..alpha49 and omega00..omega49 form two clusters; every sentence
draws eight tokens from a single cluster.
"""

import random
import sys
from itertools import combinations
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixtures" / "two_clusters.txt"
CLUSTERS = [[f"alpha{i:02d}" for i in range(50)], [f"omega{i:02d}" for i in range(50)]]


def generate() -> list[list[str]]:
    rng = random.Random(2024)
    sentences = []
    for _ in range(3000):
        words = CLUSTERS[rng.randrange(2)]
        sentences.append([rng.choice(words) for _ in range(8)])
    return sentences


def margin(vectors) -> float:
    import numpy as np

    def cos(u, v):
        return float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))

    within = [cos(vectors[a], vectors[b]) for c in CLUSTERS for a, b in combinations(c, 2)]
    cross = [cos(vectors[a], vectors[b]) for a in CLUSTERS[0] for b in CLUSTERS[1]]
    return sum(within) / len(within) - sum(cross) / len(cross)


def main() -> None:
    sentences = generate()
    OUT.write_text("".join(" ".join(s) + "\n" for s in sentences))
    if "--check" in sys.argv:
        from gensim.models import Word2Vec

        for seed in (1, 2, 3):
            model = Word2Vec(sentences, vector_size=32, window=5, negative=5, min_count=1,
                             sg=0, cbow_mean=1, sample=0, epochs=5, workers=1, seed=seed)
            print(f"gensim seed {seed}: margin {margin(model.wv):.4f}")


if __name__ == "__main__":
    main()
