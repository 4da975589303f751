"""Plain NumPy CBOW with negative sampling, written from the word2vec recipe.

Used as an independent reference for the synthetic embedding fixtures:

    python3 tools/reference_cbow.py data/fixtures/two_clusters.txt
"""

import argparse
from collections import Counter
from itertools import combinations

import numpy as np


def train(sentences, dim=32, window=5, negative=5, epochs=5, alpha=0.025, min_count=1, seed=1):
    counts = Counter(t for s in sentences for t in s)
    vocab = sorted((w for w, c in counts.items() if c >= min_count), key=lambda w: (-counts[w], w))
    index = {w: i for i, w in enumerate(vocab)}
    rng = np.random.default_rng(seed)
    syn0 = (rng.random((len(vocab), dim)) - 0.5) / dim
    syn1 = np.zeros((len(vocab), dim))
    probs = np.array([counts[w] ** 0.75 for w in vocab])
    cum = np.cumsum(probs / probs.sum())
    ids = [[index[t] for t in s if t in index] for s in sentences]
    ids = [s for s in ids if len(s) >= 2]
    total = epochs * sum(len(s) for s in ids)
    seen = 0
    for _ in range(epochs):
        for s in ids:
            for pos, target in enumerate(s):
                lr = max(alpha * (1 - seen / total), alpha * 1e-4)
                seen += 1
                b = rng.integers(0, window)
                ctx = [s[j] for j in range(max(0, pos - window + b), min(len(s), pos + window - b + 1)) if j != pos]
                if not ctx:
                    continue
                h = syn0[ctx].mean(axis=0)
                grad = np.zeros(dim)
                samples = [(target, 1.0)]
                for _ in range(negative):
                    n = int(np.searchsorted(cum, rng.random()))
                    if n != target:
                        samples.append((min(n, len(vocab) - 1), 0.0))
                for w, label in samples:
                    g = (label - 1 / (1 + np.exp(-h @ syn1[w]))) * lr
                    grad += g * syn1[w]
                    syn1[w] += g * h
                syn0[ctx] += grad / len(ctx)
    return {w: syn0[i] for w, i in index.items()}


def cos(u, v):
    return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("corpus")
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    sentences = [line.split() for line in open(args.corpus) if line.strip()]
    for seed in args.seeds:
        vec = train(sentences, seed=seed)
        groups = {}
        for w in vec:
            groups.setdefault(w.rstrip("0123456789"), []).append(w)
        names = sorted(groups)
        within = [cos(vec[a], vec[b]) for g in names for a, b in combinations(groups[g], 2)]
        cross = [cos(vec[a], vec[b]) for g, h in combinations(names, 2) for a in groups[g] for b in groups[h]]
        print(f"seed {seed}: within {np.mean(within):.4f} cross {np.mean(cross):.4f} "
              f"margin {np.mean(within) - np.mean(cross):.4f}")


if __name__ == "__main__":
    main()
