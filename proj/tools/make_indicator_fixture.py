"""Writes the 30-record targeted-toxicity fixture with its exact expected value.

The expected value is computed with rational arithmetic on the decimal
strings, so it is independent of the C++ floating-point path.
"""

import csv
import random
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixtures" / "indicator_records_30.csv"


def main() -> None:
    rng = random.Random(30)
    rows = []
    for i in range(30):
        bias = f"0.{rng.randint(1, 99):02d}"
        fpr = f"0.{rng.randint(0, 96):02d}"
        toxicity = f"0.{rng.randint(0, 99):02d}"
        rows.append((f"adj{i:02d}", bias, fpr, toxicity))
    total = sum(Fraction(b) * Fraction(f) * Fraction(t) for _, b, f, t in rows)
    expected = total / len(rows)
    with OUT.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["word", "bias", "fpr", "toxicity"])
        w.writerows(rows)
        w.writerow(["#expected", repr(float(expected)), repr(float(expected / 2)), ""])


if __name__ == "__main__":
    main()
