"""Tabulate Kent's comparison over all surjections from small topological spaces.

For each domain size, counts how often the final pseudotopology already equals
the final topology, and how often the quotient map is biquotient.  Agreement
of the two columns is the criterion; the table also shows how rare
non-biquotient quotients are at each size.

    python3 scripts/kent_sweep.py --max-points 4
"""
import argparse
from collections import Counter

from finconv import components as pc
from finconv.harness.instances import enumerate_spaces, surjections


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--max-points", type=int, default=4)
    p.add_argument("--max-labels", type=int, default=3)
    args = p.parse_args()
    print(f"{'n':>2} {'maps':>7} {'coincide':>9} {'biquot':>7} {'disagree':>9}")
    for n in range(1, args.max_points + 1):
        tally = Counter()
        for X in enumerate_spaces(n, "topological"):
            for k in range(1, min(n, args.max_labels) + 1):
                for images in surjections(X.points, tuple(range(k))):
                    v = pc.check_kent(X, dict(zip(X.points, images)), range(k))
                    tally["maps"] += 1
                    tally["coincide"] += v.coincide
                    tally["biquotient"] += v.biquotient
                    tally["disagree"] += not v.agree
        print(f"{n:>2} {tally['maps']:>7} {tally['coincide']:>9} {tally['biquotient']:>7} {tally['disagree']:>9}")


if __name__ == "__main__":
    main()
