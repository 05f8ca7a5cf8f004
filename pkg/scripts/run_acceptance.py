"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py            # all fifteen
    python3 scripts/run_acceptance.py 5 7        # a subset
"""
import argparse
import sys
import time

from finconv.harness.acceptance import CRITERIA, format_line, run_criterion


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("numbers", nargs="*", type=int)
    args = p.parse_args()
    chosen = [c for c in CRITERIA if not args.numbers or c.number in args.numbers]
    start = time.perf_counter()
    failed = 0
    for c in chosen:
        out, secs = run_criterion(c)
        failed += not out.ok
        print(format_line(c, out, secs), flush=True)
    print(f"{len(chosen) - failed}/{len(chosen)} criteria pass in {time.perf_counter() - start:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
