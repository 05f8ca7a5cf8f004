"""Mine every registered property and write reports (and any witnesses) to a directory.

    python3 scripts/mine_all.py --out runs/mine --count 500 --seed 0
"""
import argparse
import sys

from finconv.harness.mining import MiningTask, mine, property_names
from finconv.harness.properties import REGISTRY


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="runs/mine")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="use enumerators where a property has one")
    args = p.parse_args()
    status = 0
    for name in property_names():
        source = "exhaustive" if args.exhaustive and REGISTRY[name].exhaustive else "sampled"
        count = 1 if name == "schedules" else args.count
        r = mine(MiningTask(name, source, seed=args.seed, count=count, out_dir=args.out, workers=args.workers))
        print(f"{name:22s} {source:10s} {r.instances:7d} instances  {len(r.violations)} violations", flush=True)
        status |= r.exit_status
    return status


if __name__ == "__main__":
    sys.exit(main())
