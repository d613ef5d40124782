"""Predicted versus sampled root counts for the P1xP1 family.

Supports: A1 = {0, e1}, A2 = {0, e1}, A3 = {0, k e1, l e2, k e1 + l e2}.
The first two force x = -c, so the third equation leaves l roots in y.

    python scripts/remark_table.py --max-k 4 --max-l 3 --trials 3
"""
import argparse

from toricdefect import Collection, overdetermined_count
from toricdefect.oracle import verify_count


def remark(k: int, l: int) -> Collection:
    return Collection.of(2, [[(0, 0), (1, 0)], [(0, 0), (1, 0)], [(0, 0), (k, 0), (0, l), (k, l)]])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--max-l", type=int, default=3)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'k':>3} {'l':>3} {'predicted':>9} {'sampled':>12}")
    for k in range(1, args.max_k + 1):
        for l in range(1, args.max_l + 1):
            c = remark(k, l)
            predicted = overdetermined_count(c).predicted_count
            rep = verify_count(c, trials=args.trials, seed=args.seed)
            sampled = sorted({n for _, n in rep.trials})
            print(f"{k:>3} {l:>3} {predicted:>9} {str(sampled):>12}")


if __name__ == "__main__":
    main()
