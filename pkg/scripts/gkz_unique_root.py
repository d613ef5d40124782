"""Random n+1 supports whose differences generate Z^n have one common root.

Draws collections with minimal defect -1, essential subcollection equal to
everything and lattice index 1, then compares the prediction (always 1) to
sampled consistent systems when n <= 2.

    python scripts/gkz_unique_root.py --count 10 --seed 2024
"""
import argparse
import random

from toricdefect import Collection, analyze, overdetermined_count, reduce
from toricdefect.oracle import verify_count


def draw(rng: random.Random, n: int) -> Collection:
    while True:
        sups = [
            [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(2, 5))]
            for _ in range(n + 1)
        ]
        c = Collection.of(n, sups)
        if any(len(A) < 2 for A in c.supports):
            continue
        r = analyze(c)
        if r.minimal_defect == -1 and r.essential == frozenset(range(n + 1)) and reduce(c).index == 1:
            return c


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for _ in range(args.count):
        n = rng.randint(1, args.max_dim)
        c = draw(rng, n)
        predicted = overdetermined_count(c).predicted_count
        line = f"n={n} sizes={[len(A) for A in c.supports]} predicted={predicted}"
        if n <= 2:
            rep = verify_count(c, trials=args.trials, seed=rng.randint(0, 10**6))
            line += f" agreement={rep.agreement_fraction}"
        print(line)


if __name__ == "__main__":
    main()
