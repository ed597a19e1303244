"""Compare the compiled and pure-Python kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--points 400] [--atoms 32] [--repeat 3]
"""

import argparse
import random
import time

from fixlab import _pykernels, kernels


def best_time(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=400)
    parser.add_argument("--atoms", type=int, default=32)
    parser.add_argument("--centers", type=int, default=200)
    parser.add_argument("--period", type=int, default=2_000_003, help="denominator for the rotation loop")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if kernels._compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    rng = random.Random(args.seed)
    rows = [[rng.randint(-10**6, 10**6) for _ in range(args.atoms)] for _ in range(args.points)]
    centers = [[rng.randint(-10**6, 10**6) for _ in range(args.atoms)] for _ in range(args.centers)]
    weights = [rng.randint(1, 50) for _ in range(args.atoms)]

    cases = [
        (f"max_pairwise_l1 {args.points}x{args.atoms}",
         lambda: kernels._compiled.max_pairwise_l1(rows, weights),
         lambda: _pykernels.max_pairwise_l1(rows, weights)),
        (f"center_max_l1 {args.centers}x{args.points}x{args.atoms}",
         lambda: list(kernels._compiled.center_max_l1(centers, rows, weights)),
         lambda: _pykernels.center_max_l1(centers, rows, weights)),
        (f"first_return 1/{args.period}",
         lambda: kernels._compiled.first_return(1, args.period, args.period),
         lambda: _pykernels.first_return(1, args.period, args.period)),
    ]

    print(f"{'kernel':<36} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for name, fast, slow in cases:
        tc, rc = best_time(fast, args.repeat)
        tp, rp = best_time(slow, args.repeat)
        same = list(rc) == list(rp) if isinstance(rc, (list, tuple)) else rc == rp
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<36} {tc:>11.4f} {tp:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
