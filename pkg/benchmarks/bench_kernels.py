"""Compiled vs pure-Python enumeration kernels.

Run with ``python benchmarks/bench_kernels.py``.  Both backends are timed on
the same inputs and their outputs are compared before any timing is shown.
"""

import argparse
import random
import time

from torus_split import _kernels_py
from torus_split.intlat import _det, adjugate, hermite_box

try:
    from torus_split import _kernels
except ImportError:
    _kernels = None


def _coker_inputs(rng, count, lo, hi):
    out = []
    while len(out) < count:
        l = rng.randint(2, 4)
        B = [[rng.randint(-6, 6) for _ in range(l)] for _ in range(l)]
        d = abs(_det(B))
        if lo <= d <= hi:
            adj = [[x % d for x in row] for row in adjugate(B)]
            out.append((adj, d, hermite_box(B)))
    return out


def _time(fn, inputs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = [fn(*x) for x in inputs]
        best = min(best, time.perf_counter() - t0)
    return best, res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels not built; run pip install -e . --no-build-isolation")
    rng = random.Random(args.seed)
    cases = {
        "coset_order_counts": _coker_inputs(rng, 40, 2000, 10_000),
        "count_cycle_fixed": [(3 ** k - 1, 3, (1, -1, 1)[:k % 3 + 1]) for k in range(8, 14)]
        + [(5 ** k - 1, 5, (-1,) * (k % 3 + 1)) for k in range(5, 9)],
    }
    print(f"{'kernel':<20} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, inputs in cases.items():
        tp, rp = _time(getattr(_kernels_py, name), inputs, args.repeat)
        tc, rc = _time(getattr(_kernels, name), inputs, args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<20} {tp:>10.3f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
