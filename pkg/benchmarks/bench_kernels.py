"""Compare the compiled and pure-Python F_q kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import time

from qtetra import linalg
from qtetra.cartan import ValuedQuiver
from qtetra.finfield import FiniteField
from qtetra.serialize import load_example


def _matrix(rng, q, n, m):
    return [[rng.randrange(q) for _ in range(m)] for _ in range(n)]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_cases(repeat):
    rng = random.Random(0)
    for q in (2, 9):
        F = FiniteField.of_order(q)
        for n in (16, 48):
            a, b = _matrix(rng, q, n, n), _matrix(rng, q, n, n)
            row = {}
            for name in linalg.available_backends():
                k = linalg.kernel_for(F, name)
                row[name] = (
                    _time(lambda: k.rank([r[:] for r in a], n), repeat),
                    _time(lambda: k.matmul(a, b), repeat),
                )
            yield f"q={q} n={n}", row


def end_to_end(repeat):
    """All flag counts of the G2 representation M(3,2) over F_5, caches cold."""
    from qtetra.finrep import RepContext, flag_counts, parse_rep

    data = load_example("g2")["quiver"]
    row = {}
    for name in linalg.available_backends():
        prev = linalg.use_backend(name)
        try:
            # a fresh context has empty caches
            row[name] = _time(lambda: flag_counts(parse_rep(RepContext(ValuedQuiver.from_json(data), 5), "M(3,2)")), repeat)
        finally:
            linalg.use_backend(prev)
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = linalg.available_backends()
    print("backends:", ", ".join(names))
    print(f"{'case':<14}" + "".join(f"{n + ' rank':>16}{n + ' matmul':>18}" for n in names))
    for label, row in kernel_cases(args.repeat):
        cells = "".join(f"{row[n][0] * 1e3:>14.2f}ms{row[n][1] * 1e3:>16.2f}ms" for n in names)
        print(f"{label:<14}{cells}")
    row = end_to_end(args.repeat)
    print("g2 flag counts of M(3,2) over F_5: " + ", ".join(f"{n} {row[n]:.3f}s" for n in names))


if __name__ == "__main__":
    main()
