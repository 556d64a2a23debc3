"""Timing comparison of the compiled counting kernels against the
pure-Python fallback.

Each workload is the hot inner loop of a real computation: batched
counts vectors over the factor set of a prefix (what every complexity
table spends its time on), a single deep counts vector, and a long
subword count.  Best-of-R wall times, both backends on identical bytes.

Run from a checkout or an installed tree:

    python3 benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import time

from binowords import _kernels_py as pure
from binowords.generators import thue_morse

try:
    from binowords import _kernels as compiled
except ImportError:
    compiled = None


def best_of(repeat, fn, *args):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best


def workloads():
    prefix = thue_morse().prefix_bytes(1 << 14)

    def rows(n, count, k):
        buf = b"".join(prefix[i:i + n] for i in range(count))
        return (f"counts vectors: {count} rows, length {n}, k={k}",
                "signature_rows", (buf, count, n, 2, k))

    yield rows(64, 1000, 2)
    yield rows(48, 400, 3)
    yield rows(24, 400, 4)
    yield ("single counts vector: length 256, k=4",
           "signature_counts", (prefix[:256], 2, 4))
    yield ("subword count: |u|=4096, |w|=8",
           "subword_count", (prefix[:4096], prefix[7:15]))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="take the best of this many runs")
    args = parser.parse_args()

    if compiled is None:
        print("compiled extension not importable; timing the pure "
              "backend only")
    header = f"{'workload':<48} {'pure':>10} {'compiled':>10} {'ratio':>7}"
    print(header)
    print("-" * len(header))
    for label, fn_name, fn_args in workloads():
        t_pure = best_of(args.repeat, getattr(pure, fn_name), *fn_args)
        if compiled is None:
            print(f"{label:<48} {t_pure * 1e3:>8.2f}ms {'-':>10} {'-':>7}")
            continue
        t_fast = best_of(args.repeat, getattr(compiled, fn_name), *fn_args)
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print(f"{label:<48} {t_pure * 1e3:>8.2f}ms "
              f"{t_fast * 1e3:>8.2f}ms {ratio:>6.1f}x")


if __name__ == "__main__":
    main()
