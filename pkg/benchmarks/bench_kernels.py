"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --n 5 --repeat 3
"""

from __future__ import annotations

import argparse
import timeit

from bruhatcup import kernels
from bruhatcup.bits import full, subsets_of_size
from bruhatcup.bruhat import enumerate_bruhat, segment_system


def workloads(n: int):
    """Named zero-argument callables taking a kernel module."""
    ground = full(n)
    faces = [S for k in range(1, n + 2) for S in subsets_of_size(ground, k)]
    sets = {i: [U.inversions for U in enumerate_bruhat(n, i + 1)][:40] for i in range(3)}
    items = subsets_of_size(ground, 2)
    packets = subsets_of_size(ground, 3)
    links = segment_system(items, packets)

    def coproducts(k):
        for i, Us in sets.items():
            for U in Us:
                for S in faces:
                    k.delta_terms(S, i, U)

    def homotopy(k):
        for i, Us in sets.items():
            for U in Us:
                k.homotopy_defect(ground, i, U)

    return {
        "delta_terms": coproducts,
        "homotopy_defect": homotopy,
        "appendix_sweep": lambda k: k.appendix_sweep(n + 1),
        "enumerate_segments": lambda k: k.enumerate_segments(len(items), links, len(packets), 10**7),
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=5, help="top vertex of the simplex (default 5)")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions, best is kept")
    args = parser.parse_args(argv)

    backends = {k.BACKEND: k for k in kernels.backends()}
    if len(backends) < 2:
        print("compiled extension not built; only timing the fallback")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads(args.n).items():
        times = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        row = f"{name:<20}" + "".join(f"{t:>11.4f}s" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
