"""Compare the compiled and numpy implementations of the Monte-Carlo kernels.

Usage: python3 benchmarks/bench_kernels.py [--n 10000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from reciprocal_channels import _kernels_py
from reciprocal_channels import channels as ch
from reciprocal_channels.linalg import haar_random_pure_batch, haar_random_unitary_batch

try:
    from reciprocal_channels import _kernels as _kernels_ext
except ImportError:
    _kernels_ext = None


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=10_000, help="samples per call")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--dims", default="2,3,4")
    args = parser.parse_args()

    if _kernels_ext is None:
        print("compiled extension not built; only the numpy backend is timed")
    print(f"{'kernel':<22}{'d':>3}{'numpy [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for d in (int(v) for v in args.dims.split(",")):
        choi = np.ascontiguousarray(ch.wcc_channel(ch.random_wcc_spec(d, d)).choi)
        states = np.ascontiguousarray(haar_random_pure_batch(d, args.n, 0))
        unitaries = np.ascontiguousarray(haar_random_unitary_batch(d, args.n, 1))
        for name, data in (("pure_state_fidelities", states), ("twirl_choi_sum", unitaries)):
            t_py = bench(getattr(_kernels_py, name), (choi, data), args.repeat)
            if _kernels_ext is None:
                print(f"{name:<22}{d:>3}{1e3 * t_py:>14.2f}{'-':>14}{'-':>10}")
                continue
            t_ext = bench(getattr(_kernels_ext, name), (choi, data), args.repeat)
            print(f"{name:<22}{d:>3}{1e3 * t_py:>14.2f}{1e3 * t_ext:>14.2f}{t_py / t_ext:>9.1f}x")


if __name__ == "__main__":
    main()
