"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--n 20000]

Each kernel runs on the same batch of random inputs; the table lists the
mean time per call and the speed-up of the compiled build. An end-to-end
row times ``intersect_canonical`` on random pairs under each backend.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import textwrap
import timeit

import numpy as np

from conix.numerics import _kernels_py

try:
    from conix.numerics import _kernels
except ImportError:
    _kernels = None


def _batch(n: int, size: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, size)) + 1j * rng.standard_normal((n, size))
    return [tuple(complex(v) for v in row) for row in z]


def _time(fn, args, repeat: int = 3) -> float:
    def body():
        for a in args:
            fn(*a)

    return min(timeit.repeat(body, number=1, repeat=repeat)) / len(args)


_E2E = textwrap.dedent(
    """
    import time
    from conix import BACKEND, intersect_canonical, random_conic_pair
    pairs = [random_conic_pair(s, "four-real") for s in range({n})]
    t = time.perf_counter()
    for p in pairs:
        intersect_canonical(*p)
    print(BACKEND, (time.perf_counter() - t) / len(pairs))
    """
)


def _end_to_end(n: int, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["CONIX_PURE_PYTHON"] = "1"
    else:
        env.pop("CONIX_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", _E2E.format(n=n)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.split()[1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=20000, help="calls per kernel")
    ap.add_argument("--pairs", type=int, default=300, help="conic pairs for the end-to-end row")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1

    quad = _batch(args.n, 3, 1)
    cubic = _batch(args.n, 4, 2)
    quartic = _batch(args.n, 5, 3)
    dk = [(list(c),) for c in _batch(max(args.n // 10, 1), 5, 4)]
    cases = [
        ("quadratic_roots", quad),
        ("cubic_roots", cubic),
        ("quartic_roots", quartic),
        ("durand_kerner (deg 4)", dk),
    ]
    print(f"{'kernel':<24}{'python (us)':>14}{'cython (us)':>14}{'speed-up':>10}")
    for name, data in cases:
        attr = name.split()[0]
        tp = _time(getattr(_kernels_py, attr), data) * 1e6
        tc = _time(getattr(_kernels, attr), data) * 1e6
        print(f"{name:<24}{tp:>14.2f}{tc:>14.2f}{tp / tc:>9.1f}x")

    tp = _end_to_end(args.pairs, pure=True) * 1e6
    tc = _end_to_end(args.pairs, pure=False) * 1e6
    print(f"{'intersect_canonical':<24}{tp:>14.2f}{tc:>14.2f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
