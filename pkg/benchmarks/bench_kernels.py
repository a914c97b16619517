"""Compare the numba and numpy GF(p) kernels.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 5]

Times ``rref_modp`` and ``matmul_modp`` on random dense matrices for a small
prime and for ``2**31 - 1`` (where BLAS is no longer exact), then one
end-to-end Galois check over GF(5), under each backend.  Results of the two
backends are compared for equality before timing is reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from homhopf import kernels
from homhopf.exactfield import GF
from homhopf.examples import gen_cyclic_twist, gen_self_extension
from homhopf.galois import galois_check


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


BIG_P = 2**31 - 1


def run(sizes, repeat: int, p: int = 5) -> list[tuple[str, float, float]]:
    rng = np.random.default_rng(0)
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    rows = []
    for n, p in [(n, q) for q in (p, BIG_P) for n in sizes]:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        b = rng.integers(0, p, size=(n, n), dtype=np.int64)
        # rank-deficient input exercises the pivot search
        a[n // 2:] = a[:n - n // 2]
        results, times = {}, {}
        for name in backends:
            prev = kernels.set_backend(name)
            try:
                kernels.rref_modp(a, p), kernels.matmul_modp(a, b, p)  # warm-up / JIT
                results[name] = (kernels.rref_modp(a, p), kernels.matmul_modp(a, b, p))
                times[name] = (best_of(lambda: kernels.rref_modp(a, p), repeat),
                               best_of(lambda: kernels.matmul_modp(a, b, p), repeat))
            finally:
                kernels.set_backend(prev)
        if len(backends) == 2:
            (r1, piv1), m1 = results["numpy"]
            (r2, piv2), m2 = results["numba"]
            assert np.array_equal(r1, r2) and np.array_equal(piv1, piv2) and np.array_equal(m1, m2)
        nan = (float("nan"), float("nan"))
        rows.append((f"rref {n}x{n} p={p}", times["numpy"][0], times.get("numba", nan)[0]))
        rows.append((f"matmul {n}x{n} p={p}", times["numpy"][1], times.get("numba", nan)[1]))

    ca = gen_self_extension(gen_cyclic_twist(6, 5, GF(5)))
    times = {}
    for name in backends:
        prev = kernels.set_backend(name)
        try:
            galois_check(ca)
            times[name] = best_of(lambda: galois_check(ca), repeat)
        finally:
            kernels.set_backend(prev)
    rows.append(("galois_check C6 self-ext", times["numpy"], times.get("numba", float("nan"))))
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"{'case':<34}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for name, t_np, t_nb in run(args.sizes, args.repeat):
        print(f"{name:<34}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
