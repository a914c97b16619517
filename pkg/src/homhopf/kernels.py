"""Hot GF(p) kernels: row reduction and matrix products on int64 arrays.

Each kernel has a numba ``@njit`` body and a vectorised numpy body with the
same contract.  The numba path is used when numba imports and the
``HOMHOPF_NUMBA`` environment variable is not ``0``; :func:`set_backend`
switches at runtime (the benchmark and the parity tests use it).

All inputs hold residues in ``[0, p)`` with ``p < 2**31`` so a single
product fits in a signed 64-bit integer.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_backend = "numba" if HAVE_NUMBA and os.environ.get("HOMHOPF_NUMBA", "1") != "0" else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    prev, _backend = _backend, name
    return prev


# ---------------------------------------------------------------------------
# numpy bodies

def _rref_modp_numpy(a: np.ndarray, p: int):
    a = a.copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _matmul_modp_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = (p - 1) ** 2
    if k * bound < 2**53:
        # exact in float64, so BLAS can do it
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    step = max(1, (2**63 - 1) // max(bound, 1) - 1)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        out = (out + (a[:, s:s + step] @ b[s:s + step]) % p) % p
    return out


# ---------------------------------------------------------------------------
# numba bodies

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _inv_modp_nb(x, p):
        t, new_t = 0, 1
        r, new_r = p, x
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_modp_nb(a, p):
        a = a.copy()
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = r
            while k < m and a[k, c] == 0:
                k += 1
            if k == m:
                continue
            if k != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = tmp
            inv = _inv_modp_nb(a[r, c], p)
            for j in range(c, n):
                a[r, j] = a[r, j] * inv % p
            for i in range(m):
                f = a[i, c]
                if i != r and f != 0:
                    g = p - f
                    for j in range(c, n):
                        a[i, j] = (a[i, j] + g * a[r, j]) % p
            pivots[r] = c
            r += 1
        return a, pivots[:r].copy()

    @numba.njit(cache=True)
    def _matmul_modp_nb(a, b, p):
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        bound = (p - 1) * (p - 1)
        step = (9223372036854775807 - p) // bound if bound > 0 else k + 1
        if step < 1:
            step = 1
        for i in range(m):
            acc = np.zeros(n, dtype=np.int64)
            cnt = 0
            for t in range(k):
                x = a[i, t]
                if x != 0:
                    for j in range(n):
                        acc[j] += x * b[t, j]
                    cnt += 1
                    if cnt == step:
                        for j in range(n):
                            acc[j] %= p
                        cnt = 0
            for j in range(n):
                out[i, j] = acc[j] % p
        return out


def rref_modp(a: np.ndarray, p: int):
    """Reduced row echelon form of ``a`` over GF(p); returns ``(R, pivots)``."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if _backend == "numba":
        return _rref_modp_nb(a, np.int64(p))
    return _rref_modp_numpy(a, p)


def matmul_modp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b`` over GF(p).

    When every dot product is below 2**53 both backends use float64 BLAS,
    which is exact there and faster than either loop; otherwise the
    selected backend reduces in int64 blocks.
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if _backend == "numba" and a.shape[1] * (p - 1) ** 2 >= 2**53:
        return _matmul_modp_nb(a, b, np.int64(p))
    return _matmul_modp_numpy(a, b, p)
