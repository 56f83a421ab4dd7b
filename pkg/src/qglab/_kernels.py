"""Hot numeric loops, compiled with numba when available.

Set ``QGLAB_DISABLE_NUMBA=1`` to force the pure-numpy implementations (the
results agree to rounding; see ``benchmarks/bench_kernels.py``).
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["USING_NUMBA", "clenshaw", "csr_power_iteration"]

_DISABLED = os.environ.get("QGLAB_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("disabled by QGLAB_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

USING_NUMBA = njit is not None


# ---------------------------------------------------------------------------
# numpy reference implementations


def _clenshaw_np(coef: np.ndarray, x: np.ndarray) -> np.ndarray:
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for c in coef[:0:-1]:
        b1, b2 = 2.0 * x * b1 - b2 + c, b1
    return x * b1 - b2 + coef[0]


def _csr_matvec_np(data, indices, indptr, x):
    n = indptr.size - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    out = np.zeros(n, dtype=np.complex128)
    np.add.at(out, rows, data * x[indices])
    return out


def _csr_power_np(data, indices, indptr, hdata, hindices, hindptr, x0, iters):
    x = x0 / np.linalg.norm(x0)
    lam = 0.0
    for _ in range(iters):
        y = _csr_matvec_np(hdata, hindices, hindptr, _csr_matvec_np(data, indices, indptr, x))
        nrm = np.linalg.norm(y)
        if nrm == 0.0:
            return 0.0, x
        lam = nrm
        x = y / nrm
    return lam, x


# ---------------------------------------------------------------------------
# numba versions

if USING_NUMBA:

    @njit(cache=True)
    def _clenshaw_nb(coef, x):
        out = np.empty_like(x)
        n = coef.size
        for i in range(x.size):
            t = x[i]
            b1 = 0.0
            b2 = 0.0
            for k in range(n - 1, 0, -1):
                b1, b2 = 2.0 * t * b1 - b2 + coef[k], b1
            out[i] = t * b1 - b2 + coef[0]
        return out

    @njit(cache=True)
    def _csr_matvec_nb(data, indices, indptr, x):
        n = indptr.size - 1
        out = np.zeros(n, dtype=np.complex128)
        for r in range(n):
            acc = 0j
            for p in range(indptr[r], indptr[r + 1]):
                acc += data[p] * x[indices[p]]
            out[r] = acc
        return out

    @njit(cache=True)
    def _csr_power_nb(data, indices, indptr, hdata, hindices, hindptr, x0, iters):
        x = x0 / np.linalg.norm(x0)
        lam = 0.0
        for _ in range(iters):
            y = _csr_matvec_nb(hdata, hindices, hindptr, _csr_matvec_nb(data, indices, indptr, x))
            nrm = np.linalg.norm(y)
            if nrm == 0.0:
                return 0.0, x
            lam = nrm
            x = y / nrm
        return lam, x


def clenshaw(coef, x) -> np.ndarray:
    """Evaluate a Chebyshev series (first kind) at the points ``x``."""
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    if coef.size == 0:
        return np.zeros_like(x)
    if coef.size == 1:
        return np.full_like(x, coef[0])
    return _clenshaw_nb(coef, x) if USING_NUMBA else _clenshaw_np(coef, x)


def csr_power_iteration(M, x0: np.ndarray, iters: int):
    """Power iteration on M^H M for a scipy CSR matrix; returns (lambda, vector)."""
    M = M.tocsr()
    H = M.conj().T.tocsr()
    args = (
        M.data.astype(np.complex128),
        M.indices.astype(np.int64),
        M.indptr.astype(np.int64),
        H.data.astype(np.complex128),
        H.indices.astype(np.int64),
        H.indptr.astype(np.int64),
        np.ascontiguousarray(x0, dtype=np.complex128),
        int(iters),
    )
    if USING_NUMBA:
        return _csr_power_nb(*args)
    return _csr_power_np(*args)
