"""Operator norms, the spectrum of gamma* gamma and the spectral scaling diagnostic."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, eigsh

from .._kernels import csr_power_iteration

__all__ = [
    "operator_norm",
    "SpectrumResult",
    "spectrum_gamma_star_gamma",
    "Branch",
    "spectral_scaling_diagnostic",
]

DENSE_LIMIT = 2048


def _is_monomial_matrix(M: sp.csr_matrix) -> bool:
    """At most one nonzero per row and per column (diagonals, shifts, permutations)."""
    if M.nnz == 0:
        return True
    rows = np.diff(M.indptr)
    if rows.max() > 1:
        return False
    return np.bincount(M.indices, minlength=M.shape[1]).max() <= 1


def operator_norm(M, *, seed: int = 0, power_iters: int = 60) -> float:
    """Largest singular value.

    Monomial-pattern sparse matrices are read off exactly, matrices up to
    2048 rows use a dense SVD, larger ones a power-iteration warm start
    followed by Lanczos on M^H M.
    """
    if sp.issparse(M):
        M = sp.csr_matrix(M)
        if not np.all(np.isfinite(M.data)):
            raise ValueError("matrix has non-finite entries")
        M.eliminate_zeros()
        if _is_monomial_matrix(M):
            return float(np.abs(M.data).max()) if M.nnz else 0.0
        if max(M.shape) <= DENSE_LIMIT:
            return float(np.linalg.norm(M.toarray(), 2))
        return _iterative_norm(M, seed, power_iters)
    A = np.asarray(M)
    if A.size == 0:
        return 0.0
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if A.ndim != 2:
        raise ValueError("operator_norm expects a matrix")
    if max(A.shape) <= DENSE_LIMIT:
        return float(np.linalg.norm(A, 2))
    return _iterative_norm(sp.csr_matrix(A), seed, power_iters)


def _iterative_norm(M: sp.csr_matrix, seed: int, iters: int) -> float:
    n = M.shape[1]
    rng = np.random.default_rng(seed)
    x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lam0, v = csr_power_iteration(M, x0, iters)
    if lam0 == 0.0:
        return 0.0
    MH = M.conj().T.tocsr()
    op = LinearOperator((n, n), matvec=lambda x: MH @ (M @ x), dtype=complex)
    vals = eigsh(op, k=1, which="LM", v0=v, tol=0, maxiter=20 * n)[0]
    return float(np.sqrt(max(float(vals[0].real), lam0, 0.0)))


@dataclass
class SpectrumResult:
    values: np.ndarray  # ascending, with repetitions
    blocks: list  # [(value, multiplicity)] ascending

    def distinct(self) -> np.ndarray:
        return np.array([v for v, _ in self.blocks])


def _group(vals: np.ndarray, rtol: float = 1e-9) -> list:
    blocks: list = []
    for v in vals:
        if blocks and abs(v - blocks[-1][0]) <= rtol * max(1.0, abs(v)) + 1e-300:
            blocks[-1][1] += 1
        else:
            blocks.append([float(v), 1])
    return [(v, m) for v, m in blocks]


def spectrum_gamma_star_gamma(rep) -> SpectrumResult:
    """Eigenvalues of pi(gamma* gamma), which is diagonal in both rep families."""
    G = rep.gamma
    P = (G.conj().T @ G).tocsr()
    off = P - sp.diags(P.diagonal())
    if off.count_nonzero():
        raise ValueError("gamma* gamma is not diagonal in this basis")
    vals = np.sort(P.diagonal().real)
    return SpectrumResult(vals, _group(vals))


class Branch(str, enum.Enum):
    CHAIN = "chainBranch"
    VANISH = "vanishBranch"
    BOUNDARY = "truncationBoundary"


def spectral_scaling_diagnostic(rep, lam: float, delta: float, y="alpha", scale: float | None = None) -> Branch:
    """Classify lam in the spectrum of x = pi(gamma* gamma) against y.

    ``y`` is "alpha" (scaling q^-2), "alpha_star" (scaling q^2) or an explicit
    matrix with its own ``scale``.  The vanishing test runs first.  For the
    alpha* direction the top level K is reported as ``truncationBoundary``,
    since the cutoff (not the algebra) is what kills alpha* there.
    """
    diag = (rep.gamma.conj().T @ rep.gamma).diagonal().real
    distinct = np.array([v for v, _ in _group(np.sort(diag))])
    if delta <= 0:
        raise ValueError("delta must be positive")
    near = np.abs(distinct - lam)
    if near.min() > 1e-12 * max(1.0, abs(lam)):
        raise ValueError(f"{lam} is not in the computed spectrum")
    others = np.delete(distinct, near.argmin())
    gap = np.abs(others - lam).min() if others.size else np.inf
    if delta >= gap:
        raise ValueError(f"delta={delta} exceeds the spectral gap {gap} at {lam}")

    q = rep.q
    if isinstance(y, str):
        if y == "alpha":
            Y, factor = rep.alpha, q**-2
        elif y == "alpha_star":
            Y, factor = rep.alpha.conj().T.tocsr(), q**2
            top = q ** (2 * rep.K)
            if abs(lam - top) <= 1e-12 * max(1.0, top):
                return Branch.BOUNDARY
        else:
            raise ValueError(f"unknown direction {y!r}")
    else:
        Y = sp.csr_matrix(y)
        factor = q**-2 if scale is None else scale

    idx = np.flatnonzero(np.abs(diag - lam) < delta)
    Yp = sp.csr_matrix(Y)[:, idx]
    if operator_norm(Yp) <= 1e-10:
        return Branch.VANISH
    target = factor * lam
    if np.abs(distinct - target).min() <= 1e-12 * max(1.0, abs(target)):
        return Branch.CHAIN
    return Branch.BOUNDARY
