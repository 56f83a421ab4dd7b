"""Corepresentation matrices, characters and the sum_p u*_{j,p} u_{i,p} identity check."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Algebra,
    Element,
    TensorElement,
    adjoint,
    alpha,
    alpha_star,
    gamma,
    gamma_star,
    multiply,
    one,
    u_theta,
    zero,
)
from .coeffs import ONE, ZERO, Coeff, GaussianRational
from .hopf import coproduct

__all__ = [
    "CorepMatrix",
    "CorepCheck",
    "corep_check",
    "tensor_corep",
    "fundamental_corep",
    "group_like_corep",
    "FiniteDimRep",
    "character",
    "commuting_unitary_rep",
    "cor24_check",
    "cor24_symbolic_sum",
    "Cor24Result",
]


@dataclass(frozen=True)
class CorepMatrix:
    entries: tuple  # tuple of row tuples of Element

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("corepresentation matrix must be square and nonempty")
        algs = {e.algebra for r in rows for e in r}
        if len(algs) != 1:
            raise ValueError("all entries must share one algebra tag")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def algebra(self) -> Algebra:
        return self.entries[0][0].algebra

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def fundamental_corep(algebra=Algebra.SUQ2) -> CorepMatrix:
    """[[alpha, -q gamma*], [gamma, alpha*]]."""
    q = Coeff.mono(1, 0)
    return CorepMatrix(
        ((alpha(algebra), gamma_star(algebra) * (-q)), (gamma(algebra), alpha_star(algebra)))
    )


def group_like_corep(power: int = 1) -> CorepMatrix:
    return CorepMatrix(((u_theta(power),),))


@dataclass
class CorepCheck:
    ok: bool
    coproduct_defects: list = field(default_factory=list)
    unitarity_defects: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def corep_check(U: CorepMatrix) -> CorepCheck:
    """Exact check of Delta(u_ij) = sum_k u_ik (x) u_kj and U*U = UU* = 1."""
    n, alg = U.dim, U.algebra
    cop_bad, uni_bad = [], []
    for i in range(n):
        for j in range(n):
            lhs = coproduct(U[i, j])
            rhs = TensorElement._raw((alg, alg), {})
            for k in range(n):
                rhs = rhs + TensorElement.from_elements(U[i, k], U[k, j])
            if lhs != rhs:
                cop_bad.append((i, j))
    for i in range(n):
        for j in range(n):
            target = one(alg) if i == j else zero(alg)
            left = zero(alg)  # (U*U)_ij
            right = zero(alg)  # (UU*)_ij
            for k in range(n):
                left = left + multiply(adjoint(U[k, i]), U[k, j])
                right = right + multiply(U[i, k], adjoint(U[j, k]))
            if left != target:
                uni_bad.append(("U*U", i, j))
            if right != target:
                uni_bad.append(("UU*", i, j))
    return CorepCheck(not cop_bad and not uni_bad, cop_bad, uni_bad)


def tensor_corep(U: CorepMatrix, V: CorepMatrix) -> CorepMatrix:
    """w_{(i,k),(j,l)} = u_ij v_kl with (i,k) -> i*dim(V) + k."""
    if U.algebra is not V.algebra:
        raise ValueError("tensor_corep requires matching algebra tags")
    n, m = U.dim, V.dim
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(
                tuple(multiply(U[i, j], V[k, l]) for j in range(n) for l in range(m))
            )
    return CorepMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# finite-dimensional representations


def _conjT(M: np.ndarray) -> np.ndarray:
    if M.dtype == object:
        return np.vectorize(lambda z: z.conjugate(), otypes=[object])(M).T
    return M.conj().T


def _eye(n: int, exact: bool) -> np.ndarray:
    if not exact:
        return np.eye(n, dtype=complex)
    out = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        out[i, i] = ONE
    return out


def _zeros(n: int, exact: bool) -> np.ndarray:
    return np.full((n, n), ZERO, dtype=object) if exact else np.zeros((n, n), dtype=complex)


def _mpow(M: np.ndarray, k: int, exact: bool) -> np.ndarray:
    out = _eye(M.shape[0], exact)
    for _ in range(k):
        out = out @ M
    return out


def _is_zero(M: np.ndarray, exact: bool, tol: float) -> float:
    """Residual size: 0/1 in exact mode, max-abs entry otherwise."""
    if exact:
        return 0.0 if all(not z for z in M.flat) else 1.0
    return float(np.max(np.abs(M))) if M.size else 0.0


@dataclass
class FiniteDimRep:
    """Matrix assignment of the generators with recorded relation residuals.

    ``exact`` reps hold object arrays of GaussianRational and need exact
    bindings for ``q`` and ``zeta``; floating reps hold complex arrays.
    """

    algebra: Algebra
    alpha: np.ndarray
    gamma: np.ndarray
    u: np.ndarray | None = None
    q: object = GaussianRational(1, 0) / 2
    zeta: object = ONE
    exact: bool = True
    tol: float = 1e-12
    residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        self.algebra = Algebra(self.algebra)
        if self.algebra is Algebra.GQTHETA and self.u is None:
            raise ValueError("GqTheta representation needs a matrix for u_theta")
        self.residuals = self._relation_residuals()
        bad = {k: v for k, v in self.residuals.items() if v > (0.0 if self.exact else self.tol)}
        if bad:
            raise ValueError(f"relations violated: {bad}")

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def _scalar(self, c):
        if self.exact:
            return GaussianRational(c) if not isinstance(c, GaussianRational) else c
        return complex(c)

    def _relation_residuals(self) -> dict:
        ex = self.exact
        A, G = self.alpha, self.gamma
        As, Gs = _conjT(A), _conjT(G)
        q = self._scalar(self.q)
        I = _eye(self.dim, ex)
        res = {
            "gamma normal": G @ Gs - Gs @ G,
            "alpha gamma = q gamma alpha": A @ G - (G @ A) * q,
            "alpha gamma* = q gamma* alpha": A @ Gs - (Gs @ A) * q,
            "alpha* alpha + gamma* gamma = 1": As @ A + Gs @ G - I,
            "alpha alpha* + q^2 gamma gamma* = 1": A @ As + (G @ Gs) * (q * q) - I,
        }
        if self.u is not None:
            U, Us = self.u, _conjT(self.u)
            z = self._scalar(self.zeta)
            res.update(
                {
                    "u* u = 1": Us @ U - I,
                    "u u* = 1": U @ Us - I,
                    "u* gamma u = zeta gamma": Us @ G @ U - G * z,
                    "u* alpha u = alpha": Us @ A @ U - A,
                }
            )
        return {k: _is_zero(v, ex, self.tol) for k, v in res.items()}

    def coefficient(self, c: Coeff):
        if self.exact:
            return c.evaluate_exact(_rational(self.q), self._scalar(self.zeta))
        return c.evaluate(complex(self.q).real, complex(self.zeta))

    def evaluate(self, x: Element) -> np.ndarray:
        if x.algebra is not self.algebra and not (
            x.algebra is Algebra.SUQ2 and self.algebra is Algebra.GQTHETA
        ):
            raise ValueError(f"cannot evaluate {x.algebra.value} element in a {self.algebra.value} rep")
        ex = self.exact
        A, G = self.alpha, self.gamma
        As, Gs = _conjT(A), _conjT(G)
        out = _zeros(self.dim, ex)
        for m, c in x.terms.items():
            M = _mpow(A if m.a >= 0 else As, abs(m.a), ex)
            M = M @ _mpow(G, m.g, ex) @ _mpow(Gs, m.gs, ex)
            if m.u:
                M = M @ _mpow(self.u if m.u > 0 else _conjT(self.u), abs(m.u), ex)
            out = out + M * self.coefficient(c)
        return out


def _rational(x):
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError("q must be real")
        return x.re
    return x


def _unimodular(z, exact: bool, tol: float) -> bool:
    if exact:
        return z.abs2() == 1
    return abs(abs(complex(z)) - 1.0) <= tol


def character(z, w=1, *, q=GaussianRational(1, 0) / 2, zeta=1, tol: float = 1e-12) -> FiniteDimRep:
    """One-dimensional representation alpha -> z, gamma -> 0, u_theta -> w.

    Exact when ``z`` and ``w`` are Gaussian rationals (or ints/fractions),
    floating otherwise.
    """
    exact = all(not isinstance(v, (float, complex)) for v in (z, w, zeta))
    if exact:
        z, w, zeta = (GaussianRational(v) if not isinstance(v, GaussianRational) else v for v in (z, w, zeta))
    if not _unimodular(z, exact, tol) or not _unimodular(w, exact, tol):
        raise ValueError("character values must have modulus one")
    mk = (lambda v: np.array([[v]], dtype=object)) if exact else (lambda v: np.array([[complex(v)]]))
    return FiniteDimRep(
        Algebra.GQTHETA,
        alpha=mk(z),
        gamma=mk(ZERO if exact else 0.0),
        u=mk(w),
        q=q,
        zeta=zeta,
        exact=exact,
        tol=tol,
    )


def commuting_unitary_rep(Z: np.ndarray, W: np.ndarray, *, q=0.5, zeta=1.0, tol=1e-12) -> FiniteDimRep:
    """Finite-dimensional rep with gamma -> 0, alpha -> Z, u -> W (commuting unitaries)."""
    Z = np.asarray(Z, dtype=complex)
    W = np.asarray(W, dtype=complex)
    return FiniteDimRep(
        Algebra.GQTHETA, alpha=Z, gamma=np.zeros_like(Z), u=W, q=q, zeta=zeta, exact=False, tol=tol
    )


@dataclass
class Cor24Result:
    table: list  # table[i][j] = pi(sum_p u*_{j,p} u_{i,p})
    ok: bool
    max_defect: float


def cor24_check(rep: FiniteDimRep, U: CorepMatrix, *, require_corep: bool = True) -> Cor24Result:
    """pi(sum_p u*_{j,p} u_{i,p}) against delta_ij times the identity."""
    if require_corep and not corep_check(U):
        raise ValueError("matrix is not a unitary corepresentation")
    n = U.dim
    table = []
    worst = 0.0
    ok = True
    I = _eye(rep.dim, rep.exact)
    for i in range(n):
        row = []
        for j in range(n):
            s = zero(U.algebra)
            for p in range(n):
                s = s + multiply(adjoint(U[j, p]), U[i, p])
            M = rep.evaluate(s)
            target = I if i == j else _zeros(rep.dim, rep.exact)
            if rep.exact:
                good = all(a == b for a, b in zip(M.flat, target.flat))
                worst = max(worst, 0.0 if good else 1.0)
            else:
                d = float(np.max(np.abs(M - target)))
                worst = max(worst, d)
                good = d <= rep.tol
            ok = ok and good
            row.append(M)
        table.append(row)
    return Cor24Result(table, ok, worst)


def cor24_symbolic_sum(U: CorepMatrix, i: int, j: int) -> Element:
    """sum_p u*_{j,p} u_{i,p} in the algebra (no representation applied)."""
    s = zero(U.algebra)
    for p in range(U.dim):
        s = s + multiply(adjoint(U[j, p]), U[i, p])
    return s

