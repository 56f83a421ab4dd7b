"""Truncated concrete representations and exact-then-float element evaluation.

Both representation families act on a space indexed by (level, slot):

* ``TruncatedRep``: slot = cyclic Fourier mode j in Z_N, with
  gamma e_{k,j} = q^k e_{k,j+1} and alpha e_{k,j} = sqrt(1-q^{2k}) e_{k-1,j};
* ``GridRep``: slot = angle phi_i, with gamma the multiplication by the point
  q^k e^{i phi_i} and alpha the same-angle level shift.

In both cases gamma = D S with D = diag(q^level) and S level-preserving and
unitary, so gamma^m gamma*^n = D^{m+n} S^{m-n}.  ``eval_element`` uses this
to sum the radial factors exactly (rational arithmetic in q) before any
rounding, which keeps high-degree polynomials in gamma, gamma* stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
import scipy.sparse as sp

from ..core.algebra import Algebra, Element
from ..params import clock_phase, exact_q, parse_theta

__all__ = [
    "RepParams",
    "TruncatedRep",
    "GridRep",
    "build_full_rep",
    "build_grid_rep",
    "build_lower_half_grid_rep",
    "eval_element",
    "multiplicativity_defect",
]


@dataclass(frozen=True)
class RepParams:
    q: float | Fraction
    levels: int
    modes: int = 1
    origin: bool = False
    algebra: Algebra = Algebra.SUQ2
    theta: object = None


def _check_q(q) -> tuple:
    qf = float(q)
    if not (0.0 < abs(qf) < 1.0) or not math.isfinite(qf):
        raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
    return qf, exact_q(q)


def _residual_bound(R) -> float:
    """sqrt(||R||_1 ||R||_inf): equals the operator norm for monomial matrices."""
    R = sp.csr_matrix(R)
    if R.nnz == 0:
        return 0.0
    a = abs(R)
    c1 = float(a.sum(axis=0).max())
    cinf = float(a.sum(axis=1).max())
    return math.sqrt(c1 * cinf)


class _LevelRep:
    """Shared machinery: level bookkeeping, relation residuals, power caches."""

    algebra: Algebra
    q: float
    q_exact: object
    K: int
    level: np.ndarray  # -1 marks the origin vector
    alpha: sp.csr_matrix
    gamma: sp.csr_matrix
    u: sp.csr_matrix | None
    zeta: complex | None

    def __init__(self):
        self._apow: dict = {}
        self._spow: dict = {}
        self._upow: dict = {}

    @property
    def dim(self) -> int:
        return self.level.size

    def level_indices(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.level == k)

    def alpha_power(self, a: int) -> sp.csr_matrix:
        if a not in self._apow:
            if a == 0:
                M = sp.identity(self.dim, dtype=complex, format="csr")
            elif a > 0:
                M = (self.alpha_power(a - 1) @ self.alpha).tocsr()
            else:
                M = (self.alpha_power(a + 1) @ self.alpha.conj().T).tocsr()
            self._apow[a] = M
        return self._apow[a]

    def u_power(self, l: int) -> sp.csr_matrix:
        if self.u is None:
            raise ValueError("representation has no u_theta")
        if l not in self._upow:
            d = self.u.diagonal()
            self._upow[l] = sp.diags(d**l if l >= 0 else np.conj(d) ** (-l), format="csr")
        return self._upow[l]

    def slot_shift(self, s: int) -> sp.csr_matrix:  # pragma: no cover - abstract
        raise NotImplementedError

    def _relation_matrices(self) -> dict:
        A, G = self.alpha, self.gamma
        As, Gs = A.conj().T, G.conj().T
        q = self.q
        I = sp.identity(self.dim, dtype=complex, format="csr")
        rel = {
            "gamma normal": G @ Gs - Gs @ G,
            "alpha gamma - q gamma alpha": A @ G - q * (G @ A),
            "alpha gamma* - q gamma* alpha": A @ Gs - q * (Gs @ A),
            "alpha* alpha + gamma* gamma - 1": As @ A + Gs @ G - I,
            "alpha alpha* + q^2 gamma gamma* - 1": A @ As + q * q * (G @ Gs) - I,
        }
        if self.u is not None:
            U, Us = self.u, self.u.conj().T
            rel.update(
                {
                    "u* u - 1": Us @ U - I,
                    "u u* - 1": U @ Us - I,
                    "u* gamma u - zeta gamma": Us @ G @ U - self.zeta * G,
                    "u* alpha u - alpha": Us @ A @ U - A,
                }
            )
        return rel

    def _certify(self) -> dict:
        interior = np.flatnonzero(self.level != self.K)
        boundary = self.level_indices(self.K)
        out = {}
        for name, R in self._relation_matrices().items():
            R = sp.csr_matrix(R)
            out[name] = {
                "norm": _residual_bound(R),
                "interior": _residual_bound(R[interior][:, interior]),
                "boundary": _residual_bound(R[boundary][:, boundary]),
            }
        return out

    @property
    def boundary_defect(self) -> float:
        """1 - q^{2K+2}: the only relation defect, located on the level-K block."""
        return 1.0 - self.q ** (2 * self.K + 2)


class TruncatedRep(_LevelRep):
    """Levels 0..K of the concrete representation with N cyclic modes per level."""

    def __init__(self, q, K: int, N: int, origin: bool = False, algebra=Algebra.SUQ2, theta=None):
        super().__init__()
        self.q, self.q_exact = _check_q(q)
        if K < 0:
            raise ValueError("levels K must be nonnegative")
        if N < 1:
            raise ValueError("modes per level N must be at least 1")
        self.K, self.N, self.origin = int(K), int(N), bool(origin)
        self.algebra = Algebra(algebra)
        if self.algebra not in (Algebra.SUQ2, Algebra.GQTHETA):
            raise ValueError("TruncatedRep supports SUq2 and GqTheta")
        self.params = RepParams(q, K, N, origin, self.algebra, theta)

        dim = (self.K + 1) * self.N + (1 if self.origin else 0)
        lev = np.repeat(np.arange(self.K + 1), self.N)
        mode = np.tile(np.arange(self.N), self.K + 1)
        if self.origin:
            lev = np.append(lev, -1)
            mode = np.append(mode, 0)
        self.level, self.mode = lev, mode
        qk = self.q ** np.arange(self.K + 1, dtype=float)

        # gamma: e_{k,j} -> q^k e_{k,j+1}
        cols = np.arange((self.K + 1) * self.N)
        rows = lev[: cols.size] * self.N + (mode[: cols.size] + 1) % self.N
        self.gamma = sp.csr_matrix((qk[lev[: cols.size]].astype(complex), (rows, cols)), shape=(dim, dim))
        # alpha: e_{k,j} -> sqrt(1 - q^{2k}) e_{k-1,j}
        src = cols[lev[: cols.size] > 0]
        k = lev[src]
        w = np.sqrt(1.0 - qk[k] ** 2)
        r = list(src - self.N)
        c = list(src)
        vals = list(w.astype(complex))
        if self.origin:
            r.append(dim - 1)
            c.append(dim - 1)
            vals.append(1.0 + 0j)
        self.alpha = sp.csr_matrix((vals, (r, c)), shape=(dim, dim))

        self.theta = None
        self.zeta = None
        self.u = None
        if self.algebra is Algebra.GQTHETA:
            th = parse_theta(theta if theta is not None else Fraction(1, self.N))
            if th.fraction is None or self.N % th.fraction.denominator:
                raise ValueError("GqTheta truncation needs theta = L/N' with N' dividing the mode count")
            self.theta = th
            L, Np = th.fraction.numerator, th.fraction.denominator
            self.zeta = clock_phase(L, Np)
            d = np.array([clock_phase(-L * int(j), Np) for j in mode], dtype=complex)
            if self.origin:
                d[-1] = 1.0
            self.u = sp.diags(d, format="csr")
        self.residuals = self._certify()

    def slot_shift(self, s: int) -> sp.csr_matrix:
        if s not in self._spow:
            n = (self.K + 1) * self.N
            cols = np.arange(n)
            rows = self.level[:n] * self.N + (self.mode[:n] + s) % self.N
            r, c = list(rows), list(cols)
            if self.origin:
                r.append(self.dim - 1)
                c.append(self.dim - 1)
            self._spow[s] = sp.csr_matrix((np.ones(len(r), dtype=complex), (r, c)), shape=(self.dim, self.dim))
        return self._spow[s]

    def gamma_spectrum_points(self) -> np.ndarray:
        """Eigenvalues of the normal operator gamma: q^k times the N-th roots of unity."""
        roots = np.exp(2j * np.pi * np.arange(self.N) / self.N)
        # exact values at the quarter points keep Im(lambda) = +-1 exact
        for t in range(4):
            if (t * self.N) % 4 == 0:
                roots[(t * self.N) // 4] = [1, 1j, -1, -1j][t]
        pts = np.concatenate([(self.q**k) * roots for k in range(self.K + 1)])
        if self.origin:
            pts = np.append(pts, 0.0)
        return pts


_REGIONS = ("full", "lowerHalf", "alternating")


class GridRep(_LevelRep):
    """Point-evaluation representation on levels 0..K times an angle grid.

    Points are q^k e^{i phi} with the signed power q^k.  For ``lowerHalf``
    and ``alternating`` the angles lie in the open lower half circle; with
    q < 0 the odd levels therefore sit geometrically in the upper half, which
    is the alternating set and keeps the same-angle shift region-internal.
    """

    def __init__(self, q, K: int, G: int, region: str = "lowerHalf"):
        super().__init__()
        self.q, self.q_exact = _check_q(q)
        if region not in _REGIONS:
            raise ValueError(f"region must be one of {_REGIONS}")
        if G < 2:
            raise ValueError("the angle grid needs G >= 2 points")
        if region == "lowerHalf" and self.q < 0:
            raise ValueError("region lowerHalf requires q > 0")
        if region == "alternating" and self.q > 0:
            raise ValueError("region alternating requires q < 0")
        if K < 0:
            raise ValueError("levels K must be nonnegative")
        self.K, self.G, self.region = int(K), int(G), region
        self.algebra = Algebra.SUQ2
        self.origin = False
        i = np.arange(self.G)
        if region == "full":
            self.angles = -np.pi + 2 * np.pi * (i + 0.5) / self.G
        else:
            self.angles = -np.pi + np.pi * (i + 0.5) / self.G
        self.level = np.repeat(np.arange(self.K + 1), self.G)
        self.slot = np.tile(i, self.K + 1)
        qk = self.q ** np.arange(self.K + 1, dtype=float)
        self.phase = np.exp(1j * self.angles)
        self.points = qk[self.level] * self.phase[self.slot]
        dim = self.level.size
        self.gamma = sp.diags(self.points, format="csr")
        src = np.flatnonzero(self.level > 0)
        w = np.sqrt(1.0 - qk[self.level[src]] ** 2)
        self.alpha = sp.csr_matrix((w.astype(complex), (src - self.G, src)), shape=(dim, dim))
        self.u = None
        self.zeta = None
        self.residuals = self._certify()

    @property
    def geometric_angles(self) -> np.ndarray:
        return np.angle(self.points)

    def slot_shift(self, s: int) -> sp.csr_matrix:
        if s not in self._spow:
            self._spow[s] = sp.diags(self.phase[self.slot] ** s, format="csr")
        return self._spow[s]


def build_full_rep(q, K: int, N: int, origin: bool = False, algebra=Algebra.SUQ2, theta=None) -> TruncatedRep:
    return TruncatedRep(q, K, N, origin=origin, algebra=algebra, theta=theta)


def build_grid_rep(q, K: int, G: int, region: str | None = None) -> GridRep:
    """Grid representation; the region defaults to lowerHalf (q>0) or alternating (q<0)."""
    if region is None:
        region = "lowerHalf" if float(q) > 0 else "alternating"
    return GridRep(q, K, G, region)


build_lower_half_grid_rep = build_grid_rep


# ---------------------------------------------------------------------------
# evaluation


class _QPowers:
    def __init__(self, q):
        self.q = q
        self.cache = {0: gmpy2.mpq(1)}

    def __call__(self, e: int):
        v = self.cache.get(e)
        if v is None:
            v = self.q**e
            self.cache[e] = v
        return v


def eval_element(rep: _LevelRep, x: Element, q=None, zeta=None, dense: bool = False):
    """Matrix of x in ``rep`` (scipy CSR, or dense with ``dense=True``).

    ``q`` defaults to the representation parameter and may only differ from
    it in sign; ``zeta`` defaults to the representation's e^{2 pi i theta}.
    """
    if x.algebra not in (Algebra.SUQ2, Algebra.GQTHETA):
        raise ValueError(f"cannot evaluate a {x.algebra.value} element here")
    if x.algebra is Algebra.GQTHETA and rep.u is None:
        raise ValueError("element uses u_theta but the representation has none")
    qx = rep.q_exact if q is None else exact_q(q)
    if abs(float(qx)) != abs(rep.q) and abs(float(qx) - rep.q) > 1e-15:
        raise ValueError("q binding does not match the representation")
    zb = rep.zeta if zeta is None else complex(zeta)

    qp = _QPowers(qx)
    K = rep.K
    has_origin = bool(np.any(rep.level < 0))
    nslots = K + 2  # levels 0..K then origin
    groups: dict = {}
    for m, c in x.terms.items():
        d = m.g + m.gs
        key_base = (m.a, m.g - m.gs, m.u)
        for (qe, ze), v in c.terms.items():
            if ze and zb is None:
                raise ValueError("unbound symbol zeta: pass a zeta binding")
            acc = groups.get(key_base + (ze,))
            if acc is None:
                acc = groups[key_base + (ze,)] = [[gmpy2.mpq(0), gmpy2.mpq(0)] for _ in range(nslots)]
            for k in range(K + 1):
                f = qp(qe + k * d)
                acc[k][0] += v.re * f
                acc[k][1] += v.im * f
            if has_origin and d == 0:
                f = qp(qe)
                acc[K + 1][0] += v.re * f
                acc[K + 1][1] += v.im * f

    lev_slot = np.where(rep.level < 0, K + 1, rep.level)
    out = sp.csr_matrix((rep.dim, rep.dim), dtype=complex)
    for (a, s, l, ze), acc in sorted(groups.items()):
        w = np.array([complex(float(re), float(im)) for re, im in acc])
        if not np.any(w):
            continue
        if ze:
            w = w * zb**ze
        M = sp.diags(w[lev_slot], format="csr")
        if s:
            M = M @ rep.slot_shift(s)
        if l:
            M = M @ rep.u_power(l)
        if a:
            M = rep.alpha_power(a) @ M
        out = out + M
    out = out.tocsr()
    out.eliminate_zeros()
    return out.toarray() if dense else out


def multiplicativity_defect(rep: _LevelRep, x: Element, y: Element) -> float:
    """||pi(xy) - pi(x)pi(y)|| (bounded as in the residual certificates)."""
    from ..core.algebra import multiply

    R = eval_element(rep, multiply(x, y)) - eval_element(rep, x) @ eval_element(rep, y)
    return _residual_bound(R)

