"""Norm separation between the full truncated representation and the half-circle grid."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..core.algebra import Algebra, Element, Monomial, gamma, zero
from ..core.coeffs import Coeff, GaussianRational
from ..report import Report
from .chebyshev import ChebPoly, chebyshev_approx
from .norms import operator_norm
from .reps import GridRep, build_full_rep, build_grid_rep, eval_element

__all__ = [
    "SeparationTarget",
    "imaginary_part_polynomial",
    "ramp_target",
    "gamma_target",
    "zero_target",
    "InjectivityResult",
    "injectivity_diagnostic",
    "norm_separation_experiment",
]

DEFAULT_LOCALIZER_NEGATIVE_Q = 4


def imaginary_part_polynomial(p: ChebPoly, localizer: int = 0) -> Element:
    """p(T) (gamma* gamma)^s exactly, with T = (gamma - gamma*)/(2i).

    T^k = (-i/2)^k sum_j C(k,j) (-1)^(k-j) gamma^j gamma*^(k-j) in the
    commutative subalgebra; the float Chebyshev coefficients are taken at
    their exact binary values, so the Element is an exact polynomial.
    """
    b = p.power_coefficients_exact()
    terms: dict = {}
    minus_half_i = GaussianRational(0, Fraction(-1, 2))
    pw = GaussianRational(1)
    for k, bk in enumerate(b):
        if k:
            pw = pw * minus_half_i
        if not bk:
            continue
        base = pw * GaussianRational(bk)
        for j in range(k + 1):
            c = base * (math.comb(k, j) * (-1) ** (k - j))
            m = Monomial(0, j + localizer, k - j + localizer, 0)
            terms[m] = terms[m] + c if m in terms else c
    return Element(Algebra.SUQ2, {m: Coeff.const(c) for m, c in terms.items()})


@dataclass
class SeparationTarget:
    """An element of the gamma-subalgebra together with its pointwise modulus.

    ``pointwise`` gives |x(lambda)| at spectral points of the normal operator
    gamma; it is evaluated independently of the symbolic element.
    """

    name: str
    element: Element
    pointwise: Callable[[np.ndarray], np.ndarray]
    details: dict


def ramp_target(D: int = 64, localizer: int = 0) -> SeparationTarget:
    p = chebyshev_approx("ramp", D)
    s = int(localizer)

    def pointwise(z):
        z = np.asarray(z, dtype=complex)
        return np.abs(p(z.imag)) * np.abs(z) ** (2 * s)

    details = {"chebDegree": D, "chebSupError": p.sup_error, "localizer": s}
    return SeparationTarget("ramp", imaginary_part_polynomial(p, s), pointwise, details)


def gamma_target() -> SeparationTarget:
    return SeparationTarget("gamma", gamma(), lambda z: np.abs(np.asarray(z, dtype=complex)), {})


def zero_target() -> SeparationTarget:
    return SeparationTarget("zero", zero(), lambda z: np.zeros(np.shape(z)), {})


# ---------------------------------------------------------------------------
# injectivity


@dataclass
class InjectivityResult:
    sigma_min: float
    sigma_max: float
    monomials: int
    rows: int
    normalization: str = "raw flattened images (identity has norm sqrt(dim))"


def _monomial_set(bounds) -> list:
    if isinstance(bounds, (list, tuple)) and bounds and isinstance(bounds[0], Monomial):
        return list(bounds)
    A, Mg, Ms = bounds if len(bounds) == 3 else (bounds[0], bounds[1], bounds[1])
    return [Monomial(a, m, n, 0) for a in range(-A, A + 1) for m in range(Mg + 1) for n in range(Ms + 1)]


def injectivity_diagnostic(rep: GridRep, bounds=(2, 2, 2)) -> InjectivityResult:
    """Smallest singular value of the stacked flattened images of basis monomials.

    Columns are grouped into components with overlapping supports; the
    stacked matrix is block diagonal across components, so its singular
    values are the union of the per-component ones.
    """
    monos = _monomial_set(bounds)
    if not monos:
        raise ValueError("empty monomial set")
    images = []
    for m in monos:
        M = eval_element(rep, Element(Algebra.SUQ2, {m: 1})).tocoo()
        flat = M.row.astype(np.int64) * rep.dim + M.col
        images.append((flat, M.data))
    # union-find on shared support
    parent = list(range(len(images)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict = {}
    for idx, (flat, _) in enumerate(images):
        for f in flat.tolist():
            j = owner.setdefault(f, idx)
            if j != idx:
                ri, rj = find(idx), find(j)
                if ri != rj:
                    parent[ri] = rj
    comps: dict = {}
    for idx in range(len(images)):
        comps.setdefault(find(idx), []).append(idx)
    sig_all = []
    total_rows = 0
    for members in comps.values():
        support = np.unique(np.concatenate([images[i][0] for i in members]))
        total_rows += support.size
        block = np.zeros((support.size, len(members)), dtype=complex)
        for col, i in enumerate(members):
            flat, data = images[i]
            block[np.searchsorted(support, flat), col] = data
        if support.size < len(members):
            sig_all.append(0.0)
        if block.shape[0] > 4 * block.shape[1]:
            _, block = np.linalg.qr(block)
        sig_all.extend(np.linalg.svd(block, compute_uv=False).tolist())
    sig = np.array(sig_all)
    if len(monos) > total_rows or len(set(monos)) < len(monos):
        # repeated columns or more columns than rows: exactly rank deficient
        sig = np.append(sig, 0.0)
    return InjectivityResult(float(sig.min()), float(sig.max()), len(monos), int(total_rows))


# ---------------------------------------------------------------------------
# experiment


def norm_separation_experiment(
    q=0.5,
    K: int = 12,
    N: int = 64,
    G: int = 2048,
    D: int = 64,
    *,
    target: str | SeparationTarget = "ramp",
    localizer: int | None = None,
    threshold: float = 10.0,
    injectivity_bounds=(2, 2, 2),
    injectivity_floor: float = 1e-6,
    crosscheck: bool = True,
) -> Report:
    """fullNorm vs restrictedNorm of a separating element of the gamma-subalgebra.

    fullNorm is the sup of |x| over the spectrum of gamma in the full
    truncation; restrictedNorm the sup over the half-circle (q>0) or
    alternating (q<0) grid.  Both are cross-checked against the operator
    norm of the evaluated symbolic element.
    """
    qf = float(q)
    if localizer is None:
        localizer = 0 if qf > 0 else DEFAULT_LOCALIZER_NEGATIVE_Q
    if isinstance(target, SeparationTarget):
        tgt = target
    elif target == "ramp":
        tgt = ramp_target(D, localizer)
    elif target == "gamma":
        tgt = gamma_target()
    elif target == "zero":
        tgt = zero_target()
    else:
        raise ValueError(f"unknown target {target!r}")

    full = build_full_rep(q, K, N)
    grid = build_grid_rep(q, K, G)
    full_pts = full.gamma_spectrum_points()
    full_norm = float(np.max(tgt.pointwise(full_pts))) if full_pts.size else 0.0
    restricted_norm = float(np.max(tgt.pointwise(grid.points)))

    metrics = {
        "fullNorm": full_norm,
        "restrictedNorm": restricted_norm,
        "ratio": (full_norm / restricted_norm) if restricted_norm > 0 else None,
        "normDifference": full_norm - restricted_norm,
        "boundaryDefect": full.boundary_defect,
        "elementTerms": len(tgt.element),
    }
    metrics.update(tgt.details)
    if crosscheck:
        Xf = eval_element(full, tgt.element)
        Xg = eval_element(grid, tgt.element)
        op_full = operator_norm(Xf)
        op_grid = operator_norm(Xg)
        metrics["fullOperatorNorm"] = op_full
        metrics["restrictedOperatorNorm"] = op_grid
        metrics["crossCheckFull"] = abs(op_full - full_norm)
        metrics["crossCheckRestricted"] = abs(op_grid - restricted_norm)
    inj = injectivity_diagnostic(grid, injectivity_bounds)
    metrics["injectivitySigmaMin"] = inj.sigma_min
    metrics["injectivityMonomials"] = inj.monomials

    ratio = metrics["ratio"]
    separated = bool(ratio is not None and ratio >= threshold and inj.sigma_min > injectivity_floor)
    if tgt.name == "zero":
        separated = False
    cross_ok = True
    if crosscheck:
        cross_ok = metrics["crossCheckFull"] <= 1e-8 and metrics["crossCheckRestricted"] <= 1e-8
    verdict = {"separated": separated, "crossCheck": bool(cross_ok), "pass": bool(separated and cross_ok)}
    params = {
        "q": str(q) if isinstance(q, Fraction) else qf,
        "levels": K,
        "modes": N,
        "grid": G,
        "chebDegree": D,
        "target": tgt.name,
        "region": grid.region,
        "localizer": localizer if tgt.name == "ramp" else 0,
        "threshold": threshold,
        "injectivityBounds": list(injectivity_bounds),
    }
    return Report("exp-thm31", params, metrics, [], verdict)

