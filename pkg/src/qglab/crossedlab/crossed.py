"""Crossed product Pol(G_q^theta): shift decomposition, block form and norm agreement.

Conventions.  The crossed representation is the full truncation with
u e_{k,j} = omega^{-j} e_{k,j}.  Reflecting the modes, j -> -j, on every
level turns u into the clock matrix v = diag(omega^j) and the level-n
gamma into q^n w with w the backward shift, which is how the block form
is compared with direct evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..core.algebra import Algebra, Element, Monomial, multiply
from ..core.coeffs import Coeff
from ..cli.grammar import print_element
from ..replab.norms import operator_norm
from ..replab.reps import TruncatedRep, build_full_rep, eval_element
from ..report import Report
from .torus import TorusModel, build_torus_rep, eval_torus_element

__all__ = [
    "cq",
    "cq_squared_exact",
    "build_crossed_rep",
    "ShiftDecomposition",
    "shift_decomposition",
    "decompose_by_alpha_degree",
    "BlockForm",
    "assemble_matrix_form",
    "assembly_crosscheck",
    "norm_agreement_experiment",
    "torus_uniqueness_demo",
]


def _check_q(q) -> float:
    qf = float(q)
    if not 0.0 < abs(qf) < 1.0:
        raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
    return qf


def cq(m: int, n: int, q) -> float:
    """sqrt((1 - q^{2m})(1 - q^{2m-2}) ... (1 - q^{2n+2})), symmetric, cq(n, n) = 1."""
    qf = _check_q(q)
    if m < 0 or n < 0:
        raise ValueError("cq indices must be nonnegative")
    lo, hi = min(m, n), max(m, n)
    prod = 1.0
    for i in range(lo + 1, hi + 1):
        prod *= 1.0 - qf ** (2 * i)
    return math.sqrt(prod)


def cq_squared_exact(m: int, n: int, q) -> Fraction:
    q = Fraction(q)
    if not 0 < abs(q) < 1:
        raise ValueError("q must satisfy 0 < |q| < 1")
    lo, hi = min(m, n), max(m, n)
    out = Fraction(1)
    for i in range(lo + 1, hi + 1):
        out *= 1 - q ** (2 * i)
    return out


def build_crossed_rep(q, K: int, model: TorusModel, origin: bool = False) -> TruncatedRep:
    """Full truncation of Pol(G_q^theta) with u_theta the clock phase replicated over levels."""
    if model.kind != "clock":
        raise ValueError("the crossed representation uses the exact clock model")
    return build_full_rep(q, K, model.N, origin=origin, algebra=Algebra.GQTHETA, theta=Fraction(model.L, model.N))


# ---------------------------------------------------------------------------
# shift decomposition of alpha* powers


def _polar(X: np.ndarray) -> np.ndarray:
    U, _, Vh = np.linalg.svd(X)
    return U @ Vh


@dataclass
class ShiftDecomposition:
    W: list  # W[n]: N x N polar part of p_n alpha*^n p_0
    cq_table: np.ndarray
    residuals: dict
    per_item: list = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def shift_decomposition(rep: TruncatedRep, max_index: int | None = None) -> ShiftDecomposition:
    """Check p_m alpha*^k p_n = delta_{n+k,m} cq(m,n) v_m v_n^* on the truncation.

    Indices run over 0..L with L = min(K-1, max_index); v_n is the polar part
    of alpha*^n from the level-0 block to the level-n block.
    """
    if rep.K == 0:
        raise ValueError("shift decomposition needs K >= 1")
    L = rep.K - 1 if max_index is None else min(rep.K - 1, int(max_index))
    q = rep.q
    idx = [rep.level_indices(n) for n in range(L + 1)]
    powers = [rep.alpha_power(-k).tocsr() for k in range(L + 1)]

    def block(M, m, n):
        return M[idx[m]][:, idx[n]].toarray()

    W = [_polar(block(powers[n], n, 0)) for n in range(L + 1)]
    table = np.array([[cq(m, n, q) for n in range(L + 1)] for m in range(L + 1)])
    worst_shift = 0.0
    items = []
    for k in range(L + 1):
        for m in range(L + 1):
            for n in range(L + 1):
                B = block(powers[k], m, n)
                target = table[m, n] * (W[m] @ W[n].conj().T) if n + k == m else 0.0
                r = float(np.linalg.norm(B - target, 2))
                worst_shift = max(worst_shift, r)
                if n + k == m:
                    items.append({"m": m, "n": n, "k": k, "cq": table[m, n], "residual": r})

    G = rep.gamma.tocsr()
    I = np.eye(idx[0].size)
    unit = comm = conj = step = 0.0
    for n in range(L + 1):
        Wn = W[n]
        unit = max(unit, float(np.linalg.norm(Wn.conj().T @ Wn - I, 2)))
        if rep.u is not None:
            Un, U0 = block(rep.u, n, n), block(rep.u, 0, 0)
            comm = max(comm, float(np.linalg.norm(Wn @ U0 - Un @ Wn, 2)))
        Gn, G0 = block(G, n, n), block(G, 0, 0)
        conj = max(conj, float(np.linalg.norm(Wn.conj().T @ Gn @ Wn - q**n * G0, 2)))
        if n < L:
            nrm = float(np.linalg.norm(block(powers[1], n + 1, n), 2))
            step = max(step, abs(nrm - cq(n + 1, n, q)))
    residuals = {
        "shiftIdentity": worst_shift,
        "unitarity": unit,
        "commutationWithU": comm,
        "gammaConjugation": conj,
        "singleStepNorm": step,
    }
    return ShiftDecomposition(W, table, residuals, items)


# ---------------------------------------------------------------------------
# block matrix form of the crossed representation


def decompose_by_alpha_degree(Q: Element) -> dict:
    """{m: P_m} with Q = sum_m P_m alpha^m and P_m free of alpha.

    alpha^a gamma^m gamma*^n u^l = q^{a(m+n)} gamma^m gamma*^n u^l alpha^a.
    """
    if Q.algebra not in (Algebra.SUQ2, Algebra.GQTHETA):
        raise ValueError("decompose_by_alpha_degree expects an SUq2 or GqTheta element")
    parts: dict = {}
    for m, c in Q.terms.items():
        d = parts.setdefault(m.a, {})
        key = Monomial(0, m.g, m.gs, m.u)
        d[key] = c * Coeff.mono(m.a * (m.g + m.gs), 0)
    return {a: Element(Q.algebra, d) for a, d in sorted(parts.items())}


def reassemble(parts: dict, algebra) -> Element:
    out = Element(algebra, {})
    for a, P in parts.items():
        out = out + multiply(P, Element(algebra, {Monomial(a): 1}))
    return out


@dataclass
class BlockForm:
    cutoff: int
    size: int  # torus space dimension
    blocks: dict  # (row, col) -> size x size complex

    def block(self, r: int, c: int) -> np.ndarray:
        return self.blocks.get((r, c), np.zeros((self.size, self.size), dtype=complex))

    def to_dense(self) -> np.ndarray:
        n = self.size
        out = np.zeros(((self.cutoff + 1) * n, (self.cutoff + 1) * n), dtype=complex)
        for (r, c), B in self.blocks.items():
            out[r * n : (r + 1) * n, c * n : (c + 1) * n] = B
        return out


def _torus_factors(model: TorusModel):
    tr = build_torus_rep(model)
    n = model.size
    vdiag = np.diag(tr.v)
    eye = np.eye(n, dtype=complex)

    def wpow(s):
        return np.roll(eye, -s, axis=0)

    def vpow(l):
        return np.diag(vdiag**l if l >= 0 else np.conj(vdiag) ** (-l))

    return wpow, vpow


def assemble_matrix_form(Q: Element, model: TorusModel, M: int, q) -> BlockForm:
    """Block (c - a, c) = cq(c, c - a) pi_T(P_a) with gamma -> q^{c-a} w and u -> v."""
    qf = _check_q(q)
    if Q.algebra not in (Algebra.SUQ2, Algebra.GQTHETA):
        raise ValueError("assemble_matrix_form expects an SUq2 or GqTheta element")
    deg = max((abs(m.a) for m in Q.terms), default=0)
    if M < deg:
        raise ValueError(f"cutoff {M} is smaller than the alpha-degree {deg}")
    wpow, vpow = _torus_factors(model)
    zeta = model.zeta
    blocks: dict = {}
    for a, P in decompose_by_alpha_degree(Q).items():
        for c in range(M + 1):
            r = c - a
            if not 0 <= r <= M:
                continue
            B = np.zeros((model.size, model.size), dtype=complex)
            for mono, coeff in P.terms.items():
                val = coeff.evaluate(qf, zeta) * qf ** (r * (mono.g + mono.gs))
                B += val * (wpow(mono.g - mono.gs) @ vpow(mono.u))
            B *= cq(c, r, qf)
            if (r, c) in blocks:
                blocks[(r, c)] = blocks[(r, c)] + B
            else:
                blocks[(r, c)] = B
    return BlockForm(M, model.size, blocks)


def _reflection(N: int) -> np.ndarray:
    R = np.zeros((N, N))
    for j in range(N):
        R[(-j) % N, j] = 1.0
    return R


def assembly_crosscheck(Q: Element, model: TorusModel, K: int, q, M: int | None = None) -> float:
    """max entrywise |assembled - direct| on blocks r, c <= M - deg(Q)."""
    M = K if M is None else M
    if M > K:
        raise ValueError("cutoff cannot exceed the number of levels")
    rep = build_crossed_rep(q, K, model)
    direct = eval_element(rep, Q if Q.algebra is Algebra.GQTHETA else Element(Algebra.GQTHETA, Q.terms)).tocsr()
    form = assemble_matrix_form(Q, model, M, q)
    lim = M - Q.degree()
    R = _reflection(model.N)
    worst = 0.0
    for r in range(max(lim, 0) + 1):
        ir = rep.level_indices(r)
        for c in range(max(lim, 0) + 1):
            ic = rep.level_indices(c)
            D = R @ direct[ir][:, ic].toarray() @ R.T
            worst = max(worst, float(np.abs(D - form.block(r, c)).max()))
    return worst


# ---------------------------------------------------------------------------
# experiments


def _rel(a: float, b: float) -> float:
    s = max(abs(a), abs(b))
    return abs(a - b) / s if s > 0 else 0.0


def norm_agreement_experiment(
    suite: list,
    model_a: TorusModel,
    model_b: TorusModel,
    q,
    M: int,
    tol: float = 0.05,
    command: str = "exp-thm46",
) -> Report:
    if not suite:
        raise ValueError("element suite is empty")
    items = []
    for i, Q in enumerate(suite):
        na = operator_norm(assemble_matrix_form(Q, model_a, M, q).to_dense())
        nb = operator_norm(assemble_matrix_form(Q, model_b, M, q).to_dense())
        items.append({"index": i, "element": print_element(Q), "normA": na, "normB": nb, "relDiff": _rel(na, nb)})
    worst = max(it["relDiff"] for it in items)
    params = {"q": float(q), "cutoff": M, "modelA": model_a.describe(), "modelB": model_b.describe(), "tolerance": tol}
    verdict = {"agree": worst <= tol, "pass": worst <= tol}
    return Report(command, params, {"maxRelDiff": worst, "suiteSize": len(suite)}, items, verdict)


def torus_uniqueness_demo(suite: list, model_a: TorusModel, model_b: TorusModel, tol: float = 0.05, q=None) -> Report:
    if not suite:
        raise ValueError("element suite is empty")
    ra, rb = build_torus_rep(model_a), build_torus_rep(model_b)
    items = []
    for i, x in enumerate(suite):
        na = operator_norm(eval_torus_element(x, ra, q))
        nb = operator_norm(eval_torus_element(x, rb, q))
        items.append({"index": i, "element": print_element(x), "normA": na, "normB": nb, "relDiff": _rel(na, nb)})
    worst = max(it["relDiff"] for it in items)
    params = {"modelA": model_a.describe(), "modelB": model_b.describe(), "tolerance": tol}
    verdict = {"agree": worst <= tol, "pass": worst <= tol}
    return Report("exp-torus", params, {"maxRelDiff": worst, "suiteSize": len(suite)}, items, verdict)
