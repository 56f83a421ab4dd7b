"""Finite models of the rotation relation w v = e^{2 pi i theta} v w."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.algebra import Algebra, Element
from ..params import clock_phase, exact_q

__all__ = ["TorusModel", "TorusRep", "build_torus_rep", "clock_model", "eval_torus_element", "convergent_models"]


@dataclass(frozen=True)
class TorusModel:
    """``clock``: size N, numerator L; ``truncatedShift``: angle theta, window [-J, J]."""

    kind: str
    N: int = 0
    L: int = 0
    theta: float = 0.0
    J: int = 0

    def __post_init__(self):
        if self.kind == "clock":
            if self.N < 1:
                raise ValueError("clock model needs N >= 1")
            if math.gcd(self.L, self.N) != 1:
                raise ValueError(f"clock model needs gcd(L, N) = 1, got L={self.L}, N={self.N}")
        elif self.kind == "truncatedShift":
            if self.J < 0:
                raise ValueError("window J must be nonnegative")
        else:
            raise ValueError(f"unknown torus model kind {self.kind!r}")

    @property
    def size(self) -> int:
        return self.N if self.kind == "clock" else 2 * self.J + 1

    @property
    def zeta(self) -> complex:
        if self.kind == "clock":
            return clock_phase(self.L, self.N)
        return complex(math.cos(2 * math.pi * self.theta), math.sin(2 * math.pi * self.theta))

    @property
    def theta_value(self) -> float:
        return self.L / self.N if self.kind == "clock" else self.theta

    def describe(self) -> dict:
        if self.kind == "clock":
            return {"kind": "clock", "N": self.N, "L": self.L}
        return {"kind": "truncatedShift", "theta": self.theta, "J": self.J}


def clock_model(N: int, L: int) -> TorusModel:
    return TorusModel("clock", N=N, L=L)


def convergent_models(theta, count: int = 2, min_size: int = 89) -> list:
    """Clock models at the first ``count`` continued-fraction convergents with N >= min_size."""
    from ..params import parse_theta

    th = parse_theta(theta)
    out = []
    for fr in th.convergents(40):
        if fr.denominator >= min_size and math.gcd(fr.numerator, fr.denominator) == 1:
            out.append(clock_model(fr.denominator, fr.numerator))
        if len(out) == count:
            break
    return out


@dataclass
class TorusRep:
    model: TorusModel
    v: np.ndarray
    w: np.ndarray
    defect: float  # normalized trace norm of wv - zeta vw
    interior_defect: float


def build_torus_rep(model: TorusModel) -> TorusRep:
    """v diagonal, w the backward shift w e_j = e_{j-1} (cyclic)."""
    n = model.size
    if model.kind == "clock":
        j = np.arange(n)
        v = np.diag([clock_phase(model.L * int(t), model.N) for t in j]).astype(complex)
    else:
        j = np.arange(-model.J, model.J + 1)
        v = np.diag(np.exp(2j * np.pi * model.theta * j))
    w = np.roll(np.eye(n, dtype=complex), -1, axis=0)  # column c has its 1 in row c-1
    R = w @ v - model.zeta * (v @ w)
    defect = float(np.abs(np.linalg.svd(R, compute_uv=False)).sum()) / n
    interior = float(np.abs(R[:, 1:]).max()) if n > 1 else 0.0
    return TorusRep(model, v, w, defect, interior)


def eval_torus_element(x: Element, rep: TorusRep, q=None) -> np.ndarray:
    """pi(x) for a Pol(T_theta) element; zeta is bound to the model's phase."""
    if x.algebra is not Algebra.TORUS:
        raise ValueError("expected a Torus element")
    n = rep.model.size
    out = np.zeros((n, n), dtype=complex)
    z = rep.model.zeta
    for m, c in x.terms.items():
        if any(qe for qe, _ in c.terms) and q is None:
            raise ValueError("unbound symbol q: pass a q binding")
        val = c.evaluate(float(exact_q(q)) if q is not None else 1.0, z)
        V = np.linalg.matrix_power(rep.v if m.v >= 0 else rep.v.conj().T, abs(m.v))
        W = np.linalg.matrix_power(rep.w if m.w >= 0 else rep.w.conj().T, abs(m.w))
        out += val * (V @ W)
    return out

