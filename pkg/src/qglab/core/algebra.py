"""Normal-form *-algebra engine for Pol(SU_q(2)), Pol(G_q^theta) and Pol(T_theta).

Normal form for the quantum group algebras is ``alpha^a gamma^m gamma*^n u^l``
with ``a`` signed (negative powers stand for ``alpha*``), ``m, n >= 0`` and
``l`` signed.  For the torus it is ``v^a w^b``.  A fourth, commutative tag
``CIRCLE`` holds images of the quotient map onto the diagonal torus
(``z^a u^l``).

Products of normal monomials are computed in closed form:

* ``u^l`` moves right past ``gamma^m gamma*^n`` picking up ``zeta^(l(n-m))``;
* ``alpha^b`` moves left past ``gamma^m gamma*^n`` picking up ``q^(-b(m+n))``;
* an opposite-signed pair ``alpha^a alpha*^c`` collapses to
  ``alpha^(a-c)`` times a product of factors ``(1 - q^e gamma gamma*)``.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, NamedTuple

from .coeffs import COEFF_ONE, COEFF_ZERO, Coeff, GaussianRational

__all__ = [
    "Algebra",
    "Monomial",
    "TorusMonomial",
    "Element",
    "TensorElement",
    "multiply",
    "adjoint",
    "one",
    "zero",
    "alpha",
    "alpha_star",
    "gamma",
    "gamma_star",
    "u_theta",
    "u_theta_star",
    "torus_v",
    "torus_w",
    "circle_z",
    "circle_u",
    "scalar",
]


class Algebra(str, enum.Enum):
    SUQ2 = "SUq2"
    GQTHETA = "GqTheta"
    TORUS = "Torus"
    CIRCLE = "Circle"


class Monomial(NamedTuple):
    """``alpha^a gamma^g gamma*^gs u^u`` (``a < 0`` means ``alpha*^-a``)."""

    a: int = 0
    g: int = 0
    gs: int = 0
    u: int = 0

    @property
    def degree(self) -> int:
        return abs(self.a) + self.g + self.gs + abs(self.u)


class TorusMonomial(NamedTuple):
    """``v^v w^w`` on the torus, or ``z^v u^w`` on the (commutative) circle."""

    v: int = 0
    w: int = 0

    @property
    def degree(self) -> int:
        return abs(self.v) + abs(self.w)


_QUANTUM = (Algebra.SUQ2, Algebra.GQTHETA)


def _unit_monomial(alg: Algebra):
    return Monomial() if alg in _QUANTUM else TorusMonomial()


# ---------------------------------------------------------------------------
# monomial products


def _expand_pair_factors(exponents: tuple) -> tuple:
    """Expand prod_e (1 - q^e P) into ((j, Coeff), ...) with P = gamma gamma*."""
    poly = {0: COEFF_ONE}
    for e in exponents:
        nxt: dict = {}
        for j, c in poly.items():
            nxt[j] = nxt.get(j, COEFF_ZERO) + c
            nxt[j + 1] = nxt.get(j + 1, COEFF_ZERO) - c * Coeff.mono(e, 0)
        poly = {j: c for j, c in nxt.items() if c}
    return tuple(sorted(poly.items()))


@lru_cache(maxsize=None)
def _alpha_pair(a: int, b: int) -> tuple:
    """Normal form of ``alpha^a alpha^b`` as ((j, coeff), ...) times alpha^(a+b) P^j."""
    if a >= 0 and b >= 0 or a <= 0 and b <= 0:
        return ((0, COEFF_ONE),)
    if a > 0:
        # alpha^a alpha*^c = alpha^(a-c) prod_{t<min} (1 - q^{2(c-t)} P)
        c = -b
        k = min(a, c)
        return _expand_pair_factors(tuple(2 * (c - t) for t in range(k)))
    # alpha*^c alpha^a' = alpha^(a'-c) prod_{t<min} (1 - q^{-2(a'-t-1)} P)
    c, ap = -a, b
    k = min(c, ap)
    return _expand_pair_factors(tuple(-2 * (ap - t - 1) for t in range(k)))


@lru_cache(maxsize=1 << 20)
def _mul_quantum(m1: Monomial, m2: Monomial) -> tuple:
    a1, g1, s1, l1 = m1
    a2, g2, s2, l2 = m2
    qexp = -a2 * (g1 + s1)
    zexp = l1 * (s2 - g2)
    base = Coeff.mono(qexp, zexp)
    g, s, a, l = g1 + g2, s1 + s2, a1 + a2, l1 + l2
    out = []
    for j, c in _alpha_pair(a1, a2):
        out.append((Monomial(a, g + j, s + j, l), base * c))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _mul_torus(m1: TorusMonomial, m2: TorusMonomial) -> tuple:
    # w^b v^c = zeta^(bc) v^c w^b
    return ((TorusMonomial(m1.v + m2.v, m1.w + m2.w), Coeff.mono(0, m1.w * m2.v)),)


def _mul_circle(m1: TorusMonomial, m2: TorusMonomial) -> tuple:
    return ((TorusMonomial(m1.v + m2.v, m1.w + m2.w), COEFF_ONE),)


_MUL = {
    Algebra.SUQ2: _mul_quantum,
    Algebra.GQTHETA: _mul_quantum,
    Algebra.TORUS: _mul_torus,
    Algebra.CIRCLE: _mul_circle,
}


def monomial_product(alg: Algebra, m1, m2) -> tuple:
    """Normal form of a product of two normal monomials, ((mono, coeff), ...)."""
    return _MUL[Algebra(alg)](m1, m2)


@lru_cache(maxsize=1 << 16)
def _adjoint_quantum(m: Monomial) -> tuple:
    # (alpha^a gamma^g gamma*^s u^l)* = u^-l gamma^s gamma*^g alpha^-a
    left = {Monomial(0, 0, 0, -m.u): COEFF_ONE}
    for factor in (Monomial(0, m.gs, m.g, 0), Monomial(-m.a, 0, 0, 0)):
        nxt: dict = {}
        for mono, c in left.items():
            for mm, cc in _mul_quantum(mono, factor):
                nxt[mm] = nxt.get(mm, COEFF_ZERO) + c * cc
        left = {k: v for k, v in nxt.items() if v}
    return tuple(left.items())


def _adjoint_torus(m: TorusMonomial) -> tuple:
    # (v^a w^b)* = w^-b v^-a = zeta^(ab) v^-a w^-b
    return ((TorusMonomial(-m.v, -m.w), Coeff.mono(0, m.v * m.w)),)


def _adjoint_circle(m: TorusMonomial) -> tuple:
    return ((TorusMonomial(-m.v, -m.w), COEFF_ONE),)


_ADJ = {
    Algebra.SUQ2: _adjoint_quantum,
    Algebra.GQTHETA: _adjoint_quantum,
    Algebra.TORUS: _adjoint_torus,
    Algebra.CIRCLE: _adjoint_circle,
}


# ---------------------------------------------------------------------------
# elements


def _check_monomial(alg: Algebra, m) -> None:
    if alg in _QUANTUM:
        if not isinstance(m, Monomial):
            raise TypeError(f"{alg.value} terms must be Monomial, got {type(m).__name__}")
        if m.g < 0 or m.gs < 0:
            raise ValueError(f"negative gamma exponent in {m}")
        if alg is Algebra.SUQ2 and m.u:
            raise ValueError("u_theta does not exist in Pol(SU_q(2))")
    elif not isinstance(m, TorusMonomial):
        raise TypeError(f"{alg.value} terms must be TorusMonomial, got {type(m).__name__}")


class Element:
    """Finite linear combination of normal-form monomials (immutable)."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra, terms=None):
        alg = Algebra(algebra)
        clean = {}
        for m, c in (terms or {}).items():
            _check_monomial(alg, m)
            c = Coeff.coerce(c)
            if c:
                clean[m] = clean[m] + c if m in clean else c
        object.__setattr__(self, "algebra", alg)
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def _raw(cls, alg: Algebra, terms: dict) -> "Element":
        obj = object.__new__(cls)
        object.__setattr__(obj, "algebra", alg)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def monomial(cls, algebra, m, coeff=1) -> "Element":
        return cls(algebra, {m: coeff})

    # arithmetic -----------------------------------------------------------
    def _same(self, other: "Element") -> None:
        if self.algebra is not other.algebra:
            raise ValueError(f"algebra mismatch: {self.algebra.value} vs {other.algebra.value}")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._same(other)
            return other
        return scalar(self.algebra, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Element._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = Coeff.coerce(other)
        if not c:
            return Element._raw(self.algebra, {})
        return Element._raw(self.algebra, {m: v * c for m, v in self.terms.items() if v * c})

    def __rmul__(self, other):
        if isinstance(other, Element):
            return multiply(other, self)
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for general elements")
        out = one(self.algebra)
        for _ in range(n):
            out = multiply(out, self)
        return out

    @property
    def star(self) -> "Element":
        return adjoint(self)

    # queries --------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.terms == other.terms
        try:
            return self == scalar(self.algebra, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.algebra, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def coefficient(self, m) -> Coeff:
        return self.terms.get(m, COEFF_ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple(t[0]))

    def map_coefficients(self, f) -> "Element":
        return Element(self.algebra, {m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        from ..cli.grammar import print_element

        return f"Element[{self.algebra.value}]({print_element(self)})"

    def __str__(self):
        from ..cli.grammar import print_element

        return print_element(self)


def _collect(alg: Algebra, pairs: Iterable) -> Element:
    out: dict = {}
    for m, c in pairs:
        s = out.get(m)
        out[m] = c if s is None else s + c
    return Element._raw(alg, {m: c for m, c in out.items() if c})


def multiply(x: Element, y: Element) -> Element:
    """Normal form of ``x y``."""
    x._same(y)
    mul = _MUL[x.algebra]
    out: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = c1 * c2
            for m, c in mul(m1, m2):
                p = c12 * c
                s = out.get(m)
                out[m] = p if s is None else s + p
    return Element._raw(x.algebra, {m: c for m, c in out.items() if c})


def adjoint(x: Element) -> Element:
    """Conjugate-linear anti-multiplicative involution."""
    adj = _ADJ[x.algebra]
    out: dict = {}
    for m, c in x.terms.items():
        cc = c.conj()
        for mm, k in adj(m):
            p = cc * k
            s = out.get(mm)
            out[mm] = p if s is None else s + p
    return Element._raw(x.algebra, {m: c for m, c in out.items() if c})


# ---------------------------------------------------------------------------
# tensor products


class TensorElement:
    """Finite sum of elementary tensors of normal monomials (any number of legs)."""

    __slots__ = ("algebras", "terms")

    def __init__(self, algebras, terms=None):
        algs = tuple(Algebra(a) for a in algebras)
        clean: dict = {}
        for key, c in (terms or {}).items():
            if len(key) != len(algs):
                raise ValueError("tensor key length does not match the number of legs")
            for a, m in zip(algs, key):
                _check_monomial(a, m)
            c = Coeff.coerce(c)
            clean[key] = clean[key] + c if key in clean else c
        object.__setattr__(self, "algebras", algs)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def _raw(cls, algebras: tuple, terms: dict) -> "TensorElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "algebras", algebras)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def from_elements(cls, *elements: Element) -> "TensorElement":
        """Elementary tensor x1 (x) x2 (x) ..."""
        terms = {(): COEFF_ONE}
        for e in elements:
            nxt = {}
            for key, c in terms.items():
                for m, cm in e.terms.items():
                    nxt[key + (m,)] = c * cm
            terms = nxt
        return cls._raw(tuple(e.algebra for e in elements), {k: v for k, v in terms.items() if v})

    @property
    def legs(self) -> int:
        return len(self.algebras)

    def _check(self, other: "TensorElement") -> None:
        if self.algebras != other.algebras:
            raise ValueError("tensor leg algebras differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return TensorElement._raw(self.algebras, {k: v for k, v in out.items() if v})

    def __neg__(self):
        return TensorElement._raw(self.algebras, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            c = Coeff.coerce(other)
            return TensorElement._raw(
                self.algebras, {k: v * c for k, v in self.terms.items() if v * c}
            )
        self._check(other)
        muls = [_MUL[a] for a in self.algebras]
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = [((), c1 * c2)]
                for mul, m1, m2 in zip(muls, k1, k2):
                    prods = mul(m1, m2)
                    partial = [(key + (m,), c * cm) for key, c in partial for m, cm in prods]
                for key, c in partial:
                    s = out.get(key)
                    out[key] = c if s is None else s + c
        return TensorElement._raw(self.algebras, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def adjoint(self) -> "TensorElement":
        """Leg-wise adjoint."""
        adjs = [_ADJ[a] for a in self.algebras]
        out: dict = {}
        for key, c in self.terms.items():
            partial = [((), c.conj())]
            for adj, m in zip(adjs, key):
                images = adj(m)
                partial = [(k + (mm,), cc * ci) for k, cc in partial for mm, ci in images]
            for k, v in partial:
                s = out.get(k)
                out[k] = v if s is None else s + v
        return TensorElement._raw(self.algebras, {k: v for k, v in out.items() if v})

    def map_leg(self, leg: int, f, new_algebras=None) -> "TensorElement":
        """Apply a linear map ``f: monomial -> TensorElement`` (or Element) on one leg."""
        algs_out = None
        out: dict = {}
        for key, c in self.terms.items():
            image = f(key[leg])
            if isinstance(image, Element):
                image_terms = {(m,): v for m, v in image.terms.items()}
                image_algs = (image.algebra,)
            else:
                image_terms = image.terms
                image_algs = image.algebras
            if algs_out is None:
                algs_out = self.algebras[:leg] + image_algs + self.algebras[leg + 1:]
            for sub, v in image_terms.items():
                k = key[:leg] + sub + key[leg + 1:]
                p = c * v
                s = out.get(k)
                out[k] = p if s is None else s + p
        if algs_out is None:
            algs_out = new_algebras if new_algebras is not None else self.algebras
        return TensorElement._raw(tuple(algs_out), {k: v for k, v in out.items() if v})

    def contract(self) -> Element:
        """Multiply the legs together (all legs must share one algebra)."""
        alg = self.algebras[0]
        if any(a is not alg for a in self.algebras):
            raise ValueError("cannot multiply legs of different algebras")
        mul = _MUL[alg]
        out: dict = {}
        for key, c in self.terms.items():
            partial = [(key[0], c)]
            for m2 in key[1:]:
                partial = [(mm, cc * cm) for m1, cc in partial for mm, cm in mul(m1, m2)]
            for m, v in partial:
                s = out.get(m)
                out[m] = v if s is None else s + v
        return Element._raw(alg, {m: v for m, v in out.items() if v})

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebras == other.algebras and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebras, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from ..cli.grammar import print_tensor

        return f"TensorElement({print_tensor(self)})"

    def __str__(self):
        from ..cli.grammar import print_tensor

        return print_tensor(self)


# ---------------------------------------------------------------------------
# constructors


def scalar(algebra, c) -> Element:
    alg = Algebra(algebra)
    c = Coeff.coerce(c)
    return Element._raw(alg, {_unit_monomial(alg): c} if c else {})


def one(algebra=Algebra.SUQ2) -> Element:
    return scalar(algebra, 1)


def zero(algebra=Algebra.SUQ2) -> Element:
    return Element._raw(Algebra(algebra), {})


def _quantum(algebra) -> Algebra:
    alg = Algebra(algebra)
    if alg not in _QUANTUM:
        raise ValueError(f"{alg.value} has no alpha/gamma generators")
    return alg


def alpha(algebra=Algebra.SUQ2) -> Element:
    return Element._raw(_quantum(algebra), {Monomial(1, 0, 0, 0): COEFF_ONE})


def alpha_star(algebra=Algebra.SUQ2) -> Element:
    return Element._raw(_quantum(algebra), {Monomial(-1, 0, 0, 0): COEFF_ONE})


def gamma(algebra=Algebra.SUQ2) -> Element:
    return Element._raw(_quantum(algebra), {Monomial(0, 1, 0, 0): COEFF_ONE})


def gamma_star(algebra=Algebra.SUQ2) -> Element:
    return Element._raw(_quantum(algebra), {Monomial(0, 0, 1, 0): COEFF_ONE})


def u_theta(power: int = 1) -> Element:
    return Element._raw(Algebra.GQTHETA, {Monomial(0, 0, 0, power): COEFF_ONE})


def u_theta_star() -> Element:
    return u_theta(-1)


def torus_v(power: int = 1) -> Element:
    return Element._raw(Algebra.TORUS, {TorusMonomial(power, 0): COEFF_ONE})


def torus_w(power: int = 1) -> Element:
    return Element._raw(Algebra.TORUS, {TorusMonomial(0, power): COEFF_ONE})


def circle_z(power: int = 1) -> Element:
    return Element._raw(Algebra.CIRCLE, {TorusMonomial(power, 0): COEFF_ONE})


def circle_u(power: int = 1) -> Element:
    return Element._raw(Algebra.CIRCLE, {TorusMonomial(0, power): COEFF_ONE})


def q_scalar(algebra=Algebra.SUQ2, power: int = 1) -> Element:
    return scalar(algebra, Coeff.mono(power, 0))


def zeta_scalar(algebra=Algebra.GQTHETA, power: int = 1) -> Element:
    return scalar(algebra, Coeff.mono(0, power))


def i_scalar(algebra=Algebra.SUQ2) -> Element:
    return scalar(algebra, GaussianRational(0, 1))
