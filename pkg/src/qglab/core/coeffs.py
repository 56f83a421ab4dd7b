"""Exact scalars for the quantum group algebras.

``GaussianRational`` is a complex number with rational parts.  ``Coeff`` is a
Laurent polynomial in the two central symbols ``q`` (real) and ``zeta``
(unimodular, so ``conj(zeta) = zeta**-1``) with Gaussian-rational
coefficients.  ``RationalValue`` is a reduced fraction of polynomials in ``q``
(numerators may carry powers of ``zeta``) and holds Haar-state values.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "Coeff", "RationalValue", "as_exact"]

_MPQ = type(mpq(0))


def _q(x) -> mpq:
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Fraction, float)) or isinstance(x, Rational):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, complex):
            re, im = re.real, re.imag
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational._raw(o.re / den, -o.im / den)

    def __rtruediv__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result = GaussianRational._raw(mpq(1), mpq(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # comparison / conversion ----------------------------------------------
    def __eq__(self, other):
        o = as_exact(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return _fmt_q(self.re)
        if not self.re:
            return _fmt_imag(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({_fmt_q(self.re)} {sign} {_fmt_imag(abs(self.im))})"


def _fmt_q(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _fmt_imag(x: mpq) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{_fmt_q(x)} i"


def as_exact(x):
    """Coerce ints, rationals and GaussianRationals; NotImplemented otherwise."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, _MPQ)) or isinstance(x, Rational):
        return GaussianRational._raw(mpq(x), mpq(0))
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class Coeff:
    """Laurent polynomial in ``q`` and ``zeta`` over the Gaussian rationals.

    ``terms`` maps ``(q_exponent, zeta_exponent)`` to a nonzero
    ``GaussianRational``.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, val in terms.items():
                v = val if isinstance(val, GaussianRational) else GaussianRational(val)
                if v:
                    clean[(int(key[0]), int(key[1]))] = v
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Coeff is immutable")

    @classmethod
    def _raw(cls, terms: dict) -> "Coeff":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c) -> "Coeff":
        if isinstance(c, Coeff):
            return c
        v = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return cls._raw({(0, 0): v} if v else {})

    @classmethod
    def mono(cls, qexp: int = 0, zexp: int = 0, c=1) -> "Coeff":
        v = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return cls._raw({(qexp, zexp): v} if v else {})

    @classmethod
    def coerce(cls, x) -> "Coeff":
        if isinstance(x, Coeff):
            return x
        return cls.const(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Coeff):
            other = Coeff.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Coeff._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coeff._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Coeff):
            other = Coeff.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Coeff.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Coeff):
            try:
                other = Coeff.const(other)
            except TypeError:
                return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Coeff._raw({})
        if len(a) == 1 and len(b) == 1:
            (k1, v1), = a.items()
            (k2, v2), = b.items()
            return Coeff._raw({(k1[0] + k2[0], k1[1] + k2[1]): v1 * v2})
        out = {}
        for (q1, z1), v1 in a.items():
            for (q2, z2), v2 in b.items():
                k = (q1 + q2, z1 + z2)
                p = v1 * v2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return Coeff._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only Laurent monomials are invertible")
            (k, v), = self.terms.items()
            return Coeff._raw({(k[0] * n, k[1] * n): v**n})
        out = Coeff.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "Coeff":
        return Coeff._raw({(qe, -ze): v.conjugate() for (qe, ze), v in self.terms.items()})

    # queries --------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant(self) -> GaussianRational:
        return self.terms.get((0, 0), ZERO)

    def has_zeta(self) -> bool:
        return any(ze for _, ze in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Coeff):
            other = as_exact(other)
            if other is NotImplemented:
                return NotImplemented
            other = Coeff.const(other)
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # evaluation -----------------------------------------------------------
    def substitute_q(self, qval) -> dict:
        """Exact substitution of a rational ``q``; returns ``{zeta_exp: value}``."""
        qv = _q(qval)
        out: dict = {}
        for (qe, ze), v in self.terms.items():
            p = v * (qv ** qe)
            s = out.get(ze)
            out[ze] = p if s is None else s + p
        return {k: v for k, v in out.items() if v}

    def evaluate(self, q, zeta=1) -> complex:
        """Floating point value at numeric ``q`` and ``zeta``."""
        q = float(q)
        zeta = complex(zeta)
        return sum((complex(v) * q**qe * zeta**ze for (qe, ze), v in self.terms.items()), 0j)

    def evaluate_exact(self, q, zeta=ONE) -> GaussianRational:
        """Exact value for rational ``q`` and Gaussian-rational ``zeta``."""
        z = zeta if isinstance(zeta, GaussianRational) else GaussianRational(zeta)
        total = ZERO
        for ze, v in self.substitute_q(q).items():
            total = total + v * z**ze
        return total

    def sorted_items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"Coeff({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (qe, ze), v in self.sorted_items():
            sym = []
            if qe:
                sym.append("q" if qe == 1 else f"q^{qe}")
            if ze:
                sym.append("zeta" if ze == 1 else f"zeta^{ze}")
            if not sym:
                parts.append(str(v))
            elif v == 1:
                parts.append(" ".join(sym))
            elif v == -1:
                parts.append("-" + " ".join(sym))
            else:
                parts.append(f"{v} " + " ".join(sym))
        return " + ".join(parts).replace("+ -", "- ")


COEFF_ZERO = Coeff._raw({})
COEFF_ONE = Coeff.const(1)
Q = Coeff.mono(1, 0)
ZETA = Coeff.mono(0, 1)


# ---------------------------------------------------------------------------
# Rational functions of q (Haar values)

_FIELD = None


def _field():
    global _FIELD
    if _FIELD is None:
        from sympy import QQ_I, field

        _FIELD = field("q,zeta", QQ_I)
    return _FIELD


def _to_qqi(v: GaussianRational):
    from sympy import QQ, QQ_I

    return QQ_I(QQ(int(v.re.numerator), int(v.re.denominator)),
                QQ(int(v.im.numerator), int(v.im.denominator)))


class RationalValue:
    """Reduced fraction ``num/den`` in ``q`` (and ``zeta`` in the numerator).

    Backed by a sympy fraction field over ``QQ_I``; the denominator is kept
    monic in its leading term.
    """

    __slots__ = ("_f",)

    def __init__(self, f):
        K = _field()[0]
        if not hasattr(f, "numer"):
            f = K(f) if not isinstance(f, GaussianRational) else K(_to_qqi(f))
        lc = f.denom.LC
        if lc != 1:
            f = f.new(f.numer.quo_ground(lc), f.denom.quo_ground(lc))
        self._f = f

    @classmethod
    def from_coeff(cls, c: Coeff) -> "RationalValue":
        K, q, z = _field()
        if not c.terms:
            return cls(K.zero)
        qmin = min(0, min(k[0] for k in c.terms))
        zmin = min(0, min(k[1] for k in c.terms))
        R = K.ring
        num = R({(qe - qmin, ze - zmin): _to_qqi(v) for (qe, ze), v in c.terms.items()})
        den = R({(-qmin, -zmin): R.domain.one})
        return cls(K.new(num, den))

    @classmethod
    def const(cls, c) -> "RationalValue":
        return cls.from_coeff(Coeff.coerce(c))

    @property
    def field_element(self):
        return self._f

    @property
    def numerator(self):
        return self._f.numer

    @property
    def denominator(self):
        return self._f.denom

    def _wrap(self, other):
        if isinstance(other, RationalValue):
            return other._f
        if isinstance(other, Coeff):
            return RationalValue.from_coeff(other)._f
        return RationalValue.const(other)._f

    def __add__(self, other):
        return RationalValue(self._f + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return RationalValue(self._f - self._wrap(other))

    def __rsub__(self, other):
        return RationalValue(self._wrap(other) - self._f)

    def __mul__(self, other):
        return RationalValue(self._f * self._wrap(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RationalValue(self._f / self._wrap(other))

    def __neg__(self):
        return RationalValue(-self._f)

    def __eq__(self, other):
        try:
            return self._f == self._wrap(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self._f)

    def __bool__(self):
        return bool(self._f)

    def is_zero(self) -> bool:
        return not self._f

    def evaluate(self, q, zeta=1):
        """Value at numeric q (float -> complex, exact rational -> GaussianRational)."""
        exact = not isinstance(q, float) and not isinstance(zeta, (float, complex))
        if exact:
            qv = GaussianRational(q)
            zv = zeta if isinstance(zeta, GaussianRational) else GaussianRational(zeta)
            num = _eval_poly_exact(self._f.numer, qv, zv)
            den = _eval_poly_exact(self._f.denom, qv, zv)
            return num / den
        num = _eval_poly_float(self._f.numer, float(q), complex(zeta))
        den = _eval_poly_float(self._f.denom, float(q), complex(zeta))
        return num / den

    def __str__(self):
        from sympy import sstr

        return sstr(self._f.as_expr())

    def __repr__(self):
        return f"RationalValue({self})"


def _eval_poly_exact(p, q: GaussianRational, z: GaussianRational) -> GaussianRational:
    total = ZERO
    for (qe, ze), c in p.terms():
        v = GaussianRational(Fraction(int(c.x.numerator), int(c.x.denominator)),
                             Fraction(int(c.y.numerator), int(c.y.denominator)))
        total = total + v * q**qe * z**ze
    return total


def _eval_poly_float(p, q: float, z: complex) -> complex:
    total = 0j
    for (qe, ze), c in p.terms():
        total += complex(float(c.x), float(c.y)) * q**qe * z**ze
    return total


def mpq_from(x) -> mpq:
    """Exact rational from int / Fraction / float / 'a/b' string."""
    return _q(x)

