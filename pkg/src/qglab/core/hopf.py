"""Hopf *-structure, Haar state, conditional expectation and the circle quotient."""
from __future__ import annotations

from functools import lru_cache

from .algebra import (
    Algebra,
    Element,
    Monomial,
    TensorElement,
    TorusMonomial,
    multiply,
)
from .coeffs import COEFF_ONE, COEFF_ZERO, Coeff, RationalValue

__all__ = [
    "coproduct",
    "coproduct_monomial",
    "counit",
    "antipode",
    "t_degree",
    "invariant_part",
    "quotient_to_circle",
    "haar_state",
    "haar_diagonal",
    "conditional_expectation",
    "HaarSystemError",
]

_QUANTUM = (Algebra.SUQ2, Algebra.GQTHETA)


class HaarSystemError(RuntimeError):
    """The invariance system did not have the expected one-dimensional kernel."""


def _require_quantum(x: Element, what: str) -> None:
    if x.algebra not in _QUANTUM:
        raise ValueError(f"{what} is not defined on {x.algebra.value}")


def _mono_tensor(alg, pairs) -> TensorElement:
    return TensorElement._raw((alg, alg), {k: v for k, v in pairs if v})


@lru_cache(maxsize=None)
def _generator_coproduct(alg: Algebra, gen: Monomial) -> TensorElement:
    q = Coeff.mono(1, 0)
    A, As = Monomial(1), Monomial(-1)
    G, Gs = Monomial(0, 1), Monomial(0, 0, 1)
    if gen == A:  # alpha (x) alpha - q gamma* (x) gamma
        return _mono_tensor(alg, [((A, A), COEFF_ONE), ((Gs, G), -q)])
    if gen == As:  # alpha* (x) alpha* - q gamma (x) gamma*
        return _mono_tensor(alg, [((As, As), COEFF_ONE), ((G, Gs), -q)])
    if gen == G:  # gamma (x) alpha + alpha* (x) gamma
        return _mono_tensor(alg, [((G, A), COEFF_ONE), ((As, G), COEFF_ONE)])
    if gen == Gs:  # gamma* (x) alpha* + alpha (x) gamma*
        return _mono_tensor(alg, [((Gs, As), COEFF_ONE), ((A, Gs), COEFF_ONE)])
    if gen.a == 0 and gen.g == 0 and gen.gs == 0 and abs(gen.u) == 1:
        return _mono_tensor(alg, [((gen, gen), COEFF_ONE)])
    raise ValueError(f"not a generator: {gen}")


def _first_generator(m: Monomial):
    """Split a normal monomial as (generator, rest) with generator * rest == m."""
    if m.a:
        s = 1 if m.a > 0 else -1
        return Monomial(s), Monomial(m.a - s, m.g, m.gs, m.u)
    if m.g:
        return Monomial(0, 1), Monomial(0, m.g - 1, m.gs, m.u)
    if m.gs:
        return Monomial(0, 0, 1), Monomial(0, 0, m.gs - 1, m.u)
    if m.u:
        s = 1 if m.u > 0 else -1
        return Monomial(0, 0, 0, s), Monomial(0, 0, 0, m.u - s)
    return None, None


@lru_cache(maxsize=1 << 14)
def coproduct_monomial(alg: Algebra, m: Monomial) -> TensorElement:
    gen, rest = _first_generator(m)
    if gen is None:
        return _mono_tensor(alg, [((m, m), COEFF_ONE)])
    return _generator_coproduct(alg, gen) * coproduct_monomial(alg, rest)


def coproduct(x: Element) -> TensorElement:
    """Comultiplication into the algebraic tensor square."""
    _require_quantum(x, "the coproduct")
    out: dict = {}
    for m, c in x.terms.items():
        for key, v in coproduct_monomial(x.algebra, m).terms.items():
            p = c * v
            s = out.get(key)
            out[key] = p if s is None else s + p
    return TensorElement._raw((x.algebra, x.algebra), {k: v for k, v in out.items() if v})


def counit(x: Element) -> Coeff:
    """epsilon(alpha) = epsilon(u) = 1, epsilon(gamma) = 0."""
    _require_quantum(x, "the counit")
    total = COEFF_ZERO
    for m, c in x.terms.items():
        if m.g == 0 and m.gs == 0:
            total = total + c
    return total


@lru_cache(maxsize=1 << 14)
def _antipode_monomial(alg: Algebra, m: Monomial) -> Element:
    # S is anti-multiplicative: S(alpha^a g^m g*^n u^l) = u^-l S(g*)^n S(g)^m alpha*^a
    q = Coeff.mono(1, 0)
    out = Element._raw(alg, {Monomial(0, 0, 0, -m.u): COEFF_ONE})
    for _ in range(m.gs):
        out = multiply(out, Element._raw(alg, {Monomial(0, 0, 1): -Coeff.mono(-1, 0)}))
    for _ in range(m.g):
        out = multiply(out, Element._raw(alg, {Monomial(0, 1): -q}))
    return multiply(out, Element._raw(alg, {Monomial(-m.a): COEFF_ONE}))


def antipode(x: Element) -> Element:
    """S(alpha) = alpha*, S(gamma) = -q gamma, S(gamma*) = -q^-1 gamma*, S(u) = u*."""
    _require_quantum(x, "the antipode")
    out: dict = {}
    for m, c in x.terms.items():
        for mm, v in _antipode_monomial(x.algebra, m).terms.items():
            p = c * v
            s = out.get(mm)
            out[mm] = p if s is None else s + p
    return Element._raw(x.algebra, {k: v for k, v in out.items() if v})


def t_degree(m: Monomial) -> int:
    """Degree for the circle coaction: alpha -> 1, gamma -> 1, gamma* -> -1."""
    return m.a + m.g - m.gs


def invariant_part(x: Element) -> Element:
    """Projection onto Pol(SU_q(2)/T): keeps the t-degree-zero monomials."""
    if x.algebra is not Algebra.SUQ2:
        raise ValueError("invariant_part expects an SUq2 element")
    return Element._raw(x.algebra, {m: c for m, c in x.terms.items() if t_degree(m) == 0})


def _quotient_monomial(m: Monomial) -> Element:
    if m.g or m.gs:
        return Element._raw(Algebra.CIRCLE, {})
    return Element._raw(Algebra.CIRCLE, {TorusMonomial(m.a, m.u): COEFF_ONE})


def quotient_to_circle(x: Element) -> Element:
    """*-homomorphism alpha -> z, gamma -> 0, u -> u onto the commutative circle algebra."""
    _require_quantum(x, "the circle quotient")
    out: dict = {}
    for m, c in x.terms.items():
        if m.g or m.gs:
            continue
        key = TorusMonomial(m.a, m.u)
        s = out.get(key)
        out[key] = c if s is None else s + c
    return Element._raw(Algebra.CIRCLE, {k: v for k, v in out.items() if v})


def circle_coaction(x: Element) -> TensorElement:
    """(id (x) quotient_to_circle) applied to the coproduct of x."""
    return coproduct(x).map_leg(1, _quotient_monomial, new_algebras=(x.algebra, Algebra.CIRCLE))


# ---------------------------------------------------------------------------
# Haar state


def _is_diagonal(m: Monomial) -> bool:
    return m.a == 0 and m.u == 0 and m.g == m.gs


def _invariance_rows(J: int) -> list[dict]:
    """Both invariance identities on span{P^0..P^J}, P = gamma gamma*.

    Each row maps unknown index j (h(P^j)) to its Coeff; rows are the
    coefficients of one output monomial.
    """
    rows: list[dict] = []
    for k in range(J + 1):
        delta = coproduct_monomial(Algebra.SUQ2, Monomial(0, k, k, 0)).terms
        for side in (0, 1):
            eqs: dict = {}
            for key, c in delta.items():
                evaluated, remaining = key[side], key[1 - side]
                if not _is_diagonal(evaluated):
                    continue
                row = eqs.setdefault(remaining, {})
                j = evaluated.g
                row[j] = row.get(j, COEFF_ZERO) + c
            unit = eqs.setdefault(Monomial(), {})
            unit[k] = unit.get(k, COEFF_ZERO) - COEFF_ONE
            for row in eqs.values():
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def _solve_normalized(rows: list[dict], n: int) -> list:
    """Kernel of the homogeneous system, normalised so that the first unknown is 1.

    Rows are homogeneous, so each is scaled by a power of q (and zeta) to
    polynomial entries; fraction-free (Bareiss) elimination then runs in the
    polynomial ring and only the final back substitution touches fractions.
    """
    K = RationalValue.const(0).field_element.field
    R = K.ring
    mat = []
    for row in rows:
        qmin = min(0, min(k[0] for c in row.values() for k in c.terms))
        zmin = min(0, min(k[1] for c in row.values() for k in c.terms))
        shift = Coeff.mono(-qmin, -zmin)
        entries = [R.zero] * n
        for j, c in row.items():
            entries[j] = RationalValue.from_coeff(c * shift).field_element.numer
        mat.append(entries)
    pivots = []
    r = 0
    prev = R.one
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][col]
        for i in range(r + 1, len(mat)):
            a = mat[i][col]
            mat[i] = [(p * x - a * y).exquo(prev) for x, y in zip(mat[i], mat[r])]
        prev = p
        pivots.append(col)
        r += 1
    if r != n - 1:
        raise HaarSystemError(f"invariance system has rank {r}, expected {n - 1}")
    free = next(c for c in range(n) if c not in pivots)
    sol = [K.zero] * n
    sol[free] = K.one
    for i in reversed(range(r)):
        col = pivots[i]
        acc = K.zero
        for j in range(col + 1, n):
            if mat[i][j] and sol[j]:
                acc += K(mat[i][j]) * sol[j]
        sol[col] = -acc / K(mat[i][col])
    if not sol[0]:
        raise HaarSystemError("kernel vector vanishes on the unit")
    norm = sol[0]
    return [RationalValue(v / norm) for v in sol]


@lru_cache(maxsize=None)
def haar_diagonal(J: int) -> tuple:
    """(h(1), h(P), ..., h(P^J)) from the invariance linear system."""
    if J == 0:
        return (RationalValue.const(1),)
    return tuple(_solve_normalized(_invariance_rows(J), J + 1))


def haar_state(x: Element) -> RationalValue:
    """Haar state; only diagonal monomials (gamma gamma*)^j survive.

    Off-diagonal monomials have nonzero degree for one of the two gradings
    respected by the coproduct, which forces their Haar value to vanish.
    """
    _require_quantum(x, "the Haar state")
    support = [(m.g, c) for m, c in x.terms.items() if _is_diagonal(m)]
    if not support:
        return RationalValue.const(0)
    values = haar_diagonal(max(j for j, _ in support))
    total = RationalValue.const(0)
    for j, c in support:
        total = total + values[j] * RationalValue.from_coeff(c)
    return total


def conditional_expectation(x: Element) -> list:
    """E(sum_l a_l u^l) = sum_l h(a_l) u^l as a sorted list of (l, value)."""
    if x.algebra is not Algebra.GQTHETA:
        raise ValueError("conditional_expectation expects a GqTheta element")
    by_power: dict = {}
    for m, c in x.terms.items():
        by_power.setdefault(m.u, {})[Monomial(m.a, m.g, m.gs, 0)] = c
    out = []
    for l in sorted(by_power):
        val = haar_state(Element._raw(Algebra.GQTHETA, by_power[l]))
        if not val.is_zero():
            out.append((l, val))
    return out
