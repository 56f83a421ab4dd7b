"""Hypothesis strategies for normal-form elements."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from qglab.core.algebra import Algebra, Element, Monomial, TorusMonomial
from qglab.core.coeffs import Coeff, GaussianRational

small_rational = st.fractions(min_value=-3, max_value=3, max_denominator=4)
gaussian = st.builds(GaussianRational, small_rational, small_rational)


@st.composite
def coeffs(draw, zeta: bool = False):
    n = draw(st.integers(1, 2))
    terms = {}
    for _ in range(n):
        key = (draw(st.integers(-2, 2)), draw(st.integers(-1, 1)) if zeta else 0)
        terms[key] = draw(gaussian)
    return Coeff(terms)


def monomials(alg: Algebra, bound: int = 2):
    if alg in (Algebra.TORUS, Algebra.CIRCLE):
        return st.builds(TorusMonomial, st.integers(-bound, bound), st.integers(-bound, bound))
    u = st.integers(-bound, bound) if alg is Algebra.GQTHETA else st.just(0)
    return st.builds(Monomial, st.integers(-bound, bound), st.integers(0, bound), st.integers(0, bound), u)


@st.composite
def elements(draw, alg: Algebra = Algebra.SUQ2, max_terms: int = 3, bound: int = 2):
    zeta = alg in (Algebra.GQTHETA, Algebra.TORUS)
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(monomials(alg, bound))] = draw(coeffs(zeta))
    return Element(alg, terms)


exact_q = st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(9, 10), max_denominator=12).filter(lambda q: q != 0)
