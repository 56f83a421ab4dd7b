"""Seeded random elements for property tests and experiment suites."""
from __future__ import annotations

import numpy as np

from .algebra import Algebra, Element, Monomial, TorusMonomial
from .coeffs import Coeff, GaussianRational

__all__ = ["COEFF_CHOICES", "random_monomial", "random_element", "random_suite", "monomials_up_to"]

COEFF_CHOICES = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(1) / 2,
    GaussianRational(-1) / 2,
)


def monomials_up_to(algebra, degree: int) -> list:
    """All normal monomials of total degree <= ``degree`` in a fixed order."""
    alg = Algebra(algebra)
    out = []
    if alg in (Algebra.TORUS, Algebra.CIRCLE):
        for a in range(-degree, degree + 1):
            for b in range(-degree, degree + 1):
                if abs(a) + abs(b) <= degree:
                    out.append(TorusMonomial(a, b))
        return out
    urange = range(-degree, degree + 1) if alg is Algebra.GQTHETA else (0,)
    for a in range(-degree, degree + 1):
        for g in range(degree + 1):
            for gs in range(degree + 1):
                for u in urange:
                    m = Monomial(a, g, gs, u)
                    if m.degree <= degree:
                        out.append(m)
    return out


def random_monomial(rng: np.random.Generator, algebra, max_degree: int):
    pool = monomials_up_to(algebra, max_degree)
    return pool[int(rng.integers(len(pool)))]


def random_element(
    rng: np.random.Generator,
    algebra=Algebra.SUQ2,
    max_terms: int = 4,
    max_degree: int = 3,
    coeffs=COEFF_CHOICES,
    q_powers: bool = False,
) -> Element:
    """Sum of 1..max_terms random monomials with coefficients drawn from ``coeffs``.

    With ``q_powers`` the coefficients also carry a random q^e, e in [-2, 2].
    """
    alg = Algebra(algebra)
    pool = monomials_up_to(alg, max_degree)
    n = int(rng.integers(1, max_terms + 1))
    terms: dict = {}
    for _ in range(n):
        m = pool[int(rng.integers(len(pool)))]
        c = Coeff.const(coeffs[int(rng.integers(len(coeffs)))])
        if q_powers:
            c = c * Coeff.mono(int(rng.integers(-2, 3)), 0)
        terms[m] = terms[m] + c if m in terms else c
    return Element(alg, terms)


def random_suite(seed: int, count: int, algebra=Algebra.GQTHETA, max_terms: int = 4, max_degree: int = 3) -> list:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        x = random_element(rng, algebra, max_terms, max_degree)
        if x:
            out.append(x)
    return out
