"""Exact Hopf *-algebra axiom checks shared by the unit and acceptance tests."""
from __future__ import annotations

from qglab.core.algebra import (
    Algebra,
    Element,
    adjoint,
    alpha,
    alpha_star,
    gamma,
    gamma_star,
    multiply,
    one,
    u_theta,
)
from qglab.core.hopf import antipode, coproduct, coproduct_monomial, counit
from qglab.core.sampling import monomials_up_to, random_element

import numpy as np


def _unit(alg):
    (m,) = one(alg).terms
    return m


def coassociativity_defect(x: Element):
    d = coproduct(x)
    left = d.map_leg(0, lambda m: coproduct_monomial(x.algebra, m))
    right = d.map_leg(1, lambda m: coproduct_monomial(x.algebra, m))
    return left - right


def counit_defects(x: Element):
    alg = x.algebra
    u = _unit(alg)
    d = coproduct(x)

    def eps(m):
        return Element(alg, {u: counit(Element(alg, {m: 1}))})

    left = d.map_leg(0, eps).contract()
    right = d.map_leg(1, eps).contract()
    return left - x, right - x


def antipode_defects(x: Element):
    alg = x.algebra
    d = coproduct(x)
    target = one(alg) * counit(x)

    def S(m):
        return antipode(Element(alg, {m: 1}))

    left = d.map_leg(0, S).contract()
    right = d.map_leg(1, S).contract()
    return left - target, right - target


def multiplicativity_defect(x: Element, y: Element):
    return coproduct(multiply(x, y)) - coproduct(x) * coproduct(y)


def star_defects(x: Element, y: Element):
    anti = adjoint(multiply(x, y)) - multiply(adjoint(y), adjoint(x))
    delta_star = coproduct(adjoint(x)) - coproduct(x).adjoint()
    return anti, delta_star


def generators(alg):
    gens = [alpha(alg), alpha_star(alg), gamma(alg), gamma_star(alg)]
    if alg is Algebra.GQTHETA:
        gens += [u_theta(1), u_theta(-1)]
    return gens


def unary_failures(x: Element) -> list:
    bad = []
    if coassociativity_defect(x):
        bad.append("coassociativity")
    if any(counit_defects(x)):
        bad.append("counit")
    if any(antipode_defects(x)):
        bad.append("antipode")
    return bad


def binary_failures(x: Element, y: Element) -> list:
    bad = []
    if multiplicativity_defect(x, y):
        bad.append("multiplicativity")
    if any(star_defects(x, y)):
        bad.append("star")
    return bad


def run_suite(alg, degree: int = 4, random_count: int = 200, seed: int = 0) -> dict:
    """Counts of checked items and a list of (label, failures)."""
    monos = [Element(alg, {m: 1}) for m in monomials_up_to(alg, degree)]
    rng = np.random.default_rng(seed)
    rand = []
    while len(rand) < random_count:
        x = random_element(rng, alg, 4, 3, q_powers=True)
        if x:
            rand.append(x)
    failures = []
    gens = generators(alg)
    for x in monos + rand:
        bad = unary_failures(x)
        if bad:
            failures.append((str(x), bad))
    for x in monos:
        for g in gens:
            bad = binary_failures(x, g)
            if bad:
                failures.append((f"{x} | {g}", bad))
    for x, y in zip(rand, rand[1:] + rand[:1]):
        bad = binary_failures(x, y)
        if bad:
            failures.append((f"{x} | {y}", bad))
    return {"monomials": len(monos), "random": len(rand), "failures": failures}
