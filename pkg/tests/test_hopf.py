from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qglab.cli.grammar import parse_expression as P
from qglab.core.algebra import (
    Algebra,
    Element,
    Monomial,
    TensorElement,
    adjoint,
    alpha,
    gamma,
    gamma_star,
    multiply,
    one,
    torus_v,
    u_theta,
)
from qglab.core.coeffs import Coeff, GaussianRational, RationalValue
from qglab.core.hopf import (
    antipode,
    circle_coaction,
    conditional_expectation,
    coproduct,
    counit,
    haar_diagonal,
    haar_state,
    invariant_part,
    quotient_to_circle,
    t_degree,
)

from haar_oracle import haar_diagonal_oracle
from hopf_suite import antipode_defects, binary_failures, coassociativity_defect, counit_defects, run_suite
from strategies import elements, exact_q

Q = Coeff.mono(1, 0)
G = Algebra.GQTHETA


def T(*pairs):
    out = None
    for c, x, y in pairs:
        t = TensorElement.from_elements(x, y) * c
        out = t if out is None else out + t
    return out


def test_coproduct_examples():
    assert coproduct(alpha()) == T((1, alpha(), alpha()), (-Q, gamma_star(), gamma()))
    assert coproduct(gamma_star()) == T((1, gamma_star(), P("a*")), (1, alpha(), gamma_star()))
    assert coproduct(u_theta()) == TensorElement.from_elements(u_theta(), u_theta())
    assert coproduct(one()) == TensorElement.from_elements(one(), one())


def test_counit_examples():
    assert counit(one()) == Coeff.const(1)
    assert counit(alpha()) == Coeff.const(1)
    assert counit(gamma()) == Coeff.const(0)
    assert counit(u_theta()) == Coeff.const(1)


def test_antipode_examples():
    assert antipode(one()) == one()
    assert antipode(gamma()) == gamma() * (-Q)
    assert antipode(u_theta()) == u_theta(-1)
    assert antipode(alpha()) == P("a*")
    lhs = TensorElement.from_elements(alpha(), alpha()).map_leg(0, lambda m: antipode(Element(Algebra.SUQ2, {m: 1})))
    assert multiply(P("a*"), alpha()) + multiply(gamma_star(), gamma()) == one()
    assert lhs.contract() == multiply(P("a*"), alpha())


@pytest.mark.parametrize("alg", [Algebra.SUQ2, Algebra.GQTHETA])
def test_axiom_suite_low_degree(alg):
    r = run_suite(alg, degree=2, random_count=20, seed=7)
    assert r["failures"] == []


@pytest.mark.parametrize("alg", [Algebra.SUQ2, Algebra.GQTHETA])
@given(data=st.data())
def test_hopf_axioms_property(alg, data):
    x = data.draw(elements(alg, 2))
    y = data.draw(elements(alg, 2))
    assert not coassociativity_defect(x)
    assert not any(counit_defects(x))
    assert not any(antipode_defects(x))
    assert binary_failures(x, y) == []


@pytest.mark.parametrize("alg", [Algebra.SUQ2, Algebra.GQTHETA])
@given(data=st.data())
def test_antipode_star_identity(alg, data):
    # S(S(x*)*) = x
    x = data.draw(elements(alg, 2))
    assert antipode(adjoint(antipode(adjoint(x)))) == x


def test_suite_detects_a_non_homomorphism():
    # reversed product is not what the coproduct respects
    x, y = alpha(), gamma()
    assert coproduct(multiply(y, x)) != coproduct(x) * coproduct(y)


def test_t_degree_examples():
    assert t_degree(Monomial(0, 1, 1, 0)) == 0
    assert t_degree(Monomial(1, 0, 0, 0)) == 1
    assert t_degree(Monomial(-1, 0, 1, 0)) == -2


def test_invariant_part_examples():
    assert invariant_part(P("g g*")) == P("g g*")
    assert not invariant_part(alpha())
    assert invariant_part(one()) == one()


def test_quotient_examples():
    assert quotient_to_circle(alpha()) == P("z")
    assert not quotient_to_circle(gamma())
    assert quotient_to_circle(one()) == P("1", Algebra.CIRCLE)


@given(x=elements(Algebra.SUQ2, 2), y=elements(Algebra.SUQ2, 2))
def test_quotient_is_multiplicative(x, y):
    assert quotient_to_circle(multiply(x, y)) == multiply(quotient_to_circle(x), quotient_to_circle(y))


@given(x=elements(Algebra.SUQ2, 2))
def test_invariant_part_fixed_by_coaction(x):
    inv = invariant_part(x)
    unit_z = Element(Algebra.CIRCLE, {next(iter(P("1", Algebra.CIRCLE).terms)): 1})
    assert circle_coaction(inv) == TensorElement.from_elements(inv, unit_z)
    assert invariant_part(inv) == inv


def test_haar_examples():
    assert haar_state(one()) == RationalValue.const(1)
    assert haar_state(P("g* g")) == RationalValue.const(1) / RationalValue.from_coeff(1 + Q * Q)
    assert haar_state(alpha()).is_zero()
    assert haar_state(P("g g* u")).is_zero()
    with pytest.raises(ValueError):
        haar_state(torus_v())


@pytest.mark.parametrize("q", [Fraction(1, 3), Fraction(-1, 2), Fraction(5, 7)])
def test_haar_matches_fraction_oracle(q):
    oracle = haar_diagonal_oracle(4, q)
    values = haar_diagonal(4)
    assert [v.evaluate(q) for v in values] == [GaussianRational(o) for o in oracle]


@given(x=elements(Algebra.SUQ2, 2), q=exact_q)
def test_haar_positive(x, q):
    v = haar_state(multiply(adjoint(x), x)).evaluate(q)
    assert v.im == 0 and v.re >= 0


@pytest.mark.parametrize("side", [0, 1])
@given(x=elements(Algebra.SUQ2, 2))
def test_haar_bi_invariance(side, x):
    q = Fraction(1, 3)
    total = {}
    for (m0, m1), c in coproduct(x).terms.items():
        kept, traced = (m1, m0) if side == 0 else (m0, m1)
        hv = haar_state(Element(Algebra.SUQ2, {traced: 1})).evaluate(q)
        if hv:
            total[kept] = total.get(kept, GaussianRational(0)) + hv * c.evaluate_exact(q)
    total = {m: v for m, v in total.items() if v}
    hx = haar_state(x).evaluate(q)
    expected = {Monomial(0, 0, 0, 0): hx} if hx else {}
    assert total == expected


def test_conditional_expectation_examples():
    assert conditional_expectation(P("u^3")) == [(3, RationalValue.const(1))]
    assert conditional_expectation(P("g* g u")) == [(1, RationalValue.const(1) / RationalValue.from_coeff(1 + Q * Q))]
    assert conditional_expectation(P("a", G)) == []
    with pytest.raises(ValueError):
        conditional_expectation(alpha())


@given(x=elements(G, 2), y=elements(G, 2))
def test_conditional_expectation_linear(x, y):
    def as_dict(parts):
        return {l: v for l, v in parts}

    ex, ey, exy = as_dict(conditional_expectation(x)), as_dict(conditional_expectation(y)), as_dict(conditional_expectation(x + y))
    for l in set(ex) | set(ey) | set(exy):
        zero = RationalValue.const(0)
        assert exy.get(l, zero) == ex.get(l, zero) + ey.get(l, zero)
