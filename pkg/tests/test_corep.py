from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qglab.core.algebra import Algebra, alpha, gamma, gamma_star, multiply, one, u_theta
from qglab.core.coeffs import Coeff, GaussianRational
from qglab.core.corep import (
    CorepMatrix,
    FiniteDimRep,
    character,
    commuting_unitary_rep,
    cor24_check,
    cor24_symbolic_sum,
    corep_check,
    fundamental_corep,
    group_like_corep,
    tensor_corep,
)

Q = Coeff.mono(1, 0)
G = Algebra.GQTHETA


def pythagorean(m, n):
    d = m * m + n * n
    return GaussianRational(Fraction(m * m - n * n, d), Fraction(2 * m * n, d))


pairs = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda p: p != (0, 0))
unit_gaussian = pairs.map(lambda p: pythagorean(*p)) | st.sampled_from(
    [GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1)]
)


def test_fundamental_is_unitary_corep():
    assert corep_check(fundamental_corep()).ok
    assert corep_check(fundamental_corep(G)).ok


def test_group_like():
    assert corep_check(group_like_corep()).ok
    assert corep_check(group_like_corep(-3)).ok


def test_alpha_alone_is_not_a_corep():
    res = corep_check(CorepMatrix(((alpha(),),)))
    assert not res.ok
    assert res.coproduct_defects == [(0, 0)]


def test_tensor_products():
    uu = tensor_corep(group_like_corep(), group_like_corep())
    assert uu.entries == ((u_theta(2),),)
    F = fundamental_corep(G)
    assert tensor_corep(F, F).dim == 4
    FU = tensor_corep(F, group_like_corep())
    assert FU[1, 0] == multiply(gamma(G), u_theta())
    assert corep_check(FU).ok
    assert corep_check(tensor_corep(F, F)).ok


def test_tensor_requires_matching_tags():
    with pytest.raises(ValueError):
        tensor_corep(fundamental_corep(), group_like_corep())


def test_character_values():
    chi = character(1, 1)
    assert chi.evaluate(alpha(G))[0, 0] == GaussianRational(1)
    assert chi.evaluate(gamma(G))[0, 0] == GaussianRational(0)
    chi = character(GaussianRational(0, 1), -1)
    assert chi.evaluate(u_theta())[0, 0] == GaussianRational(-1)


def test_character_requires_unimodular():
    with pytest.raises(ValueError):
        character(GaussianRational(Fraction(1, 2)), 1)


def test_invalid_rep_rejected():
    with pytest.raises(ValueError):
        FiniteDimRep(Algebra.SUQ2, alpha=np.array([[2.0 + 0j]]), gamma=np.zeros((1, 1), complex), exact=False)


@given(z=unit_gaussian, w=unit_gaussian)
def test_cor24_exact_for_every_character(z, w):
    res = cor24_check(character(z, w), fundamental_corep(G))
    assert res.ok and res.max_defect == 0.0


def test_cor24_group_like_gives_one():
    res = cor24_check(character(GaussianRational(0, 1), GaussianRational(0, -1)), group_like_corep())
    assert res.ok and res.table[0][0][0, 0] == GaussianRational(1)


def test_cor24_float_commuting_unitaries():
    rng = np.random.default_rng(1)
    Z = np.diag(np.exp(2j * np.pi * rng.random(4)))
    W = np.diag(np.exp(2j * np.pi * rng.random(4)))
    res = cor24_check(commuting_unitary_rep(Z, W), fundamental_corep(G))
    assert res.ok and res.max_defect < 1e-14


def test_symbolic_sum_is_not_one():
    s = cor24_symbolic_sum(fundamental_corep(G), 0, 0)
    assert s == one(G) + multiply(gamma_star(G), gamma(G)) * (Q * Q - 1)
    assert s != one(G)
