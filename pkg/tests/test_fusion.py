from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qglab.fusion import (
    CapExceeded,
    Finite,
    closure_is_sound,
    conjugate_label,
    local_finiteness_check,
    make_fusion_ring,
    parse_label,
    tensor_decompose,
)

SU2 = make_fusion_ring("su2spin")
INTS = make_fusion_ring("integers")
PROD = make_fusion_ring("productSu2Int")


def test_tensor_examples():
    assert tensor_decompose(INTS, 2, 3) == Counter([5])
    assert tensor_decompose(make_fusion_ring("cyclic", 5), 3, 4) == Counter([2])
    assert tensor_decompose(SU2, 1, 1) == Counter([0, 2])
    assert tensor_decompose(SU2, 2, 1) == Counter([1, 3])
    assert tensor_decompose(PROD, (1, 5), (1, -5)) == Counter([(0, 0), (2, 0)])


def test_conjugates():
    assert conjugate_label(INTS, 3) == -3
    assert conjugate_label(SU2, 4) == 4
    assert conjugate_label(PROD, (1, 4)) == (1, -4)


def test_invalid_labels_and_kinds():
    with pytest.raises(ValueError):
        tensor_decompose(SU2, -1, 0)
    with pytest.raises(ValueError):
        make_fusion_ring("cyclic", 0)
    with pytest.raises(ValueError):
        make_fusion_ring("E8")


@given(a=st.integers(0, 20), b=st.integers(0, 20))
def test_su2_dimension_count(a, b):
    dims = sum((c + 1) * m for c, m in SU2.tensor(a, b).items())
    assert dims == (a + 1) * (b + 1)


@given(a=st.integers(0, 8), b=st.integers(0, 8), c=st.integers(0, 8))
def test_su2_associative(a, b, c):
    def mult(x: Counter, y) -> Counter:
        out = Counter()
        for k, m in x.items():
            for r, n in SU2.tensor(k, y).items():
                out[r] += m * n
        return out

    left = mult(SU2.tensor(a, b), c)
    right = Counter()
    for k, m in SU2.tensor(b, c).items():
        for r, n in SU2.tensor(a, k).items():
            right[r] += m * n
    assert left == right


@pytest.mark.parametrize("ring,label", [(SU2, 3), (INTS, -2), (PROD, (2, 3)), (make_fusion_ring("cyclic", 7), 4)])
def test_unit_and_conjugate_axioms(ring, label):
    assert ring.tensor(ring.unit, label) == Counter([label])
    assert ring.unit in ring.tensor(label, ring.conjugate(label))


def test_local_finiteness_examples():
    r = local_finiteness_check(make_fusion_ring("cyclic", 6), [2])
    assert isinstance(r, Finite) and r.labels == [0, 2, 4] and r.sound
    p = local_finiteness_check(PROD, [(0, 1)], 10_000)
    assert isinstance(p, CapExceeded) and p.strictly_growing
    s = local_finiteness_check(SU2, [1], 10_000)
    assert isinstance(s, CapExceeded) and s.strictly_growing


@given(n=st.integers(1, 30), gens=st.lists(st.integers(0, 29), min_size=1, max_size=3))
def test_cyclic_closure_is_subgroup(n, gens):
    import math

    ring = make_fusion_ring("cyclic", n)
    gens = [g % n for g in gens]
    r = local_finiteness_check(ring, gens)
    d = math.gcd(n, *gens)
    assert isinstance(r, Finite) and r.sound
    assert r.labels == list(range(0, n, d))


def test_soundness_checker_rejects_non_closed_sets():
    assert not closure_is_sound(make_fusion_ring("cyclic", 6), [0, 2])
    assert not closure_is_sound(SU2, [0, 1])
    assert closure_is_sound(SU2, [0])


def test_empty_generators_and_cap():
    with pytest.raises(ValueError):
        local_finiteness_check(SU2, [])
    with pytest.raises(ValueError):
        local_finiteness_check(SU2, [1, 2, 3], cap=2)


def test_parse_label():
    assert parse_label(PROD, "(0, 1)") == (0, 1)
    assert parse_label(INTS, " -4 ") == -4
    with pytest.raises(ValueError):
        parse_label(SU2, "-1")
