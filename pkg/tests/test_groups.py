import json

import pytest

import semicayley as sc
from semicayley import AbelianGroup, ValidationError

from conftest import GROUP_POOL


def test_mul_examples():
    z4 = AbelianGroup([4])
    assert z4.mul((1,), (3,)) == (0,)
    z23 = AbelianGroup([2, 3])
    assert z23.mul((1, 2), (1, 2)) == (0, 1)


def test_identity_law(rng):
    for factors in GROUP_POOL:
        group = AbelianGroup(factors)
        for _ in range(5):
            x = group.element(int(rng.integers(group.order)))
            assert group.mul(group.identity, x) == x
            assert group.mul(x, group.identity) == x


def test_inverse_and_order():
    assert AbelianGroup([4]).element_order((2,)) == 2
    assert AbelianGroup([6]).element_order((1,)) == 6
    assert AbelianGroup([2, 3]).element_order((1, 1)) == 6
    z4 = AbelianGroup([4])
    assert z4.mul((3,), z4.inverse((3,))) == (0,)


def test_inverse_closed_examples():
    z5 = AbelianGroup([5])
    assert z5.is_inverse_closed([(1,), (4,)])
    assert not z5.is_inverse_closed([(1,)])
    assert z5.is_inverse_closed([])


def test_group_axioms_random(rng):
    for _ in range(30):
        factors = GROUP_POOL[int(rng.integers(len(GROUP_POOL)))]
        group = AbelianGroup(factors)
        a, b, c = (group.element(int(rng.integers(group.order))) for _ in range(3))
        assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))
        assert group.mul(a, group.inverse(a)) == group.identity
        assert group.mul(a, b) == group.mul(b, a)


def test_enumeration_bijection():
    for factors in GROUP_POOL:
        group = AbelianGroup(factors)
        assert len(group.elements()) == group.order
        for i in range(group.order):
            assert group.index(group.element(i)) == i


def test_order_divides_exponent():
    for factors in GROUP_POOL:
        group = AbelianGroup(factors)
        for g in group.elements():
            assert group.exponent % group.element_order(g) == 0


def test_trivial_factor_allowed():
    group = AbelianGroup([1, 3, 1])
    assert group.order == 3
    assert group.exponent == 3
    assert group.mul((0, 2, 0), (0, 2, 0)) == (0, 1, 0)


def test_validation_errors():
    with pytest.raises(ValidationError):
        AbelianGroup([])
    with pytest.raises(ValidationError):
        AbelianGroup([0, 2])
    group = AbelianGroup([2, 3])
    with pytest.raises(ValidationError):
        group.mul((1,), (0, 0))
    with pytest.raises(ValidationError):
        group.validate_element((2, 0))


def test_json_round_trip():
    group = AbelianGroup([2, 6])
    again = AbelianGroup.from_json(json.loads(json.dumps(group.to_json())))
    assert again == group
    xs = group.subset([(1, 5), (0, 3)])
    dumped = sc.groups.subset_to_json(xs)
    assert group.subset(dumped) == xs
    assert dumped == sorted(dumped)
