import pytest

from core.lgroup import (
    LElement,
    WeightMismatchError,
    WeightType,
    WeightTypeError,
    elements_in_window,
    leq,
    normal_form,
    parse_lelement,
)


def test_weight_type_validation():
    assert WeightType.of(2, 3, 5).t == 3
    with pytest.raises(WeightTypeError):
        WeightType((3,))
    with pytest.raises(WeightTypeError):
        WeightType((1, 2, 3))


def test_relations_collapse_to_c(w235):
    for i in range(1, 4):
        assert w235.x(i, w235.p(i)) == w235.c
    assert normal_form(w235, [2, 3, 5], 0) == LElement(w235, (0, 0, 0), 3)


def test_omega(w235, w222):
    assert str(w235.omega) == "1,2,4;-2"
    assert str(w222.omega) == "1,1,1;-2"
    assert str(WeightType((2, 3, 4, 5)).omega) == "1,2,3,4;-2"


def test_normal_form_negative(w235):
    assert str(normal_form(w235, [-1, -1, -1], 1)) == "1,2,4;-2"
    assert str(normal_form(w235, [7, -4, 11], -1)) == "1,2,1;2"


def test_group_operations(w235):
    x = w235.element([1, 2, 3], 1)
    y = w235.element([1, 1, 4], -2)
    assert x + y - y == x
    assert x - x == w235.zero
    assert -x + x == w235.zero
    assert w235.x(1).scaled(2) == w235.c


def test_weight_mismatch(w222, w235):
    with pytest.raises(WeightMismatchError):
        w222.zero + w235.zero
    with pytest.raises(WeightMismatchError):
        normal_form(w222, [1, 1])


def test_partial_order(w235):
    assert leq(w235.zero, w235.x(1))
    assert not leq(w235.x(1), w235.zero)
    assert w235.c.is_effective
    assert not w235.omega.is_effective


def test_elements_in_window(w222):
    window = list(elements_in_window(w222, range(0, 2)))
    assert len(window) == 16
    assert len(set(window)) == 16


def test_parse(w235):
    assert parse_lelement(w235, "3,0,0;0") == LElement(w235, (1, 0, 0), 1)
    assert parse_lelement(w235, " 0,0,0;-1 ") == w235.c.scaled(-1)
    for bad in ("1,2", "a,0,0;0", "0,0;0"):
        with pytest.raises((ValueError, WeightMismatchError)):
            parse_lelement(w235, bad)


def test_index_bounds(w235):
    with pytest.raises(IndexError):
        w235.p(4)
    with pytest.raises(IndexError):
        w235.x(0)
