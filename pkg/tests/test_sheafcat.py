import pytest

from core.lgroup import WeightType, elements_in_window
from core.sheafcat import (
    K0Class,
    LineDims,
    UnsupportedWeightError,
    basis_labels,
    basis_size,
    delta,
    euler_form,
    k0_class_line,
    line_hom_ext_dims,
    require_three_weights,
    symmetric_form,
)


def test_line_dims(w235):
    assert line_hom_ext_dims(w235, w235.zero, w235.c) == LineDims(2, 0)
    assert line_hom_ext_dims(w235, w235.c, w235.zero) == LineDims(0, 0)
    assert line_hom_ext_dims(w235, w235.zero, w235.omega) == LineDims(0, 1)


def test_basis(w235):
    assert basis_size(w235) == 9
    labels = basis_labels(w235)
    assert labels[0] == "[O]" and labels[-1] == "[O(c)]"
    assert "[O(4*x3)]" in labels


def test_basis_classes_are_unit_vectors(w235):
    size = basis_size(w235)
    assert k0_class_line(w235, w235.zero).coords == (1,) + (0,) * (size - 1)
    assert k0_class_line(w235, w235.c).coords == (0,) * (size - 1) + (1,)
    assert k0_class_line(w235, w235.x(1)).coords[1] == 1


def test_line_classes_have_rank_one(w235):
    for x in elements_in_window(w235, range(-2, 3)):
        assert k0_class_line(w235, x).rank == 1
    assert delta(w235).rank == 0


@pytest.mark.parametrize("weights", [(2, 2, 2), (2, 3, 5), (3, 3, 4), (2, 3)])
def test_euler_form_matches_line_dims(weights):
    w = WeightType(weights)
    window = list(elements_in_window(w, range(-1, 2)))
    for x in window[::3]:
        for y in window[::2]:
            dims = line_hom_ext_dims(w, x, y)
            pairing = euler_form(k0_class_line(w, x), k0_class_line(w, y))
            assert pairing == dims.dim_hom - dims.dim_ext


def test_delta_pairings(w235):
    d = delta(w235)
    for x in (w235.zero, w235.x(2), w235.omega):
        line = k0_class_line(w235, x)
        assert euler_form(line, d) == 1
        assert euler_form(d, line) == -1
    assert euler_form(d, d) == 0
    assert symmetric_form(d, d) == 0


def test_lines_are_exceptional(w222):
    for x in elements_in_window(w222, range(-1, 2)):
        c = k0_class_line(w222, x)
        assert euler_form(c, c) == 1


def test_class_arithmetic(w235):
    a = k0_class_line(w235, w235.x(1))
    b = k0_class_line(w235, w235.x(2))
    assert a + b - b == a
    assert 2 * a == a + a
    assert -a + a == K0Class.zero(w235)
    assert str(K0Class.zero(w235)) == "0"
    assert str(delta(w235)) == "-1*[O] + 1*[O(c)]"


def test_class_length_check(w235):
    with pytest.raises(ValueError):
        K0Class(w235, (1, 2))


def test_require_three_weights():
    require_three_weights(WeightType((2, 3, 5)), "test")
    with pytest.raises(UnsupportedWeightError):
        require_three_weights(WeightType((2, 3)), "test")


@pytest.mark.parametrize("weights", [(2, 2, 2), (2, 3, 5), (2, 3)])
@pytest.mark.parametrize("twist", [(0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, -2), (1, 1, 1, 3)])
def test_line_dims_are_twist_invariant(weights, twist):
    w = WeightType(weights)
    z = w.element(twist[: w.t], twist[-1])
    window = list(elements_in_window(w, range(-2, 3)))
    for x in window[::2]:
        for y in window[::3]:
            assert line_hom_ext_dims(w, x + z, y + z) == line_hom_ext_dims(w, x, y)


def test_line_ext_is_dual_to_hom_into_omega_twist(w235):
    window = list(elements_in_window(w235, range(-2, 3)))
    for x in window[::2]:
        for y in window[::3]:
            ext = line_hom_ext_dims(w235, x, y).dim_ext
            assert ext == line_hom_ext_dims(w235, y, x + w235.omega).dim_hom


def test_line_classes_for_two_weights():
    w = WeightType((2, 3))
    # no third weight: [O(c)] - [O] still has rank zero and [O(x)] rank one
    assert delta(w).rank == 0
    assert k0_class_line(w, w.x(2)).rank == 1
    assert k0_class_line(w, w.c).coords == (0,) * (basis_size(w) - 1) + (1,)
