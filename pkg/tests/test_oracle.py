from fractions import Fraction

import numpy as np
import pytest

from core.errors import PreconditionError
from core.polyring import poly_eval
from core.tubes import ExceptionalIndec
from services import hall, oracle
from services.finite_field import PrimeField
from services.oracle import IsoType, NilpRep


def iso(p, *parts):
    return IsoType(p, tuple(parts))


# --- Finite field ---


def test_prime_field_rref_and_nullspace():
    field = PrimeField(3)
    matrix = np.array([[1, 2, 0], [2, 1, 0]])
    reduced, pivots = field.rref(matrix)
    assert pivots == [0]
    assert reduced.tolist() == [[1, 2, 0]]
    kernel = field.nullspace(matrix, 3)
    assert kernel.shape == (2, 3)
    assert not field.matmul(matrix, kernel.T).any()
    with pytest.raises(ValueError):
        PrimeField(4)


def test_subspace_counts():
    field = PrimeField(2)
    # Gaussian binomials: 1 + 7 + 7 + 1
    assert len(list(field.subspaces(3))) == 16
    assert len(list(PrimeField(3).subspaces(2))) == 1 + 4 + 1


# --- Iso types and representations ---


def test_iso_type_normalizes():
    t = iso(2, (3, 1), (0, 2))
    assert t.parts == ((0, 2), (1, 1))
    assert str(t) == "(0,2)+(1,1)"
    assert str(IsoType.zero(2)) == "0"
    assert t.dimension_vector == (1, 2)
    assert t.total_dim == 3


def test_iso_type_enumeration():
    assert len(oracle.iso_types_up_to(1, 3)) == 7
    by_dim = oracle.iso_types_of_dimension(2, (1, 1))
    assert sorted(str(t) for t in by_dim) == ["(0,1)+(1,1)", "(0,2)", "(1,2)"]


@pytest.mark.parametrize("p", [1, 2, 3])
def test_classify_recovers_canonical_rep(p):
    for t in oracle.iso_types_up_to(p, 4):
        assert oracle.classify(oracle.build_rep(t, 2)) == t


def test_nilpotency_and_scale_guards():
    with pytest.raises(oracle.NotNilpotentError):
        NilpRep(1, 2, (1,), (np.array([[1]]),))
    with pytest.raises(oracle.OracleScaleError):
        oracle.build_rep(iso(1, (0, 7)), 2)
    with pytest.raises(oracle.OracleScaleError):
        oracle.field_of(7)


# --- Hall numbers, automorphisms, homomorphisms ---


def test_jordan_quiver_hall_numbers():
    s = iso(1, (0, 1))
    assert oracle.hall_number(s, s, iso(1, (0, 2)), 2) == 1
    assert oracle.hall_number(s, s, iso(1, (0, 1), (0, 1)), 2) == 3
    assert oracle.hall_number(s, s, iso(1, (0, 1), (0, 1)), 3) == 4
    assert oracle.hall_number(s, s, iso(1, (0, 1)), 2) == 0
    nilpotent = NilpRep(1, 3, (2,), (np.array([[0, 0], [2, 0]]),))
    assert oracle.classify(nilpotent) == iso(1, (0, 2))
    assert oracle.brute_hall(s, s, nilpotent) == 1
    assert oracle.brute_aut(nilpotent) == 6


def test_cyclic_quiver_hall_numbers():
    s0, s1 = iso(2, (0, 1)), iso(2, (1, 1))
    # S_0 sits on top of the length-two module with top S_0
    assert oracle.hall_number(s0, s1, iso(2, (0, 2)), 2) == 1
    assert oracle.hall_number(s1, s0, iso(2, (0, 2)), 2) == 0
    assert oracle.hall_number(s0, s1, s0 + s1, 3) == 1


def test_automorphisms():
    assert oracle.aut_size(iso(1, (0, 1), (0, 1)), 2) == 6
    assert oracle.aut_size(iso(1, (0, 2)), 3) == 6
    assert oracle.aut_size(iso(2, (0, 1)), 3) == 2
    assert oracle.aut_size(iso(2, (0, 1), (1, 1)), 2) == 1


def test_hom_dims_and_monomorphisms():
    rep = oracle.build_rep(iso(1, (0, 2)), 2)
    assert oracle.hom_dim(rep, rep) == 2
    assert oracle.count_monomorphisms(iso(1, (0, 1)), iso(1, (0, 2)), iso(1, (0, 1)), 2) == 1
    assert oracle.count_monomorphisms(iso(1, (0, 1)), iso(1, (0, 1), (0, 1)), iso(1, (0, 1)), 2) == 3


def test_epimorphisms():
    s0, s1 = iso(2, (0, 1)), iso(2, (1, 1))
    # the length-two module with top S_0 maps onto S_0 with kernel S_1
    assert oracle.count_epimorphisms(iso(2, (0, 2)), s0, s1, 3) == 2
    assert oracle.count_epimorphisms(iso(2, (0, 2)), s1, s0, 3) == 0
    assert oracle.count_epimorphisms(iso(1, (0, 1), (0, 1)), iso(1, (0, 1)), iso(1, (0, 1)), 3) == 4 * 2


@pytest.mark.parametrize("q", [2, 3])
def test_extension_census_sums_to_ext_group(q):
    pairs = [(iso(1, (0, 1)), iso(1, (0, 1))), (iso(2, (0, 1)), iso(2, (1, 1))), (iso(2, (1, 2)), iso(2, (0, 1)))]
    for a, b in pairs:
        census = oracle.extension_census(a, b, q)
        assert sum(census.values()) == q ** oracle.tube_dims_between(a, b)[1]
    s = iso(1, (0, 1))
    assert oracle.extension_census(s, s, q) == {s + s: 1, iso(1, (0, 2)): q - 1}
    split, uniserial = iso(2, (0, 1), (1, 1)), iso(2, (1, 2))
    assert oracle.extension_census(iso(2, (1, 1)), iso(2, (0, 1)), q) == {split: 1, uniserial: q - 1}
    # no extensions of S_0 by S_1 in a tube of rank three
    assert oracle.extension_census(iso(3, (0, 1)), iso(3, (1, 1)), q) == {iso(3, (0, 1), (1, 1)): 1}


def test_euler_forms_agree():
    for a in oracle.iso_types_up_to(3, 3):
        for b in oracle.iso_types_up_to(3, 3):
            assert oracle.tube_euler(a, b) == oracle.quiver_euler(3, a.dimension_vector, b.dimension_vector)


# --- Identity checks ---


def test_green_formula_instance():
    s0, s1 = iso(2, (0, 1)), iso(2, (1, 1))
    check = oracle.green_identity_check(s0, s1, s1, s0, 2)
    assert check.holds, check


def test_riedtmann_peng_instance():
    check = oracle.riedtmann_peng_check(iso(2, (0, 1)), iso(2, (1, 1)), 3)
    assert check.holds
    assert check.rhs == 3


def test_associativity_instance():
    s = iso(1, (0, 1))
    assert oracle.associativity_check(s, s, s, iso(1, (0, 2), (0, 1)), 2).holds


# --- Closed points ---


def test_ordinary_point_count():
    assert oracle.ordinary_point_count(1, 5) == 3
    assert oracle.ordinary_point_count(2, 2) == 1
    assert oracle.ordinary_point_count(2, 3) == 3
    assert oracle.ordinary_point_count(3, 2) == 2


def test_s_enumeration_matches_closed_form(w222):
    assert oracle.s_enumerate_at(w222, 2, 0, (), 5) == 87
    assert oracle.s_enumerate_at(w222, 0, 0, (), 5) == Fraction(1, 4)
    sigma = (ExceptionalIndec(1, 0, 1, 2),)
    assert oracle.s_enumerate_at(w222, 1, 1, sigma, 5) == 17
    assert oracle.s_enumerate_at(w222, 1, 1, sigma, 7) == poly_eval(hall.s_poly(1, 1), 7)


def test_s_enumeration_guards(w222):
    with pytest.raises(oracle.OracleScaleError):
        oracle.s_enumerate_at(w222, 9, 0, (), 5)
    with pytest.raises(PreconditionError):
        oracle.s_enumerate_at(w222, 1, 2, (ExceptionalIndec(1, 0, 1, 2),), 5)
    with pytest.raises(PreconditionError):
        oracle.s_enumerate_at(w222, 1, 0, (), 1)
    with pytest.raises(PreconditionError):
        pair = (ExceptionalIndec(1, 0, 1, 2), ExceptionalIndec(1, 1, 1, 2))
        oracle.s_enumerate_at(w222, 1, 2, pair, 5)
