from dataclasses import replace
from fractions import Fraction

import pytest

from core.errors import PreconditionError, UnsupportedError
from core.extbundle import ExtensionBundle
from core.lgroup import WeightType
from core.polyring import ONE, Q
from core.tubes import ExceptionalIndec, HomogeneousIndec, TorsionSheaf
from services import hall
from services.oracle import IsoType
from services.quiverside import (
    QuiverCase,
    QuiverFamily,
    QuiverFamilyError,
    QuiverHallCase,
    QuiverKind,
    derived_rotation_at,
    derived_rotation_check,
    quiver_hall,
    weight_of_type,
)

D4 = QuiverFamily(QuiverKind.D, (4,))
E6 = QuiverFamily(QuiverKind.E6)


def case(tag, family=D4, **data):
    return QuiverHallCase(case=QuiverCase(tag), family=family, **data)


def test_weight_of_type():
    assert weight_of_type(QuiverFamily(QuiverKind.A, (2, 3))) == WeightType((2, 3))
    assert weight_of_type(QuiverFamily(QuiverKind.D, (5,))) == WeightType((2, 2, 3))
    assert weight_of_type(D4) == WeightType((2, 2, 2))
    assert weight_of_type(E6) == WeightType((2, 3, 3))
    assert weight_of_type(QuiverFamily(QuiverKind.E7)) == WeightType((2, 3, 4))
    assert weight_of_type(QuiverFamily(QuiverKind.E8)) == WeightType((2, 3, 5))
    assert str(QuiverFamily(QuiverKind.A, (2, 3))) == "A~:2,3"


def test_family_validation():
    with pytest.raises(QuiverFamilyError):
        QuiverFamily(QuiverKind.D, (3,))
    with pytest.raises(QuiverFamilyError):
        QuiverFamily(QuiverKind.A, (2,))
    with pytest.raises(QuiverFamilyError):
        QuiverFamily(QuiverKind.E6, (1,))
    with pytest.raises(UnsupportedError):
        weight_of_type(QuiverFamily(QuiverKind.A, (1, 3)))


def test_case_flags():
    assert QuiverCase.PREINJ_IP.preinjective
    assert not QuiverCase.EXT_LINES.preinjective
    assert QuiverCase.EXT_HOMOG.needs_defect_two
    assert not QuiverCase.LINE_TORSION.needs_defect_two


# --- Preprojective middle terms ---


def test_line_torsion_case(w222):
    result = quiver_hall(
        case("line-torsion", line=w222.zero, line_mid=w222.x(1), torsion=TorsionSheaf.of(ExceptionalIndec(1, 1, 1, 2)))
    )
    assert result == ONE


def test_split_cases(w222, w235):
    s = ExceptionalIndec(1, 0, 1, 2)
    assert quiver_hall(case("split-middle", line=w222.zero, line_mid=w222.zero, s_quot=s, s_mid=s)) == Q
    long = ExceptionalIndec(1, 1, 2, 2)
    e8 = QuiverFamily(QuiverKind.E8)
    result = quiver_hall(case("split-both", family=e8, line=w235.zero, line_mid=w235.x(1), s_mid=s, s_quot=long))
    assert result == Q - 1


def test_defect_two_cases(w222):
    e = ExtensionBundle(w222.zero, w222.zero)
    tau_e = ExtensionBundle(w222.omega, w222.zero)
    assert quiver_hall(case("ext-lines", family=E6, n=2)) == hall.f_poly(2)
    assert quiver_hall(case("ext-lines", bundle=e, l1=e.sub_line, l2=e.quotient_line)) == ONE
    assert quiver_hall(case("ext-homog", d=1, n=2)) == Q**2 - 3 * Q + 4
    assert quiver_hall(case("ext-homog", bundle=e, bundle2=tau_e, d=1, n=1)) == Q - 3
    assert quiver_hall(case("ext-exceptional", pairing=3)) == Q - 2
    assert quiver_hall(case("ext-exceptional", n_value=1)) == Q**2 - 4 * Q + 4
    s = ExceptionalIndec(1, 0, 2, 2)
    assert quiver_hall(case("ext-exceptional", bundle=e, bundle2=tau_e, s_quot=s)) == Q - 2


def test_defect_two_needs_three_weights():
    family = QuiverFamily(QuiverKind.A, (2, 3))
    with pytest.raises(UnsupportedError):
        quiver_hall(case("ext-lines", family=family, n=2))


def test_missing_inputs():
    with pytest.raises(PreconditionError):
        quiver_hall(case("split-middle"))
    with pytest.raises(PreconditionError):
        quiver_hall(case("ext-lines", n=-1))


# --- Preinjective middle terms ---


def test_preinjective_needs_existence():
    with pytest.raises(PreconditionError):
        quiver_hall(case("preinj-i1r"))
    assert quiver_hall(case("preinj-i1r", assume_exists=True)) == ONE


def test_preinjective_cases(w222):
    assume = {"assume_exists": True}
    assert quiver_hall(case("preinj-ip", torsion=TorsionSheaf.of(ExceptionalIndec(1, 0, 1, 2)), **assume)) == ONE
    assert quiver_hall(case("preinj-ip", torsion=TorsionSheaf.of(HomogeneousIndec(1, 2)), **assume)) == Q
    h = TorsionSheaf.of(HomogeneousIndec(1, 1))
    assert quiver_hall(case("preinj-ipr", r2=h, hom_dim=0, **assume)) == ONE
    assert quiver_hall(case("preinj-ipr", r2=h, hom_dim=1, **assume)) * Q == ONE
    s = ExceptionalIndec(1, 1, 1, 2)
    result = quiver_hall(case("preinj-ipr", r2=h, line=w222.zero, r1=s, **assume))
    assert result == ONE
    assert quiver_hall(case("preinj-ipt", family=E6, n=3, **assume)) == hall.f_poly(2)
    with pytest.raises(PreconditionError):
        quiver_hall(case("preinj-ipt", family=E6, n=0, **assume))
    assert quiver_hall(case("preinj-homog", d=1, n=1, **assume)) == Q - 3
    simple = ExceptionalIndec(1, 0, 1, 2)
    assert quiver_hall(case("preinj-except", s_mid=simple, n_value=0, **assume)) == Q - 2
    assert quiver_hall(case("preinj-except", s_mid=simple, pairing=1, **assume)) == Q - 2
    with pytest.raises(UnsupportedError):
        quiver_hall(case("preinj-except", s_mid=HomogeneousIndec(1, 1), n_value=0, **assume))


# --- Derived rotation ---


def test_derived_rotation_single_middle():
    x, y = IsoType(2, ((0, 1),)), IsoType(2, ((1, 1),))
    report = derived_rotation_at(x, y, IsoType(2, ((0, 2),)), 2)
    assert report.hall == 1
    assert report.monomorphisms == 1
    assert report.epimorphisms == 1
    assert report.extensions == 1
    assert report.embedding_consistent
    assert report.rotation_holds


def test_derived_rotation_counts_each_number_separately():
    s = IsoType(1, ((0, 1),))
    split = derived_rotation_at(s, s, s + s, 2)
    # three lines in F_2^2, each an injection and a surjection
    assert (split.hall, split.monomorphisms, split.epimorphisms, split.extensions) == (3, 3, 3, 1)
    assert (split.g_l, split.g_x, split.g_y) == (3, Fraction(1, 2), Fraction(1, 2))
    assert split.rotation_holds
    uniserial = derived_rotation_at(s, s, IsoType(1, ((0, 2),)), 2)
    assert (uniserial.g_l, uniserial.g_x, uniserial.g_y) == (1, Fraction(1, 2), Fraction(1, 2))
    assert uniserial.a_l == 2 and uniserial.hom == 2


def test_rotation_detects_a_wrong_count():
    s = IsoType(1, ((0, 1),))
    report = derived_rotation_at(s, s, s + s, 2)
    assert not replace(report, extensions=2).rotation_holds
    assert not replace(report, epimorphisms=1).rotation_holds
    assert not replace(report, monomorphisms=1).embedding_consistent


@pytest.mark.parametrize(
    "x, y",
    [
        (((0, 1),), ((1, 1),)),
        (((0, 1),), ((0, 1),)),
        (((1, 2),), ((0, 1),)),
        (((0, 1), (1, 1)), ((1, 1),)),
    ],
)
@pytest.mark.parametrize("q", [2, 3])
def test_derived_rotation_check(x, y, q):
    check = derived_rotation_check(IsoType(2, x), IsoType(2, y), q)
    assert check.holds, check.note
