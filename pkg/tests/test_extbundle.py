import pytest

from core.extbundle import (
    ExtensionBundle,
    ExtensionBundleRangeError,
    admissible_offsets,
    k0_class_ext,
    locate_extension_bundle,
    make_extension_bundle,
    orbit_twists,
    orthogonal_pair_check,
    same_orbit,
)
from core.lgroup import WeightType
from core.sheafcat import K0Class, UnsupportedWeightError, euler_form


def test_offsets_count(w222, w235):
    assert len(list(admissible_offsets(w222))) == 1
    assert len(list(admissible_offsets(w235))) == 8
    assert len(list(admissible_offsets(WeightType((3, 3, 4))))) == 12


def test_make_validates_range(w235):
    e = make_extension_bundle(w235, w235.zero, w235.element([0, 1, 3]))
    assert str(e) == "EB:0,0,0;0;0,1,3;0"
    with pytest.raises(ExtensionBundleRangeError):
        make_extension_bundle(w235, w235.zero, w235.c)
    with pytest.raises(ExtensionBundleRangeError) as info:
        make_extension_bundle(w235, w235.zero, w235.element([0, 2, 0]))
    assert "i=2" in info.value.bound
    with pytest.raises(UnsupportedWeightError):
        make_extension_bundle(WeightType((2, 3)), WeightType((2, 3)).zero, WeightType((2, 3)).zero)


def test_lines_of_the_sequence(w222):
    e = ExtensionBundle(w222.zero, w222.zero)
    assert e.sub_line == w222.omega
    assert e.quotient_line == w222.zero
    assert e.twisted(w222.c).base == w222.c


@pytest.mark.parametrize("weights", [(2, 2, 2), (2, 3, 5), (3, 3, 4), (2, 4, 4)])
def test_every_offset_gives_orthogonal_pair(weights):
    w = WeightType(weights)
    for offset in admissible_offsets(w):
        report = orthogonal_pair_check(ExtensionBundle(w.zero, offset))
        assert report.is_orthogonal, f"offset {offset}"


def test_extension_bundles_are_exceptional(w235):
    for offset in admissible_offsets(w235):
        c = k0_class_ext(ExtensionBundle(w235.c, offset))
        assert c.rank == 2
        assert euler_form(c, c) == 1


def test_orbit_twists_of_untwisted_bundle(w222):
    e = ExtensionBundle(w222.zero, w222.zero)
    twists = orbit_twists(e, e)
    assert [str(z) for z in twists] == ["0,0,0;0", "0,1,1;-1", "1,0,1;-1", "1,1,0;-1"]
    for z in twists:
        assert k0_class_ext(e.twisted(z)) == k0_class_ext(e)
    assert same_orbit(e, e) == w222.zero


def test_orbit_across_offsets(w235):
    a = ExtensionBundle(w235.zero, w235.element([0, 0, 0]))
    b = ExtensionBundle(w235.zero, w235.element([0, 1, 3]))
    z = same_orbit(a, b)
    assert z is not None
    assert k0_class_ext(b.twisted(z)) == k0_class_ext(a)
    assert same_orbit(a, ExtensionBundle(w235.zero, w235.element([0, 0, 1]))) is None


@pytest.mark.parametrize("weights", [(2, 2, 2), (2, 3, 5), (3, 3, 4)])
def test_orbit_twists_are_symmetric(weights):
    w = WeightType(weights)
    bases = (w.zero, w.x(1), -w.c)
    bundles = [ExtensionBundle(base, offset) for offset in admissible_offsets(w) for base in bases]
    for a in bundles:
        for b in bundles:
            forward = orbit_twists(a, b)
            assert sorted(map(str, orbit_twists(b, a))) == sorted(str(-z) for z in forward)
            for z in forward:
                assert k0_class_ext(b.twisted(z)) == k0_class_ext(a)
            if len(forward) <= 1:
                z = same_orbit(a, b)
                assert same_orbit(b, a) == (None if z is None else -z)


def test_locate(w235):
    e = ExtensionBundle(w235.element([1, 0, 2], 1), w235.element([0, 1, 2]))
    found = locate_extension_bundle(w235, k0_class_ext(e), around=e.base, radius=1)
    assert found is not None
    assert k0_class_ext(found) == k0_class_ext(e)
    assert locate_extension_bundle(w235, K0Class.zero(w235), radius=1) is None
