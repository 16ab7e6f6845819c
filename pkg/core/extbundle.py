"""Extension bundles E_L<x> on a weighted projective line with three weights.

E_L<x> is the middle term of the unique non-split sequence
0 -> L(omega) -> E -> L(x) -> 0 with 0 <= x <= sum((p_i - 2) x_i).
Here L = O(base) and x = offset.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from core.errors import HallEngineError
from core.lgroup import LElement, WeightMismatchError, WeightType, elements_in_window
from core.sheafcat import K0Class, k0_class_line, line_hom_ext_dims, require_three_weights

logger = logging.getLogger(__name__)


class ExtensionBundleRangeError(HallEngineError):
    """Raised when an offset lies outside 0 <= x <= sum((p_i - 2) x_i)."""

    def __init__(self, message: str, bound: str = ""):
        self.bound = bound
        super().__init__(message)


@dataclass(frozen=True, slots=True)
class ExtensionBundle:
    base: LElement
    offset: LElement

    @property
    def weights(self) -> WeightType:
        return self.base.weights

    @property
    def sub_line(self) -> LElement:
        """Twist of the subbundle L(omega)."""
        return self.base + self.weights.omega

    @property
    def quotient_line(self) -> LElement:
        """Twist of the quotient L(x)."""
        return self.base + self.offset

    def twisted(self, z: LElement) -> ExtensionBundle:
        return ExtensionBundle(self.base + z, self.offset)

    def __str__(self) -> str:
        return f"EB:{self.base};{self.offset}"


def make_extension_bundle(w: WeightType, base: LElement, offset: LElement) -> ExtensionBundle:
    require_three_weights(w, "extension bundles")
    if base.weights != w or offset.weights != w:
        raise WeightMismatchError("bundle data belongs to another weight type")
    if offset.lc != 0:
        raise ExtensionBundleRangeError(
            f"offset {offset} must have c-coefficient 0", bound="0 <= x"
        )
    for i, (value, p) in enumerate(zip(offset.l, w.weights), start=1):
        if value > p - 2:
            raise ExtensionBundleRangeError(
                f"offset coefficient of x{i} is {value}, above p{i} - 2 = {p - 2}",
                bound=f"x <= sum (p_i - 2) x_i at i={i}",
            )
    return ExtensionBundle(base, offset)


def admissible_offsets(w: WeightType) -> Iterator[LElement]:
    """Every offset 0 <= x <= sum((p_i - 2) x_i); there are prod(p_i - 1)."""
    require_three_weights(w, "extension bundles")
    for l in product(*(range(p - 1) for p in w.weights)):
        yield LElement(w, l, 0)


def _twists_between_offsets(w: WeightType, x: LElement, y: LElement) -> list[LElement]:
    """All z with E<x> = E<y>(z) for the untwisted bundles."""
    found: list[LElement] = []
    if x == y:
        found.append(w.zero)
    for j in range(1, w.t + 1):
        raw_y = [
            x.l[i - 1] if i == j else w.p(i) - 2 - x.l[i - 1] for i in range(1, w.t + 1)
        ]
        if tuple(raw_y) != y.l:
            continue
        raw_z = [0 if i == j else x.l[i - 1] + 1 for i in range(1, w.t + 1)]
        z = w.element(raw_z, -1)
        if z not in found:
            found.append(z)
    return found


def orbit_twists(a: ExtensionBundle, b: ExtensionBundle) -> list[LElement]:
    """Every z with a = b(z)."""
    if a.weights != b.weights:
        raise WeightMismatchError("bundles over different weight types")
    shift = a.base - b.base
    return [z + shift for z in _twists_between_offsets(a.weights, a.offset, b.offset)]


def same_orbit(a: ExtensionBundle, b: ExtensionBundle) -> Optional[LElement]:
    """A twist z with a = b(z), or None when the bundles lie in different orbits."""
    twists = orbit_twists(a, b)
    return twists[0] if twists else None


def k0_class_ext(e: ExtensionBundle) -> K0Class:
    w = e.weights
    return k0_class_line(w, e.sub_line) + k0_class_line(w, e.quotient_line)


@dataclass(frozen=True, slots=True)
class OrthogonalPairReport:
    hom_quotient_to_sub: int  # Hom(L(x), L(omega))
    hom_sub_to_quotient: int  # Hom(L(omega), L(x))
    ext_sub_to_quotient: int  # Ext^1(L(omega), L(x))
    ext_quotient_to_sub: int  # Ext^1(L(x), L(omega))

    @property
    def is_orthogonal(self) -> bool:
        return (
            self.hom_quotient_to_sub == 0
            and self.hom_sub_to_quotient == 0
            and self.ext_sub_to_quotient == 0
            and self.ext_quotient_to_sub == 1
        )


def orthogonal_pair_check(e: ExtensionBundle) -> OrthogonalPairReport:
    w = e.weights
    forward = line_hom_ext_dims(w, e.quotient_line, e.sub_line)
    backward = line_hom_ext_dims(w, e.sub_line, e.quotient_line)
    return OrthogonalPairReport(
        hom_quotient_to_sub=forward.dim_hom,
        hom_sub_to_quotient=backward.dim_hom,
        ext_sub_to_quotient=backward.dim_ext,
        ext_quotient_to_sub=forward.dim_ext,
    )


def locate_extension_bundle(
    w: WeightType, target: K0Class, around: Optional[LElement] = None, radius: int = 4
) -> Optional[ExtensionBundle]:
    """First extension bundle of class ``target`` with base lc within ``radius``."""
    require_three_weights(w, "extension bundles")
    centre = around.lc if around is not None else 0
    offsets = list(admissible_offsets(w))
    for base in elements_in_window(w, range(centre - radius, centre + radius + 1)):
        for offset in offsets:
            bundle = ExtensionBundle(base, offset)
            if k0_class_ext(bundle) == target:
                return bundle
    logger.debug("no extension bundle of class %s within radius %d", target, radius)
    return None
