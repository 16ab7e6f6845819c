"""Hall polynomials for modules over tame quivers.

Preprojective, regular and preinjective modules over a tame quiver
correspond to line bundles, extension bundles and torsion sheaves on the
weighted projective line of matching type. Cases are stated with that
sheaf-side data and delegate to ``services.hall``; the derived rotation
check runs on the tube oracle.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from core.errors import HallEngineError, PreconditionError, UnsupportedError
from core.extbundle import ExtensionBundle
from core.lgroup import LElement, WeightType
from core.polyring import ONE, Q, LaurentPoly, PolyValue
from core.tubes import (
    ExceptionalIndec,
    HomogeneousIndec,
    TorsionSheaf,
    TubeIndec,
    aut_count,
    floor_div,
    line_torsion_hom_dims,
)
from services import hall
from services.oracle import (
    IdentityCheck,
    IsoType,
    aut_size,
    count_epimorphisms,
    count_monomorphisms,
    extension_census,
    hall_number,
    hom_size,
    iso_types_of_dimension,
    tube_dims_between,
)

logger = logging.getLogger(__name__)


class QuiverFamilyError(HallEngineError):
    """Raised for an invalid tame quiver family or parameters."""

    def __init__(self, message: str, family: str = ""):
        self.family = family
        super().__init__(message)


# --- Quiver families ---


class QuiverKind(str, enum.Enum):
    A = "A~"
    D = "D~"
    E6 = "E~6"
    E7 = "E~7"
    E8 = "E~8"


_E_WEIGHTS = {
    QuiverKind.E6: (2, 3, 3),
    QuiverKind.E7: (2, 3, 4),
    QuiverKind.E8: (2, 3, 5),
}


@dataclass(frozen=True, slots=True)
class QuiverFamily:
    kind: QuiverKind
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is QuiverKind.A:
            if len(self.params) != 2 or any(v < 1 for v in self.params):
                raise QuiverFamilyError(f"A~ needs two parameters >= 1, got {self.params}", "A~")
        elif self.kind is QuiverKind.D:
            if len(self.params) != 1 or self.params[0] < 4:
                raise QuiverFamilyError(f"D~ needs one parameter >= 4, got {self.params}", "D~")
        elif self.params:
            raise QuiverFamilyError(f"{self.kind.value} takes no parameters", self.kind.value)

    def __str__(self) -> str:
        if not self.params:
            return self.kind.value
        return f"{self.kind.value}:{','.join(str(v) for v in self.params)}"


def weight_of_type(f: QuiverFamily) -> WeightType:
    """Weight type of the weighted projective line derived-equivalent to the quiver."""
    if f.kind is QuiverKind.A:
        weights = tuple(v for v in f.params if v > 1)
        if len(weights) < 2:
            # a weight 1 is an ordinary point
            raise UnsupportedError(
                f"{f} has fewer than two exceptional points", reason="two weights >= 2"
            )
        return WeightType(weights)
    if f.kind is QuiverKind.D:
        return WeightType((2, 2, f.params[0] - 2))
    return WeightType(_E_WEIGHTS[f.kind])


# --- Cases ---


class QuiverCase(str, enum.Enum):
    LINE_TORSION = "line-torsion"
    SPLIT_MIDDLE = "split-middle"
    SPLIT_BOTH = "split-both"
    EXT_LINES = "ext-lines"
    EXT_HOMOG = "ext-homog"
    EXT_EXCEPTIONAL = "ext-exceptional"
    PREINJ_IP = "preinj-ip"
    PREINJ_I1R = "preinj-i1r"
    PREINJ_IPR = "preinj-ipr"
    PREINJ_IPT = "preinj-ipt"
    PREINJ_HOMOG = "preinj-homog"
    PREINJ_EXCEPT = "preinj-except"

    @property
    def preinjective(self) -> bool:
        return self.value.startswith("preinj-")

    @property
    def needs_defect_two(self) -> bool:
        return self in _DEFECT_TWO


_DEFECT_TWO = {
    QuiverCase.EXT_LINES,
    QuiverCase.EXT_HOMOG,
    QuiverCase.EXT_EXCEPTIONAL,
    QuiverCase.PREINJ_IPT,
    QuiverCase.PREINJ_HOMOG,
    QuiverCase.PREINJ_EXCEPT,
}


ANCHORS: dict[QuiverCase, str] = {
    QuiverCase.LINE_TORSION: "defect -1 preprojective over a regular quotient",
    QuiverCase.SPLIT_MIDDLE: "preprojective plus regular middle term, regular quotient",
    QuiverCase.SPLIT_BOTH: "preprojective plus regular sub and middle terms",
    QuiverCase.EXT_LINES: "defect -2 preprojective from two defect -1 preprojectives",
    QuiverCase.EXT_HOMOG: "defect -2 preprojective over a homogeneous regular quotient",
    QuiverCase.EXT_EXCEPTIONAL: "defect -2 preprojective over a non-homogeneous regular quotient",
    QuiverCase.PREINJ_IP: "regular middle term from preinjective over preprojective",
    QuiverCase.PREINJ_I1R: "preinjective middle term from preinjective over regular",
    QuiverCase.PREINJ_IPR: "regular middle term over preprojective plus regular",
    QuiverCase.PREINJ_IPT: "preprojective middle term from defect 2 preinjective",
    QuiverCase.PREINJ_HOMOG: "homogeneous regular middle term from defect 2 preinjective",
    QuiverCase.PREINJ_EXCEPT: "non-homogeneous regular middle term from defect 2 preinjective",
}


@dataclass(frozen=True)
class QuiverHallCase:
    """A case tag with the sheaf-side data parametrizing it.

    Preprojective modules of defect -1 are given by line twists (``line``,
    ``line_mid``), defect -2 by extension bundles (``bundle``, ``bundle2``),
    regular modules by torsion: ``torsion`` for a decomposable regular term,
    ``s_sub``, ``s_mid`` and ``s_quot`` for indecomposable regular summands of the
    subobject, middle term and quotient. The preinjective case with a regular
    summand in the subobject names its regular terms directly: ``r1`` is the
    summand of P + R1 and ``r2`` the middle term.
    Formula-only variants take the integers ``n``, ``d``, ``n_value`` or
    ``pairing`` directly.
    """

    case: QuiverCase
    family: QuiverFamily
    line: Optional[LElement] = None
    line_mid: Optional[LElement] = None
    torsion: Optional[TorsionSheaf] = None
    s_sub: Optional[TubeIndec] = None
    s_mid: Optional[TubeIndec] = None
    s_quot: Optional[TubeIndec] = None
    r1: Optional[TubeIndec] = None
    r2: Optional[TorsionSheaf] = None
    bundle: Optional[ExtensionBundle] = None
    bundle2: Optional[ExtensionBundle] = None
    l1: Optional[LElement] = None
    l2: Optional[LElement] = None
    n: Optional[int] = None
    d: Optional[int] = None
    n_value: Optional[int] = None
    pairing: Optional[int] = None
    hom_dim: Optional[int] = None
    assume_exists: bool = False

    @property
    def weights(self) -> WeightType:
        return weight_of_type(self.family)

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise PreconditionError(
                f"case {self.case.value} needs {', '.join(missing)}",
                precondition=f"{self.case.value} inputs present",
            )

    def validate(self) -> None:
        w = self.weights
        if self.case.needs_defect_two and w.t != 3:
            raise UnsupportedError(
                f"{self.family} has {w.t} weights; defect -2 objects need three",
                reason="three weights",
            )
        if self.case.preinjective and not self.assume_exists:
            raise PreconditionError(
                "preinjective formulas hold only when the sequence exists",
                precondition="assume_exists",
            )


def _over_q_minus_one(value: LaurentPoly) -> LaurentPoly:
    return value.exact_div(Q - 1)


def quiver_hall_preprojective(case: QuiverHallCase) -> LaurentPoly:
    """Hall polynomials with a preprojective middle term."""
    case.validate()
    w = case.weights
    tag = case.case
    if tag is QuiverCase.LINE_TORSION:
        case.require("line", "line_mid")
        return LaurentPoly.constant(
            hall.hall_line_quotient_torsion(w, case.line, case.line_mid, case.torsion)
        )
    if tag is QuiverCase.SPLIT_MIDDLE:
        case.require("line", "line_mid", "s_quot")
        return hall.hall_split_middle(w, case.line, case.line_mid, case.s_quot, case.s_mid)
    if tag is QuiverCase.SPLIT_BOTH:
        case.require("line", "line_mid")
        return hall.hall_split_both(w, case.line, case.line_mid, case.s_sub, case.s_mid, case.s_quot)
    if tag is QuiverCase.EXT_LINES:
        if case.bundle is not None:
            case.require("l1", "l2")
            return hall.hall_ext_from_lines(case.bundle, case.l1, case.l2)
        case.require("n")
        if case.n < 0:
            raise PreconditionError(f"<P1, P2> = {case.n} is negative", precondition="n >= 0")
        return hall.f_poly(case.n)
    if tag is QuiverCase.EXT_HOMOG:
        case.require("d", "n")
        if case.bundle is not None:
            case.require("bundle2")
            return hall.hall_ext_homog_torsion(case.bundle, case.bundle2, case.d, case.n)
        return hall.homogeneous_bracket(case.d, case.n)
    if tag is QuiverCase.EXT_EXCEPTIONAL:
        if case.bundle is not None:
            case.require("bundle2", "s_quot")
            return hall.hall_ext_except_torsion(case.bundle, case.bundle2, case.s_quot)
        if case.pairing is not None:
            return hall.exceptional_bracket(floor_div(case.pairing, 2) - 1)
        case.require("n_value")
        return hall.exceptional_bracket(case.n_value)
    raise PreconditionError(
        f"{tag.value} is not a preprojective case", precondition="preprojective case tag"
    )


def _regular_aut(value: Union[None, TubeIndec, TorsionSheaf]) -> LaurentPoly:
    return aut_count(value) if value is not None else ONE


def quiver_hall_preinjective(case: QuiverHallCase) -> PolyValue:
    """Hall polynomials with a preinjective or regular middle term."""
    case.validate()
    tag = case.case
    if tag is QuiverCase.PREINJ_IP:
        case.require("torsion")
        return _over_q_minus_one(_regular_aut(case.torsion))
    if tag is QuiverCase.PREINJ_I1R:
        return ONE
    if tag is QuiverCase.PREINJ_IPR:
        case.require("r2")
        if case.hom_dim is None:
            case.require("line", "r1")
            hom = line_torsion_hom_dims(case.weights, case.line, case.r1).hom_line_to_torsion
        else:
            hom = case.hom_dim
        return _regular_aut(case.r2).exact_div((Q - 1) * Q**hom)
    if tag is QuiverCase.PREINJ_IPT:
        case.require("n")
        if case.n < 1:
            raise PreconditionError(f"<P~, P> = {case.n} is below 1", precondition="n >= 1")
        return hall.f_poly(case.n - 1)
    if tag is QuiverCase.PREINJ_HOMOG:
        case.require("d", "n")
        prefactor = _over_q_minus_one(aut_count(HomogeneousIndec(case.d, case.n)))
        return prefactor * hall.homogeneous_bracket(case.d, case.n)
    if tag is QuiverCase.PREINJ_EXCEPT:
        case.require("s_mid")
        if not isinstance(case.s_mid, ExceptionalIndec):
            raise UnsupportedError(f"{case.s_mid} is not in an exceptional tube", reason="exceptional tube")
        if case.pairing is not None:
            n_value = floor_div(-case.pairing, 2) + 1
        else:
            case.require("n_value")
            n_value = case.n_value
        return _over_q_minus_one(aut_count(case.s_mid)) * hall.exceptional_bracket(n_value)
    raise PreconditionError(f"{tag.value} is not a preinjective case", precondition="preinjective case tag")


def quiver_hall(case: QuiverHallCase) -> PolyValue:
    if case.case.preinjective:
        return quiver_hall_preinjective(case)
    return quiver_hall_preprojective(case)


# --- Derived Hall numbers on the heart ---


@dataclass(frozen=True, slots=True)
class RotationReport:
    """Derived Hall numbers for one middle term L of 0 -> Y -> L -> X -> 0.

    Each number is read off a different morphism space: G^L_{XY} from
    Hom(Y, L), G^X_{Y[1], L} from Hom(L, X) and G^Y_{L, X[-1]} from
    Hom(X[-1], Y) = Ext^1(X, Y). On the heart the brace factors reduce to
    1 for the first two and to 1/|Hom(X, Y)| for the third.
    """

    middle: IsoType
    hall: int  # F^L_{XY} from the subobject census
    monomorphisms: int  # injections Y -> L with cokernel X
    epimorphisms: int  # surjections L -> X with kernel Y
    extensions: int  # |Ext^1(X, Y)_L| from the cocycle walk
    hom: int  # |Hom(X, Y)|
    a_l: int
    a_x: int
    a_y: int

    @property
    def g_l(self) -> Fraction:
        """G^L_{XY}."""
        return Fraction(self.monomorphisms, self.a_y)

    @property
    def g_x(self) -> Fraction:
        """G^X_{Y[1], L}."""
        return Fraction(self.epimorphisms, self.a_l)

    @property
    def g_y(self) -> Fraction:
        """G^Y_{L, X[-1]}."""
        return Fraction(self.extensions, self.hom * self.a_x)

    @property
    def embedding_consistent(self) -> bool:
        return self.g_l == self.hall

    @property
    def rotation_holds(self) -> bool:
        return self.g_l / self.a_l == self.g_x / self.a_x == self.g_y / self.a_y

    @property
    def empty(self) -> bool:
        return not (self.hall or self.monomorphisms or self.epimorphisms or self.extensions)


def derived_rotation_at(x: IsoType, y: IsoType, l: IsoType, q: int) -> RotationReport:
    return RotationReport(
        middle=l,
        hall=hall_number(x, y, l, q),
        monomorphisms=count_monomorphisms(y, l, x, q),
        epimorphisms=count_epimorphisms(l, x, y, q),
        extensions=extension_census(x, y, q)[l],
        hom=hom_size(x, y, q),
        a_l=aut_size(l, q),
        a_x=aut_size(x, q),
        a_y=aut_size(y, q),
    )


def derived_rotation_check(x: IsoType, y: IsoType, q: int) -> IdentityCheck:
    """Rotation of derived Hall numbers on heart objects, over every middle term.

    The three numbers come from independent walks over Hom(Y, L), Hom(L, X)
    and the cocycles of Ext^1(X, Y). The check also confirms that the
    extension classes sum to |Ext^1(X, Y)| from the tube formulas.
    """
    middle = tuple(u + v for u, v in zip(x.dimension_vector, y.dimension_vector))
    total_ext = 0
    failures: list[str] = []
    for l in iso_types_of_dimension(x.p, middle):
        report = derived_rotation_at(x, y, l, q)
        if report.empty:
            continue
        total_ext += report.extensions
        if not report.embedding_consistent:
            failures.append(f"G != F at {l}")
        if not report.rotation_holds:
            failures.append(f"rotation fails at {l}")
    expected = q ** tube_dims_between(x, y)[1]
    if total_ext != expected:
        failures.append("Ext counts do not sum to |Ext^1|")
    if failures:
        logger.debug("rotation check %s, %s over F_%d: %s", x, y, q, "; ".join(failures))
    return IdentityCheck(Fraction(total_ext), Fraction(expected), not failures, "; ".join(failures))
