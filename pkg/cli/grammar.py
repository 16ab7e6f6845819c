"""Text grammars for command-line arguments.

  weights        "2,3,5"
  L(p) element   "l1,...,lt;lc"  (raw values are normalized)
  exceptional    "E:i,j,n"
  homogeneous    "H:d,n" or "H:d,n:label"
  torsion        "+"-joined indecomposables, or "0"
  bundle         "EB:base;offset", e.g. "EB:0,0,0;0;0,0,0;0"
  class          "+"-joined terms "L:x", "EB:...", "E:...", "H:..."
  quiver family  "A~:p,q", "D~:n", "E~6", "E~7", "E~8"
"""

from __future__ import annotations

from typing import Optional

from core.errors import HallEngineError, UnsupportedError
from core.extbundle import ExtensionBundle, k0_class_ext, make_extension_bundle
from core.lgroup import LElement, WeightType, parse_lelement
from core.sheafcat import K0Class, k0_class_line
from core.tubes import (
    HomogeneousIndec,
    TorsionSheaf,
    TubeIndec,
    exceptional,
    k0_class_torsion,
)
from services.quiverside import QuiverFamily, QuiverKind


class UsageError(HallEngineError):
    """Raised for malformed command lines and argument text."""

    def __init__(self, message: str, argument: str = ""):
        self.argument = argument
        super().__init__(message)


def parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers for {what}, got {text!r}", what) from None


def parse_weights(text: str) -> WeightType:
    try:
        return WeightType(tuple(parse_ints(text, "weights")))
    except HallEngineError as exc:
        raise UsageError(str(exc), "weights") from None


def parse_element(w: WeightType, text: str) -> LElement:
    try:
        return parse_lelement(w, text)
    except (ValueError, HallEngineError) as exc:
        raise UsageError(f"bad L(p) element {text!r}: {exc}", "element") from None


def parse_indec(w: WeightType, text: str) -> TubeIndec:
    body = text.strip()
    kind, _, rest = body.partition(":")
    try:
        if kind == "E":
            i, j, n = parse_ints(rest, "exceptional indecomposable")
            return exceptional(w, i, j, n)
        if kind == "H":
            label = "z"
            if rest.count(":") == 1:
                rest, label = rest.split(":")
            d, n = parse_ints(rest, "homogeneous indecomposable")
            return HomogeneousIndec(d, n, label)
    except UsageError:
        raise
    except (ValueError, IndexError, HallEngineError) as exc:
        raise UsageError(f"bad tube indecomposable {text!r}: {exc}", "torsion") from None
    raise UsageError(f"expected 'E:i,j,n' or 'H:d,n[:label]', got {text!r}", "torsion")


def parse_optional_indec(w: WeightType, text: Optional[str]) -> Optional[TubeIndec]:
    if text is None or text.strip() == "0":
        return None
    return parse_indec(w, text)


def parse_torsion(w: WeightType, text: Optional[str]) -> TorsionSheaf:
    if text is None or text.strip() == "0":
        return TorsionSheaf()
    return TorsionSheaf.of(*(parse_indec(w, part) for part in text.split("+")))


def parse_bundle(w: WeightType, text: str) -> ExtensionBundle:
    body = text.strip()
    if not body.startswith("EB:"):
        raise UsageError(f"expected 'EB:base;offset', got {text!r}", "bundle")
    parts = body[3:].split(";")
    if len(parts) != 4:
        raise UsageError(f"expected 'EB:l1,..,lt;lc;x1,..,xt;xc', got {text!r}", "bundle")
    base = parse_element(w, f"{parts[0]};{parts[1]}")
    offset = parse_element(w, f"{parts[2]};{parts[3]}")
    return bundle_from(w, base, offset)


def bundle_from(w: WeightType, base: LElement, offset: LElement) -> ExtensionBundle:
    try:
        return make_extension_bundle(w, base, offset)
    except UnsupportedError:
        raise
    except HallEngineError as exc:
        raise UsageError(f"bad extension bundle: {exc}", "bundle") from None


def parse_class(w: WeightType, text: str) -> K0Class:
    """Sum of object classes; bundles may contain ';' but never '+'."""
    total = K0Class.zero(w)
    for term in text.split("+"):
        term = term.strip()
        if term.startswith("L:"):
            total = total + k0_class_line(w, parse_element(w, term[2:]))
        elif term.startswith("EB:"):
            total = total + k0_class_ext(parse_bundle(w, term))
        elif term.startswith(("E:", "H:")):
            total = total + k0_class_torsion(w, parse_indec(w, term))
        else:
            raise UsageError(f"unknown class term {term!r}", "class")
    return total


def parse_family(text: str) -> QuiverFamily:
    body = text.strip()
    name, _, rest = body.partition(":")
    try:
        kind = QuiverKind(name)
    except ValueError:
        raise UsageError(f"unknown quiver family {name!r}", "family") from None
    params = tuple(parse_ints(rest, "family parameters")) if rest else ()
    try:
        return QuiverFamily(kind, params)
    except HallEngineError as exc:
        raise UsageError(str(exc), "family") from None
