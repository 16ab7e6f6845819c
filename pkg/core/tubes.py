"""Torsion sheaves: uniserial objects in exceptional and homogeneous tubes.

An exceptional indecomposable S_{i,j}^{(n)} lives in the tube of rank p_i at
the i-th exceptional point; it has top S_{i,j} and composition factors
S_{i,j}, S_{i,j-1}, ..., S_{i,j-n+1}. The translate is tau S_{i,j} = S_{i,j-1},
and Hom(O(v), S_{i,j}) is non-zero exactly when v_i = j (mod p_i).

A homogeneous indecomposable S_z^{(n)} sits at a closed point z of degree d
different from the exceptional points; ``label`` distinguishes points of the
same degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from core.errors import HallEngineError, UnsupportedError
from core.lgroup import LElement, WeightMismatchError, WeightType
from core.polyring import LaurentPoly, Q
from core.sheafcat import K0Class, delta, k0_class_line

logger = logging.getLogger(__name__)


class TubeShapeError(HallEngineError):
    """Raised for an indecomposable with invalid length, degree or tube index."""


class SameTubeError(UnsupportedError):
    """Raised when a closed formula receives two summands from one tube."""


# --- Integer helpers ---


def floor_div(a: int, p: int) -> int:
    return a // p


def ceil_div(a: int, p: int) -> int:
    return -((-a) // p)


def residue(a: int, p: int) -> int:
    return a % p


# --- Indecomposables ---


@dataclass(frozen=True, slots=True)
class ExceptionalIndec:
    """S_{i,j}^{(n)} in the tube of rank p at exceptional point i (1-based)."""

    i: int
    j: int
    n: int
    p: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise TubeShapeError(f"tube rank must be positive, got {self.p}")
        if self.n < 1:
            raise TubeShapeError(f"length must be at least 1, got {self.n}")
        object.__setattr__(self, "j", self.j % self.p)

    @property
    def tube(self) -> tuple:
        return ("E", self.i)

    @property
    def length(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"E:{self.i},{self.j},{self.n}"


@dataclass(frozen=True, slots=True)
class HomogeneousIndec:
    """S_z^{(n)} at an ordinary closed point z of degree d."""

    d: int
    n: int
    label: str = "z"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise TubeShapeError(f"degree must be at least 1, got {self.d}")
        if self.n < 1:
            raise TubeShapeError(f"length must be at least 1, got {self.n}")

    @property
    def tube(self) -> tuple:
        return ("H", self.d, self.label)

    @property
    def length(self) -> int:
        return self.n

    def __str__(self) -> str:
        suffix = "" if self.label == "z" else f":{self.label}"
        return f"H:{self.d},{self.n}{suffix}"


TubeIndec = Union[ExceptionalIndec, HomogeneousIndec]


def exceptional(w: WeightType, i: int, j: int, n: int) -> ExceptionalIndec:
    """S_{i,j}^{(n)} over weight type ``w``."""
    return ExceptionalIndec(i, j, n, w.p(i))


def _sort_key(s: TubeIndec) -> tuple:
    if isinstance(s, ExceptionalIndec):
        return (0, s.i, s.j, s.n, "")
    return (1, s.d, s.n, 0, s.label)


@dataclass(frozen=True, slots=True)
class TorsionSheaf:
    """Finite direct sum of tube indecomposables, kept in canonical order."""

    summands: tuple[TubeIndec, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=_sort_key)))

    @classmethod
    def of(cls, *summands: TubeIndec) -> TorsionSheaf:
        return cls(tuple(summands))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @property
    def distinct_tubes(self) -> bool:
        tubes = [s.tube for s in self.summands]
        return len(tubes) == len(set(tubes))

    def require_distinct_tubes(self) -> None:
        if not self.distinct_tubes:
            raise SameTubeError(
                f"summands of {self} share a tube", reason="decomposable within one tube"
            )

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        return "+".join(str(s) for s in self.summands) if self.summands else "0"


def as_torsion(value: Union[None, TubeIndec, TorsionSheaf]) -> TorsionSheaf:
    if value is None:
        return TorsionSheaf()
    if isinstance(value, TorsionSheaf):
        return value
    return TorsionSheaf.of(value)


# --- Hom / Ext inside one tube ---


@dataclass(frozen=True, slots=True)
class TubeDims:
    """Dimensions for a = S_j^{(n)}, b = S_k^{(m)} in one tube."""

    dim_hom: int  # Hom(a, b)
    dim_ext_b_to_a: int  # Ext^1(b, a)
    dim_ext_a_to_b: int  # Ext^1(a, b)
    euler: int  # <a, b>


def _hom(p: int, j: int, n: int, k: int, m: int) -> int:
    if n >= m:
        return ceil_div(m - k + j, p) + floor_div(k - j, p)
    return ceil_div(m - k + j, p) + floor_div(n - m + k - j, p)


def _ext(p: int, k: int, m: int, j: int, n: int) -> int:
    """Ext^1(S_k^{(m)}, S_j^{(n)})."""
    if n >= m:
        return floor_div(m - k + j, p) + ceil_div(k - j, p)
    return floor_div(m - k + j, p) + ceil_div(n - m + k - j, p)


def euler_closed_form(p: int, a: tuple[int, int], b: tuple[int, int]) -> int:
    """<S_j^{(n)}, S_k^{(m)}> as one expression valid for all lengths."""
    (j, n), (k, m) = a, b
    return (
        ceil_div(m - k + j, p)
        + floor_div(k - j, p)
        - floor_div(n - j + k, p)
        - ceil_div(m - n + j - k, p)
    )


def tube_hom_ext_dims(p: int, a: tuple[int, int], b: tuple[int, int], d: int = 1) -> TubeDims:
    """Hom/Ext dimensions between a = (j, n) and b = (k, m) in a tube of rank p.

    p = 1 describes a homogeneous tube; ``d`` scales every dimension by the
    degree of its point.
    """
    (j, n), (k, m) = a, b
    if p < 1 or n < 1 or m < 1:
        raise TubeShapeError(f"invalid tube data p={p}, a={a}, b={b}")
    if p == 1:
        shared = d * min(n, m)
        return TubeDims(shared, shared, shared, 0)
    dim_hom = _hom(p, j, n, k, m)
    ext_ba = _ext(p, k, m, j, n)
    ext_ab = _ext(p, j, n, k, m)
    return TubeDims(dim_hom, ext_ba, ext_ab, dim_hom - ext_ab)


def indec_hom_ext_dims(a: TubeIndec, b: TubeIndec) -> TubeDims:
    """Dimensions between two indecomposables; different tubes are orthogonal."""
    if a.tube != b.tube:
        return TubeDims(0, 0, 0, 0)
    if isinstance(a, HomogeneousIndec):
        return tube_hom_ext_dims(1, (0, a.n), (0, b.n), d=a.d)
    return tube_hom_ext_dims(a.p, (a.j, a.n), (b.j, b.n))


def torsion_euler(a: TorsionSheaf, b: TorsionSheaf) -> int:
    return sum(indec_hom_ext_dims(x, y).euler for x in a for y in b)


# --- Line bundles against torsion ---


@dataclass(frozen=True, slots=True)
class LineTorsionDims:
    hom_line_to_torsion: int
    ext_torsion_to_line: int
    hom_torsion_to_line: int = 0
    ext_line_to_torsion: int = 0


def line_torsion_hom_dims(w: WeightType, v: LElement, s: TubeIndec) -> LineTorsionDims:
    """Hom(O(v), s) and Ext^1(s, O(v)) = D Hom(O(v), tau s)."""
    if v.weights != w:
        raise WeightMismatchError("twist belongs to another weight type")
    if isinstance(s, HomogeneousIndec):
        return LineTorsionDims(s.d * s.n, s.d * s.n)
    top_of_line = v.coefficient(s.i)
    hom = _hom(s.p, top_of_line, s.n, s.j, s.n)
    ext = _hom(s.p, top_of_line, s.n, s.j - 1, s.n)
    return LineTorsionDims(hom, ext)


def hom_line_to_top(w: WeightType, v: LElement, s: TubeIndec) -> int:
    """dim Hom(O(v), top of s)."""
    return line_torsion_hom_dims(w, v, tau_top(s).top).hom_line_to_torsion


# --- Counting ---


def end_dim(s: TubeIndec) -> int:
    if isinstance(s, HomogeneousIndec):
        return s.d * s.n
    return ceil_div(s.n, s.p)


def aut_count(s: Union[TubeIndec, TorsionSheaf]) -> LaurentPoly:
    """|Aut| as a polynomial in q, for summands in pairwise distinct tubes."""
    sheaf = as_torsion(s)
    sheaf.require_distinct_tubes()
    total = LaurentPoly.constant(1)
    for summand in sheaf:
        if isinstance(summand, HomogeneousIndec):
            factor = (Q ** summand.d - 1) * Q ** (summand.d * (summand.n - 1))
        else:
            factor = (Q - 1) * Q ** (ceil_div(summand.n, summand.p) - 1)
        total = total * factor
    return total


# --- Classes ---


def k0_class_torsion(w: WeightType, s: Union[TubeIndec, TorsionSheaf]) -> K0Class:
    total = K0Class.zero(w)
    for summand in as_torsion(s):
        if isinstance(summand, HomogeneousIndec):
            total = total + (summand.d * summand.n) * delta(w)
        else:
            if summand.p != w.p(summand.i):
                raise WeightMismatchError(f"{summand} does not belong to weights {w}")
            top = k0_class_line(w, w.x(summand.i, summand.j))
            bottom = k0_class_line(w, w.x(summand.i, summand.j - summand.n))
            total = total + (top - bottom)
    return total


# --- Uniserial structure ---


@dataclass(frozen=True, slots=True)
class TauTop:
    tau: TubeIndec
    top: TubeIndec
    submodules: tuple[TubeIndec, ...]  # lengths 1..n
    quotients: tuple[TubeIndec, ...]  # S / submodule of length 1..n-1


def _with_length(s: TubeIndec, top_index: int, length: int) -> TubeIndec:
    if isinstance(s, HomogeneousIndec):
        return HomogeneousIndec(s.d, length, s.label)
    return ExceptionalIndec(s.i, top_index, length, s.p)


def tau_top(s: TubeIndec) -> TauTop:
    if isinstance(s, HomogeneousIndec):
        tau: TubeIndec = s
        top_index = 0
    else:
        tau = ExceptionalIndec(s.i, s.j - 1, s.n, s.p)
        top_index = s.j
    top = _with_length(s, top_index, 1)
    subs = tuple(_with_length(s, top_index - (s.n - l), l) for l in range(1, s.n + 1))
    quots = tuple(_with_length(s, top_index, s.n - l) for l in range(1, s.n))
    return TauTop(tau, top, subs, quots)


def is_submodule(sub: Optional[TubeIndec], s: Optional[TubeIndec]) -> bool:
    """True when ``sub`` is isomorphic to the (unique) submodule of its length."""
    if sub is None:
        return True
    if s is None or sub.tube != s.tube or sub.n > s.n:
        return False
    return tau_top(s).submodules[sub.n - 1] == sub


def quotient_by(s: Optional[TubeIndec], sub: Optional[TubeIndec]) -> Optional[TubeIndec]:
    """s / sub for a submodule; None stands for zero."""
    if s is None:
        return None
    if not is_submodule(sub, s):
        raise TubeShapeError(f"{sub} is not a submodule of {s}")
    length = 0 if sub is None else sub.n
    if length == s.n:
        return None
    top_index = 0 if isinstance(s, HomogeneousIndec) else s.j
    return _with_length(s, top_index, s.n - length)


def iter_exceptional(w: WeightType, max_length: int) -> Iterable[ExceptionalIndec]:
    for i, p in enumerate(w.weights, start=1):
        for j in range(p):
            for n in range(1, max_length + 1):
                yield ExceptionalIndec(i, j, n, p)
