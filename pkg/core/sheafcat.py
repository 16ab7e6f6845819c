"""Line bundles, the Grothendieck group and the Euler form.

K_0 is free on the classes [O(x)] for 0 <= x <= c, listed as
[O], [O(x_1)], ..., [O((p_1 - 1)x_1)], [O(x_2)], ..., [O(c)].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.errors import UnsupportedError
from core.lgroup import LElement, WeightMismatchError, WeightType

logger = logging.getLogger(__name__)


class UnsupportedWeightError(UnsupportedError):
    """Raised when a result is only available for a different number of weights."""


@dataclass(frozen=True, slots=True)
class LineDims:
    dim_hom: int
    dim_ext: int


def line_hom_ext_dims(w: WeightType, x: LElement, y: LElement) -> LineDims:
    """dim Hom(O(x), O(y)) and dim Ext^1(O(x), O(y))."""
    if x.weights != w or y.weights != w:
        raise WeightMismatchError("line bundle twists belong to another weight type")
    dim_hom = max(0, (y - x).lc + 1)
    # Serre duality: Ext^1(O(x), O(y)) = D Hom(O(y), O(x + omega))
    dim_ext = max(0, (x + w.omega - y).lc + 1)
    return LineDims(dim_hom, dim_ext)


def basis_size(w: WeightType) -> int:
    return 2 + sum(p - 1 for p in w.weights)


def basis_index(w: WeightType, i: int, l: int) -> int:
    """Coordinate of [O(l x_i)]; l = 0 is [O]."""
    if l == 0:
        return 0
    offset = 1 + sum(p - 1 for p in w.weights[: i - 1])
    return offset + l - 1


def basis_labels(w: WeightType) -> list[str]:
    labels = ["[O]"]
    for i, p in enumerate(w.weights, start=1):
        for l in range(1, p):
            labels.append(f"[O(x{i})]" if l == 1 else f"[O({l}*x{i})]")
    labels.append("[O(c)]")
    return labels


def basis_elements(w: WeightType) -> list[LElement]:
    elements = [w.zero]
    for i, p in enumerate(w.weights, start=1):
        elements.extend(w.x(i, l) for l in range(1, p))
    elements.append(w.c)
    return elements


@dataclass(frozen=True, slots=True)
class K0Class:
    """Integer coordinates over the line-bundle basis of K_0."""

    weights: WeightType
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(int(v) for v in self.coords)
        if len(coords) != basis_size(self.weights):
            raise ValueError(f"expected {basis_size(self.weights)} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, w: WeightType) -> K0Class:
        return cls(w, (0,) * basis_size(w))

    def _check(self, other: K0Class) -> None:
        if not isinstance(other, K0Class) or other.weights != self.weights:
            raise WeightMismatchError("K0 classes over different weight types")

    def __add__(self, other: K0Class) -> K0Class:
        self._check(other)
        return K0Class(self.weights, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: K0Class) -> K0Class:
        self._check(other)
        return K0Class(self.weights, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> K0Class:
        return K0Class(self.weights, tuple(-a for a in self.coords))

    def __rmul__(self, m: int) -> K0Class:
        return K0Class(self.weights, tuple(m * a for a in self.coords))

    @property
    def rank(self) -> int:
        """Rank, the coefficient sum (every basis element has rank one)."""
        return sum(self.coords)

    def __str__(self) -> str:
        pieces: list[str] = []
        for coefficient, label in zip(self.coords, basis_labels(self.weights)):
            if coefficient == 0:
                continue
            term = f"{abs(coefficient)}*{label}"
            if not pieces:
                pieces.append(f"-{term}" if coefficient < 0 else term)
            else:
                pieces.append(f" - {term}" if coefficient < 0 else f" + {term}")
        return "".join(pieces) if pieces else "0"


def k0_class_line(w: WeightType, x: LElement) -> K0Class:
    """[O(x)] = sum [O(l_i x_i)] + l [O(c)] - (l + t - 1)[O].

    With t = 3 this is the familiar -(l + 2)[O]; terms with l_i = 0 are [O].
    Any t >= 2 is accepted: only the Hall formulas require three weights, so
    classes for two-point weight types stay available to euler-form callers.
    """
    if x.weights != w:
        raise WeightMismatchError("twist belongs to another weight type")
    coords = [0] * basis_size(w)
    for i, l_i in enumerate(x.l, start=1):
        coords[basis_index(w, i, l_i)] += 1
    coords[-1] += x.lc
    coords[0] -= x.lc + w.t - 1
    return K0Class(w, tuple(coords))


def delta(w: WeightType) -> K0Class:
    """[O(c)] - [O], the class of a degree-one point."""
    return k0_class_line(w, w.c) - k0_class_line(w, w.zero)


@lru_cache(maxsize=64)
def euler_gram(w: WeightType) -> np.ndarray:
    """Euler form on the basis, as an exact object-dtype matrix."""
    basis = basis_elements(w)
    size = len(basis)
    gram = np.zeros((size, size), dtype=object)
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            dims = line_hom_ext_dims(w, x, y)
            gram[a, b] = dims.dim_hom - dims.dim_ext
    logger.debug("Euler Gram matrix for weights %s built (%d x %d)", w, size, size)
    return gram


def euler_form(a: K0Class, b: K0Class) -> int:
    """<a, b> = dim Hom - dim Ext^1, extended bilinearly."""
    a._check(b)
    gram = euler_gram(a.weights)
    left = np.array(a.coords, dtype=object)
    right = np.array(b.coords, dtype=object)
    return int(left.dot(gram).dot(right))


def symmetric_form(a: K0Class, b: K0Class) -> int:
    return euler_form(a, b) + euler_form(b, a)


def require_three_weights(w: WeightType, what: str) -> None:
    if w.t != 3:
        raise UnsupportedWeightError(
            f"{what} needs exactly three weights, got {w}", reason="t != 3"
        )
