"""The rank-one abelian group L(p) grading a weighted projective line.

L(p) is generated by x_1..x_t subject to p_1 x_1 = ... = p_t x_t = c. Every
element has a unique normal form sum(l_i x_i) + l c with 0 <= l_i < p_i.
Indices i are 1-based throughout the public API.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from core.errors import HallEngineError

logger = logging.getLogger(__name__)


class WeightTypeError(HallEngineError):
    """Raised for an invalid weight sequence."""

    def __init__(self, message: str, weights: Sequence[int] = ()):
        self.weights = tuple(weights)
        super().__init__(message)


class WeightMismatchError(HallEngineError):
    """Raised when elements of different groups are combined."""

    def __init__(self, message: str, left: Optional[WeightType] = None, right: Optional[WeightType] = None):
        self.left = left
        self.right = right
        super().__init__(message)


@dataclass(frozen=True, slots=True)
class WeightType:
    """Ordered weights (p_1, ..., p_t), t >= 2, each p_i >= 2."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        weights = tuple(int(p) for p in self.weights)
        if len(weights) < 2:
            raise WeightTypeError(f"need at least two weights, got {weights}", weights)
        if any(p < 2 for p in weights):
            raise WeightTypeError(f"every weight must be >= 2, got {weights}", weights)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def of(cls, *weights: int) -> WeightType:
        return cls(tuple(weights))

    @property
    def t(self) -> int:
        return len(self.weights)

    def p(self, i: int) -> int:
        """Weight of the i-th exceptional point (1-based)."""
        self._check_index(i)
        return self.weights[i - 1]

    @property
    def zero(self) -> LElement:
        return LElement(self, (0,) * self.t, 0)

    @property
    def c(self) -> LElement:
        return LElement(self, (0,) * self.t, 1)

    @property
    def omega(self) -> LElement:
        """Dualizing element (t - 2)c - sum(x_i)."""
        return normal_form(self, [-1] * self.t, self.t - 2)

    def x(self, i: int, k: int = 1) -> LElement:
        """The element k x_i."""
        self._check_index(i)
        raw = [0] * self.t
        raw[i - 1] = k
        return normal_form(self, raw, 0)

    def element(self, raw: Sequence[int], raw_c: int = 0) -> LElement:
        return normal_form(self, raw, raw_c)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.t:
            raise IndexError(f"exceptional point index {i} outside 1..{self.t}")

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.weights)


@dataclass(frozen=True, slots=True)
class LElement:
    """Element of L(p) in normal form."""

    weights: WeightType
    l: tuple[int, ...]
    lc: int

    def __post_init__(self) -> None:
        l = tuple(int(v) for v in self.l)
        if len(l) != self.weights.t:
            raise WeightMismatchError(
                f"element has {len(l)} coefficients for {self.weights.t} weights"
            )
        for value, p in zip(l, self.weights.weights):
            if not 0 <= value < p:
                raise ValueError(f"coefficient {value} outside normal range 0..{p - 1}")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "lc", int(self.lc))

    def coefficient(self, i: int) -> int:
        """Normal-form coefficient of x_i (1-based)."""
        self.weights._check_index(i)
        return self.l[i - 1]

    @property
    def is_effective(self) -> bool:
        return self.lc >= 0

    def __add__(self, other: LElement) -> LElement:
        return combine(self, 1, other)

    def __sub__(self, other: LElement) -> LElement:
        return combine(self, -1, other)

    def __neg__(self) -> LElement:
        return combine(self.weights.zero, -1, self)

    def scaled(self, m: int) -> LElement:
        return combine(self.weights.zero, m, self)

    def __str__(self) -> str:
        return f"{','.join(str(v) for v in self.l)};{self.lc}"


def normal_form(w: WeightType, raw: Sequence[int], raw_c: int = 0) -> LElement:
    """Reduce sum(raw_i x_i) + raw_c c to normal form."""
    if len(raw) != w.t:
        raise WeightMismatchError(f"expected {w.t} coefficients, got {len(raw)}")
    lc = int(raw_c)
    l: list[int] = []
    for value, p in zip(raw, w.weights):
        carry, rest = divmod(int(value), p)
        l.append(rest)
        lc += carry
    return LElement(w, tuple(l), lc)


def combine(a: LElement, m: int, b: LElement) -> LElement:
    """a + m*b."""
    if a.weights != b.weights:
        raise WeightMismatchError(
            f"cannot combine elements over {a.weights} and {b.weights}", a.weights, b.weights
        )
    raw = [x + m * y for x, y in zip(a.l, b.l)]
    return normal_form(a.weights, raw, a.lc + m * b.lc)


def is_effective(x: LElement) -> bool:
    return x.is_effective


def leq(x: LElement, y: LElement) -> bool:
    """x <= y in the partial order whose positive cone is the effective elements."""
    return (y - x).is_effective


def elements_in_window(w: WeightType, lc_values: Iterable[int]) -> Iterable[LElement]:
    """All normal forms with lc in ``lc_values``."""
    for lc in lc_values:
        for l in product(*(range(p) for p in w.weights)):
            yield LElement(w, l, lc)


def parse_lelement(w: WeightType, text: str) -> LElement:
    """Parse ``"l1,...,lt;lc"``; raw values are reduced to normal form."""
    body = text.strip()
    if body.count(";") != 1:
        raise ValueError(f"expected 'l1,...,lt;lc', got {text!r}")
    coeff_text, c_text = body.split(";")
    try:
        raw = [int(v) for v in coeff_text.split(",")] if coeff_text.strip() else []
        raw_c = int(c_text)
    except ValueError:
        raise ValueError(f"non-integer entry in {text!r}") from None
    return normal_form(w, raw, raw_c)
