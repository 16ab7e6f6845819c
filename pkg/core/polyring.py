"""Exact Laurent polynomials and rational functions in one variable q.

Coefficients are arbitrary-precision integers. Rational functions are kept
reduced: the denominator is a polynomial with non-zero constant term and a
positive leading coefficient, and numerator and denominator share no common
factor. Structural equality is therefore mathematical equality.
"""

from __future__ import annotations

import logging
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

import sympy

from core.errors import HallEngineError

logger = logging.getLogger(__name__)

_Q = sympy.Symbol("q")

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<coef>\d+)(?P<star>\*)?)?(?P<var>q(?:\^(?P<exp>[+-]?\d+))?)?"
)
_RATIONAL_RE = re.compile(r"^\((?P<num>.*)\)/\((?P<den>.*)\)$")


class PolyParseError(HallEngineError):
    """Raised when polynomial text does not follow the term grammar."""

    def __init__(self, message: str, position: int = 0, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class PoleError(HallEngineError, ZeroDivisionError):
    """Raised when a value is evaluated at one of its poles."""


class InexactDivisionError(HallEngineError):
    """Raised when a quotient required to be a Laurent polynomial is not one."""


@dataclass(frozen=True, slots=True, eq=False)
class LaurentPoly:
    """Finite integer combination of powers q^e, e of either sign.

    ``terms`` holds ``(exponent, coefficient)`` pairs in descending exponent
    order without zero coefficients; any input is normalized on creation.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for exponent, coefficient in self.terms:
            merged[int(exponent)] = merged.get(int(exponent), 0) + int(coefficient)
        canonical = tuple(
            sorted(((e, c) for e, c in merged.items() if c != 0), reverse=True)
        )
        object.__setattr__(self, "terms", canonical)

    # --- Constructors ---

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(coeffs.items()))

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        return cls(((0, value),))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls(((exponent, coefficient),))

    @classmethod
    def q(cls) -> LaurentPoly:
        return cls.monomial(1)

    # --- Inspection ---

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Optional[int]:
        return self.terms[0][0] if self.terms else None

    @property
    def valuation(self) -> Optional[int]:
        return self.terms[-1][0] if self.terms else None

    def coefficient(self, exponent: int) -> int:
        return self.coeffs.get(exponent, 0)

    def shifted(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def evaluate(self, q_value: Union[int, Fraction]) -> Fraction:
        x = Fraction(q_value)
        if x == 0 and any(e < 0 for e, _ in self.terms):
            raise PoleError(f"{self} has a pole at q=0")
        return sum((Fraction(c) * x**e for e, c in self.terms), Fraction(0))

    # --- Arithmetic ---

    def __add__(self, other: object):
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return LaurentPoly(self.terms + rhs.terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: object):
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object):
        lhs = _coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object):
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        product: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in rhs.terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(product)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.terms) == 1 and self.terms[0][1] in (1, -1):
                (e, c), = self.terms
                return LaurentPoly.monomial(e * n, c ** (-n))
            raise ValueError("negative powers are only defined for unit monomials")
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def __truediv__(self, other: object):
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return make_fraction(self, rhs)

    def __rtruediv__(self, other: object):
        lhs = _coerce(other)
        if lhs is None:
            return NotImplemented
        return make_fraction(lhs, self)

    def exact_div(self, other: Union[LaurentPoly, int]) -> LaurentPoly:
        """Quotient that must stay inside the Laurent ring."""
        result = make_fraction(self, other)
        if isinstance(result, RationalFn):
            raise InexactDivisionError(f"({self}) / ({other}) is not a Laurent polynomial")
        return result

    # --- Comparison ---

    def __eq__(self, other: object) -> bool:
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return self.terms == rhs.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.q()


@dataclass(frozen=True, slots=True)
class RationalFn:
    """Reduced quotient of Laurent polynomials. Build with :func:`make_fraction`."""

    numerator: LaurentPoly
    denominator: LaurentPoly

    def evaluate(self, q_value: Union[int, Fraction]) -> Fraction:
        bottom = self.denominator.evaluate(q_value)
        if bottom == 0:
            raise PoleError(f"{format_poly(self)} has a pole at q={q_value}")
        return self.numerator.evaluate(q_value) / bottom

    def __add__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(self.numerator * d + c * self.denominator, self.denominator * d)

    __radd__ = __add__

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.numerator, self.denominator)

    def __sub__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(self.numerator * d - c * self.denominator, self.denominator * d)

    def __rsub__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(c * self.denominator - self.numerator * d, self.denominator * d)

    def __mul__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(self.numerator * c, self.denominator * d)

    __rmul__ = __mul__

    def __truediv__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(self.numerator * d, self.denominator * c)

    def __rtruediv__(self, other: object):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_fraction(c * self.denominator, d * self.numerator)

    def __str__(self) -> str:
        return format_poly(self)


PolyValue = Union[LaurentPoly, RationalFn]


def _coerce(value: object) -> Optional[LaurentPoly]:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return LaurentPoly.constant(value)
    return None


def _parts(value: object) -> Optional[tuple[LaurentPoly, LaurentPoly]]:
    if isinstance(value, RationalFn):
        return value.numerator, value.denominator
    poly = _coerce(value)
    return None if poly is None else (poly, ONE)


def _to_sympy(poly: LaurentPoly) -> sympy.Poly:
    """Shift to a polynomial with non-zero constant term."""
    shift = poly.valuation
    return sympy.Poly.from_dict(
        {(e - shift,): c for e, c in poly.terms}, _Q, domain=sympy.ZZ
    )


def _from_sympy(poly: sympy.Poly, shift: int) -> LaurentPoly:
    return LaurentPoly(tuple((monom[0] + shift, int(coeff)) for monom, coeff in poly.terms()))


def make_fraction(numerator: Union[LaurentPoly, int], denominator: Union[LaurentPoly, int]) -> PolyValue:
    """Reduce numerator/denominator; returns a LaurentPoly when the quotient is one."""
    top = _coerce(numerator)
    bottom = _coerce(denominator)
    if top is None or bottom is None:
        raise TypeError("make_fraction expects Laurent polynomials or integers")
    if bottom.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if top.is_zero:
        return ZERO
    shift = top.valuation - bottom.valuation
    n0, d0 = _to_sympy(top), _to_sympy(bottom)
    common = n0.gcd(d0)
    n1, d1 = n0.exquo(common), d0.exquo(common)
    if d1.LC() < 0:
        n1, d1 = -n1, -d1
    reduced_top = _from_sympy(n1, shift)
    reduced_bottom = _from_sympy(d1, 0)
    if reduced_bottom == ONE:
        return reduced_top
    return RationalFn(reduced_top, reduced_bottom)


_OPERATORS: dict[str, Callable] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def poly_arith(a: PolyValue, b: PolyValue, op: str) -> PolyValue:
    """Apply ``op`` (one of + - * /) exactly."""
    try:
        fn = _OPERATORS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return fn(a, b)


def poly_eval(p: PolyValue, q_value: Union[int, Fraction]) -> Fraction:
    return p.evaluate(q_value)


def equal_by_evaluation(a: LaurentPoly, b: LaurentPoly) -> bool:
    """Compare two Laurent polynomials at span + 1 distinct points."""
    exponents = [e for e, _ in a.terms + b.terms]
    if not exponents:
        return True
    span = max(exponents) - min(exponents)
    return all(a.evaluate(x) == b.evaluate(x) for x in range(2, span + 3))


# --- Text form ---


def format_poly(value: PolyValue) -> str:
    """Descending exponents, ``"q^2 - 2*q + 1"``; zero prints as ``"0"``."""
    if isinstance(value, RationalFn):
        return f"({format_poly(value.numerator)}) / ({format_poly(value.denominator)})"
    if value.is_zero:
        return "0"
    pieces: list[str] = []
    for index, (exponent, coefficient) in enumerate(value.terms):
        magnitude = abs(coefficient)
        if exponent == 0:
            body = str(magnitude)
        else:
            var = "q" if exponent == 1 else f"q^{exponent}"
            body = var if magnitude == 1 else f"{magnitude}*{var}"
        if index == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f" - {body}" if coefficient < 0 else f" + {body}")
    return "".join(pieces)


def parse_poly(text: str) -> PolyValue:
    """Inverse of :func:`format_poly`; whitespace is insignificant."""
    positions = [i for i, ch in enumerate(text) if not ch.isspace()]
    compact = "".join(text[i] for i in positions)
    positions.append(len(text))
    if not compact:
        raise PolyParseError("empty polynomial", 0, text)
    rational = _RATIONAL_RE.match(compact)
    if rational:
        top = _parse_laurent(rational.group("num"), rational.start("num"), positions, text)
        bottom = _parse_laurent(rational.group("den"), rational.start("den"), positions, text)
        if bottom.is_zero:
            raise PolyParseError("zero denominator", positions[rational.start("den")], text)
        return make_fraction(top, bottom)
    return _parse_laurent(compact, 0, positions, text)


def _parse_laurent(segment: str, offset: int, positions: list[int], text: str) -> LaurentPoly:
    if not segment:
        raise PolyParseError("empty polynomial", positions[offset], text)
    coeffs: dict[int, int] = {}
    index = 0
    while index < len(segment):
        where = positions[offset + index]
        match = _TERM_RE.match(segment, index)
        coef, star, var = match.group("coef"), match.group("star"), match.group("var")
        if not coef and not var:
            bad = segment[match.end()] if match.end() < len(segment) else "end of input"
            raise PolyParseError(f"expected a term, found {bad!r}", positions[offset + match.end()], text)
        if index > 0 and not match.group("sign"):
            raise PolyParseError("terms must be joined by '+' or '-'", where, text)
        if star and not var:
            raise PolyParseError("'*' must be followed by q", positions[offset + match.end()], text)
        if coef and var and not star:
            raise PolyParseError("coefficient and q must be joined by '*'", where, text)
        value = int(coef) if coef else 1
        if match.group("sign") == "-":
            value = -value
        exponent = 0
        if var:
            exponent = int(match.group("exp")) if match.group("exp") is not None else 1
        coeffs[exponent] = coeffs.get(exponent, 0) + value
        index = match.end()
    return LaurentPoly.from_dict(coeffs)
