"""Exact univariate polynomial arithmetic over the integers.

Polynomials live in a formal variable q and are stored densely with
arbitrary-precision integer coefficients.  Downstream the coefficient of
q^j is a Betti number, so every operation here must be exact: no floats,
no modular tricks, and division either succeeds with remainder zero or
raises.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Iterable


class NonExactDivision(ArithmeticError):
    """Polynomial division required exactness but a remainder survived."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


@dataclasses.dataclass(init=False, frozen=True)
class IntPoly:
    """Dense integer polynomial; ``coeffs[j]`` multiplies q^j.

    The representation is canonical: trailing zeros are stripped and the
    zero polynomial is the empty tuple, so ``==`` is structural equality.

    >>> IntPoly([1, 1]) * IntPoly([1, -1])
    IntPoly('1 - q^2')
    >>> IntPoly([1, 2, 1]).degree
    2
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, j: int) -> int:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def __add__(self, other: int | IntPoly) -> IntPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(
            self.coefficient(j) + other.coefficient(j) for j in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: int | IntPoly) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int | IntPoly) -> IntPoly:
        return _as_poly(other) + (-self)

    def __mul__(self, other: int | IntPoly) -> IntPoly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = IntPoly([1])
        for _ in range(exponent):
            result = result * self
        return result

    def __truediv__(self, other: int | IntPoly) -> IntPoly:
        return exact_div(self, _as_poly(other))

    def shift(self, j: int) -> IntPoly:
        """Multiply by q^j."""
        if self.is_zero():
            return self
        return IntPoly((0,) * j + self.coeffs)

    def evaluate(self, x: int) -> int:
        """Value at an integer point, by Horner's rule.

        >>> IntPoly([1, 1, 2, 1, 1]).evaluate(1)
        6
        """
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self) -> IntPoly:
        """Coefficient reversal q^deg * p(1/q)."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def is_palindromic(self) -> bool:
        """Whether the coefficient sequence reads the same both ways.

        The zero polynomial counts as palindromic.
        """
        return self.coeffs == tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                var = "q" if j == 1 else f"q^{j}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"


ZERO = IntPoly()
ONE = IntPoly([1])


def _as_poly(x: int | IntPoly) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")


def monomial(j: int, c: int = 1) -> IntPoly:
    """c * q^j."""
    return IntPoly((0,) * j + (c,))


def arith(a: IntPoly, b: IntPoly, operator: str) -> IntPoly:
    """Named ring operation: one of "add", "sub" or "mul"."""
    if operator == "add":
        return a + b
    if operator == "sub":
        return a - b
    if operator == "mul":
        return a * b
    raise ValueError(f"unknown operator {operator!r}")


def exact_div(num: IntPoly, den: IntPoly) -> IntPoly:
    """Quotient num/den when den divides num over the integers.

    Synthetic long division from the top coefficient down.  Quotient
    coefficients are forced, so the first non-integer step or a nonzero
    final remainder proves inexactness and raises NonExactDivision.

    >>> exact_div(IntPoly([1, 0, 0, 0, -1]), IntPoly([1, -1]))
    IntPoly('1 + q + q^2 + q^3')
    """
    if den.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if num.is_zero():
        return ZERO
    if num.degree < den.degree:
        raise NonExactDivision(
            f"({num}) / ({den}): degree of the numerator is too small"
        )
    rem = list(num.coeffs)
    dd = den.degree
    lead = den.coeffs[-1]
    quot = [0] * (num.degree - dd + 1)
    for i in range(num.degree - dd, -1, -1):
        c = rem[i + dd]
        if c == 0:
            continue
        if c % lead != 0:
            raise NonExactDivision(
                f"({num}) / ({den}): coefficient {c} not divisible by {lead}"
            )
        t = c // lead
        quot[i] = t
        for j, dc in enumerate(den.coeffs):
            rem[i + j] -= t * dc
    if any(rem):
        raise NonExactDivision(f"({num}) / ({den}): remainder {IntPoly(rem)}")
    return IntPoly(quot)


def palindrome_check(p: IntPoly) -> bool:
    return p.is_palindromic()


def evaluate(p: IntPoly, x: int) -> int:
    return p.evaluate(x)


@dataclasses.dataclass(frozen=True)
class RatExpr:
    """Lazily held quotient of two integer polynomials.

    Products and sums are formed without any reduction; the single exact
    division happens in :meth:`to_poly`.  This lets intermediate factors
    be honestly non-polynomial (for instance (1-q)/(1-q^2)) as long as
    the assembled expression divides out in the end.
    """

    num: IntPoly
    den: IntPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise DivisionByZero("rational expression with zero denominator")

    def __mul__(self, other: int | IntPoly | RatExpr) -> RatExpr:
        other = _as_ratexpr(other)
        return RatExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other: int | IntPoly | RatExpr) -> RatExpr:
        other = _as_ratexpr(other)
        return RatExpr(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RatExpr:
        return RatExpr(-self.num, self.den)

    def __sub__(self, other: int | IntPoly | RatExpr) -> RatExpr:
        return self + (-_as_ratexpr(other))

    def __rsub__(self, other: int | IntPoly | RatExpr) -> RatExpr:
        return _as_ratexpr(other) + (-self)

    def to_poly(self) -> IntPoly:
        """Collapse to an IntPoly by one exact division."""
        return exact_div(self.num, self.den)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def _as_ratexpr(x: int | IntPoly | RatExpr) -> RatExpr:
    if isinstance(x, RatExpr):
        return x
    return RatExpr(_as_poly(x), ONE)
