"""Catalog of spaces with known Poincare polynomials.

A Poincare polynomial here records rational cohomology: the coefficient
of q^j is the 2j-th Betti number, and all odd Betti numbers of the
spaces in this package vanish.  Everything is exact; builders either
return a valid polynomial or raise.

The catalog covers projective spaces (including weighted ones, whose
rational cohomology agrees with the straight projective space of the
same dimension), Grassmannians via the Gaussian binomial product
formula, the space of lines in a Grassmannian and of lines through a
fixed point, the two-component space of planes, and the stable-map
spaces of degree 2 and 3 rational curves.
"""

from __future__ import annotations

import dataclasses
import functools
from collections.abc import Iterable

from .polyring import ONE, ZERO, IntPoly, RatExpr, exact_div, monomial


class InvalidParameters(ValueError):
    """Arguments outside the domain a builder is defined on."""


class DimensionMismatch(ValueError):
    """Claimed dimension disagrees with the computed degree."""


class NegativeBetti(ValueError):
    """A coefficient that should be a Betti number came out negative."""


@dataclasses.dataclass(frozen=True)
class PoincarePoly:
    """A polynomial with the bookkeeping of the space it came from.

    dim is the complex dimension (the q-degree) and components the
    number of connected pieces (the constant coefficient).  The empty
    space is the zero polynomial with dim 0 and components 0.
    """

    poly: IntPoly
    dim: int
    components: int

    @classmethod
    def from_poly(
        cls,
        poly: IntPoly,
        claimed_dim: int | None = None,
        what: str = "space",
    ) -> PoincarePoly:
        for j, c in enumerate(poly.coeffs):
            if c < 0:
                raise NegativeBetti(
                    f"{what}: coefficient of q^{j} is {c}"
                )
        dim = max(poly.degree, 0)
        if claimed_dim is not None and not poly.is_zero() and dim != claimed_dim:
            raise DimensionMismatch(
                f"{what}: degree {dim} but expected dimension {claimed_dim}"
            )
        return cls(poly=poly, dim=dim, components=poly.coefficient(0))

    def is_empty(self) -> bool:
        return self.poly.is_zero()

    @property
    def q_coefficients(self) -> tuple[int, ...]:
        return self.poly.coeffs

    def betti_numbers(self) -> list[int]:
        """Full Betti list b_0, b_1, ..., b_{2 dim}; odd entries are 0."""
        if self.is_empty():
            return []
        out: list[int] = []
        for c in self.poly.coeffs:
            out.append(c)
            out.append(0)
        return out[:-1]

    def euler(self) -> int:
        return self.poly.evaluate(1)

    def is_palindromic(self) -> bool:
        return self.poly.is_palindromic()

    def __mul__(self, other: PoincarePoly) -> PoincarePoly:
        """Total space of a fibration: polynomials multiply."""
        return PoincarePoly.from_poly(self.poly * other.poly)

    def __add__(self, other: PoincarePoly) -> PoincarePoly:
        """Disjoint union: polynomials add, components add."""
        return PoincarePoly.from_poly(self.poly + other.poly)

    def __str__(self) -> str:
        return str(self.poly)


EMPTY = PoincarePoly(poly=ZERO, dim=0, components=0)
POINT = PoincarePoly(poly=ONE, dim=0, components=1)


def _one_minus(j: int) -> IntPoly:
    """1 - q^j (the zero polynomial when j = 0)."""
    return ONE - monomial(j)


def _range_product(lo: int, hi: int) -> IntPoly:
    """Product of (1 - q^i) for lo <= i <= hi, empty product when hi < lo."""
    out = ONE
    for i in range(lo, hi + 1):
        out = out * _one_minus(i)
    return out


def projective(m: int) -> PoincarePoly:
    """Projective space of dimension m, so 1 + q + ... + q^m.

    >>> str(projective(2))
    '1 + q + q^2'
    """
    if m < 0:
        raise InvalidParameters(f"projective space of dimension {m}")
    return PoincarePoly(poly=IntPoly([1] * (m + 1)), dim=m, components=1)


def weighted_projective(weights: Iterable[int]) -> PoincarePoly:
    """Weighted projective space.

    Rational cohomology does not see the weights, so this is the
    straight projective space of dimension len(weights) - 1.
    """
    ws = tuple(weights)
    if not ws or any(w < 1 for w in ws):
        raise InvalidParameters(f"bad weights {ws}")
    return projective(len(ws) - 1)


@functools.lru_cache(maxsize=None)
def grassmannian(k: int, n: int) -> PoincarePoly:
    """Grassmannian of k-dimensional subspaces of an n-dimensional space.

    Computed by the Gaussian binomial product formula, with the full
    numerator and denominator assembled first and divided exactly once.
    Out-of-range k yields the empty space as a value, which downstream
    formulas rely on to drop vacuous terms.

    >>> str(grassmannian(2, 4))
    '1 + q + 2q^2 + q^3 + q^4'
    """
    if n < 0:
        raise InvalidParameters(f"grassmannian({k}, {n})")
    if k < 0 or k > n:
        return EMPTY
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _one_minus(n - i + 1)
        den = den * _one_minus(i)
    return PoincarePoly.from_poly(
        exact_div(num, den), claimed_dim=k * (n - k), what=f"grassmannian({k},{n})"
    )


@functools.lru_cache(maxsize=None)
def fano_lines(k: int, n: int) -> PoincarePoly:
    """Space of lines in grassmannian(k, n).

    A line sits inside a unique (k+1)-dimensional envelope and contains
    a unique (k-1)-dimensional core, which fibers the space over
    grassmannian(k+1, n) with grassmannian(k-1, k+1) fibers.
    """
    if not 1 <= k <= n - 1:
        raise InvalidParameters(f"fano_lines({k}, {n})")
    value = grassmannian(k + 1, n) * grassmannian(k - 1, k + 1)
    expected = (k + 1) * (n - k - 1) + 2 * (k - 1)
    return PoincarePoly.from_poly(
        value.poly, claimed_dim=expected, what=f"fano_lines({k},{n})"
    )


@functools.lru_cache(maxsize=None)
def fano_planes(k: int, n: int) -> PoincarePoly:
    """Space of planes in grassmannian(k, n); up to two disjoint pieces.

    One piece parametrizes planes whose members share a (k-2)-core
    inside a common (k+1)-envelope, the other planes with a (k-1)-core
    inside a (k+2)-envelope.  Either piece may be empty; if both are,
    the result is the empty space.
    """
    if not 1 <= k <= n - 1:
        raise InvalidParameters(f"fano_planes({k}, {n})")
    total = EMPTY
    if k >= 2:
        total = total + grassmannian(k - 2, k + 1) * grassmannian(k + 1, n)
    if n >= k + 2:
        total = total + grassmannian(k - 1, k + 2) * grassmannian(k + 2, n)
    return total


@functools.lru_cache(maxsize=None)
def lines_through_point(k: int, n: int) -> PoincarePoly:
    """Lines in grassmannian(k, n) through a fixed point.

    (1 - q^(n-k)) (1 - q^k) / (1 - q)^2, of dimension n - 2.  Together
    with the Grassmannian itself this multiplies out to the polynomial
    of the full space of pointed lines; see the identity tested in the
    verification suites.
    """
    if not 1 <= k <= n - 1:
        raise InvalidParameters(f"lines_through_point({k}, {n})")
    value = exact_div(_one_minus(n - k) * _one_minus(k), _one_minus(1) ** 2)
    return PoincarePoly.from_poly(
        value, claimed_dim=n - 2, what=f"lines_through_point({k},{n})"
    )


def stable_maps_p1(d: int) -> PoincarePoly:
    """Stable-map space of degree d rational curves on a line, d = 2 or 3."""
    if d == 2:
        return PoincarePoly(poly=IntPoly([1, 1, 1]), dim=2, components=1)
    if d == 3:
        return PoincarePoly(poly=IntPoly([1, 1, 2, 1, 1]), dim=4, components=1)
    raise InvalidParameters(f"stable_maps_p1({d})")


@dataclasses.dataclass(frozen=True)
class KernelWeights:
    """The four weight polynomials of the degree 3 stable-map kernel."""

    f1: IntPoly
    f2: IntPoly
    f3: IntPoly
    f4: IntPoly


DEGREE3_KERNEL = KernelWeights(
    f1=IntPoly([1, 0, 2, 3, 3, -1, 1, -3, -3, -2, 0, -1]),
    f2=IntPoly([1, 0, 5, 2, -2, -5, 0, -1]),
    f3=IntPoly([2, 0, 3, 1, -1, -3, 0, -2]),
    f4=IntPoly([1, 6, 3, 2, -2, -3, -6, -1]),
)


def _check_kernel_weights() -> None:
    # Each weight vanishes at q = 1 and is anti-palindromic; a typo in
    # the hard-coded coefficients would almost surely break one of these.
    for name in ("f1", "f2", "f3", "f4"):
        w: IntPoly = getattr(DEGREE3_KERNEL, name)
        if w.evaluate(1) != 0:
            raise RuntimeError(f"kernel weight {name} does not vanish at 1")
        if w.reversed() != -w:
            raise RuntimeError(f"kernel weight {name} is not anti-palindromic")


_check_kernel_weights()


def _validate_stable_maps_args(k: int, n: int, d: int) -> None:
    if d not in (2, 3):
        raise InvalidParameters(f"degree {d} not supported (2 or 3 only)")
    if not 1 <= k <= n - 1:
        raise InvalidParameters(f"grassmannian({k}, {n}) has no moduli here")
    if n < 3:
        raise InvalidParameters(f"need an ambient space of dimension >= 2, got n = {n}")


def _stable_maps_gr2_ratexpr(k: int, n: int) -> RatExpr:
    bracket = (
        (ONE + monomial(n)) * (ONE + monomial(3))
        - monomial(1) * (ONE + monomial(1)) * (monomial(k) + monomial(n - k))
    )
    num = bracket * _range_product(k, n)
    den = _one_minus(1) ** 2 * _one_minus(2) ** 2 * _range_product(1, n - k - 1)
    return RatExpr(num, den)


def _stable_maps_gr3_kernel(k: int, n: int) -> RatExpr:
    w = DEGREE3_KERNEL
    num = (
        w.f1 * (ONE + monomial(2 * n))
        + (ONE + monomial(1)) ** 2
        * (
            w.f2 * monomial(n) * (ONE + monomial(2))
            - w.f3 * monomial(1) * (ONE + monomial(n)) * (monomial(k) + monomial(n - k))
        )
        + w.f4 * monomial(2) * (monomial(2 * k) + monomial(2 * n - 2 * k))
    )
    den = _one_minus(1) * _one_minus(2) ** 2 * _one_minus(3) ** 2
    return RatExpr(num, den)


def _fano_lines_ratexpr(k: int, n: int) -> RatExpr:
    num = ONE
    den = ONE
    for i in range(1, k + 2):
        num = num * _one_minus(n - i + 1)
        den = den * _one_minus(i)
    for i in range(1, k):
        num = num * _one_minus(k - i + 2)
        den = den * _one_minus(i)
    return RatExpr(num, den)


@functools.lru_cache(maxsize=None)
def stable_maps_gr(k: int, n: int, d: int) -> PoincarePoly:
    """Stable-map space of degree d rational curves in grassmannian(k, n).

    Closed form: a low-degree kernel divided by cyclotomic-style
    factors, times (for d = 3) the polynomial of the space of lines.
    The result has dimension k(n-k) + dn - 3 and the degree is checked.
    """
    _validate_stable_maps_args(k, n, d)
    if d == 2:
        expr = _stable_maps_gr2_ratexpr(k, n)
    else:
        expr = _stable_maps_gr3_kernel(k, n) * _fano_lines_ratexpr(k, n)
    value = expr.to_poly()
    return PoincarePoly.from_poly(
        value,
        claimed_dim=k * (n - k) + d * n - 3,
        what=f"stable_maps_gr({k},{n},{d})",
    )
