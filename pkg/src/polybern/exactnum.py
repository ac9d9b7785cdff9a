"""Exact arithmetic: integer and rational polynomials in ``x`` and truncated
bivariate series in ``X, Y`` whose coefficients are rational polynomials.

Coefficients are stored ascending (``coeffs[i]`` multiplies ``x**i``) with no
trailing zeros, so the zero polynomial is the empty tuple and has degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import OrderMismatchError

__all__ = [
    "Poly", "RatPoly", "BiSeries",
    "poly_add", "poly_mul", "poly_eval", "bs_mul",
]


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _convolve(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


class _PolyBase:
    coeffs: tuple

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self._coerce(c) for c in self.coeffs))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c=1):
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other):
        if isinstance(other, _PolyBase):
            if type(other) is not type(self) and isinstance(other, RatPoly):
                return RatPoly(self.coeffs), other
            return self, type(self)(other.coeffs)
        if isinstance(other, (int, Fraction)):
            if isinstance(other, Fraction) and not isinstance(self, RatPoly):
                return RatPoly(self.coeffs), RatPoly((other,))
            return self, type(self)((other,))
        return None

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        a, b = lifted
        n = max(len(a.coeffs), len(b.coeffs))
        pa = a.coeffs + (0,) * (n - len(a.coeffs))
        pb = b.coeffs + (0,) * (n - len(b.coeffs))
        return type(a)(x + y for x, y in zip(pa, pb))

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-c for c in self.coeffs)

    def __sub__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        a, b = lifted
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        a, b = lifted
        return type(a)(_convolve(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __eq__(self, other):
        if isinstance(other, _PolyBase):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def to_list(self) -> list:
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True, eq=False, repr=True)
class Poly(_PolyBase):
    """Polynomial in ``x`` with arbitrary-precision integer coefficients."""

    coeffs: tuple = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                return int(c)
            raise TypeError(f"Poly coefficients must be integers, got {c!r}")
        return c

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> Poly:
        return cls(tuple(coeffs))


@dataclass(frozen=True, eq=False, repr=True)
class RatPoly(_PolyBase):
    """Polynomial in ``x`` with exact rational coefficients."""

    coeffs: tuple = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, float):
            raise TypeError("floating point coefficients are not allowed")
        return Fraction(c)

    def to_poly(self) -> Poly:
        """Convert to an integer polynomial; raises if a coefficient is not integral."""
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
        return Poly(tuple(int(c) for c in self.coeffs))

    def scale(self, c) -> RatPoly:
        c = Fraction(c)
        return RatPoly(tuple(a * c for a in self.coeffs))


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_eval(p: Poly, v: int) -> int:
    return p(v)


Coefficient = Union[RatPoly, Poly, Fraction, int]


def _as_ratpoly(c: Coefficient) -> RatPoly:
    if isinstance(c, RatPoly):
        return c
    if isinstance(c, Poly):
        return RatPoly(c.coeffs)
    return RatPoly((c,))


@dataclass(frozen=True)
class BiSeries:
    """Truncated series ``sum coeff[i][j] X^i Y^j`` for ``i <= order_x``, ``j <= order_y``."""

    order_x: int
    order_y: int
    coeff: tuple

    def __post_init__(self):
        if self.order_x < 0 or self.order_y < 0:
            raise ValueError("truncation orders must be non-negative")
        rows = tuple(tuple(_as_ratpoly(c) for c in row) for row in self.coeff)
        if len(rows) != self.order_x + 1 or any(len(r) != self.order_y + 1 for r in rows):
            raise ValueError("coefficient grid does not match truncation orders")
        object.__setattr__(self, "coeff", rows)

    @classmethod
    def from_function(cls, order_x: int, order_y: int,
                      f: Callable[[int, int], Coefficient]) -> BiSeries:
        return cls(order_x, order_y,
                   tuple(tuple(f(i, j) for j in range(order_y + 1)) for i in range(order_x + 1)))

    @classmethod
    def zero(cls, order_x: int, order_y: int) -> BiSeries:
        return cls.from_function(order_x, order_y, lambda i, j: 0)

    @classmethod
    def one(cls, order_x: int, order_y: int) -> BiSeries:
        return cls.from_function(order_x, order_y, lambda i, j: 1 if i == j == 0 else 0)

    @classmethod
    def from_terms(cls, order_x: int, order_y: int,
                   terms: Iterable[tuple[int, int, Coefficient]]) -> BiSeries:
        grid = [[RatPoly() for _ in range(order_y + 1)] for _ in range(order_x + 1)]
        for i, j, c in terms:
            if i <= order_x and j <= order_y:
                grid[i][j] = grid[i][j] + _as_ratpoly(c)
        return cls(order_x, order_y, tuple(map(tuple, grid)))

    def __getitem__(self, ij: tuple[int, int]) -> RatPoly:
        i, j = ij
        return self.coeff[i][j]

    def _check(self, other: BiSeries):
        if (self.order_x, self.order_y) != (other.order_x, other.order_y):
            raise OrderMismatchError(
                f"orders ({self.order_x},{self.order_y}) and ({other.order_x},{other.order_y}) differ")

    def __add__(self, other: BiSeries) -> BiSeries:
        self._check(other)
        return BiSeries.from_function(self.order_x, self.order_y,
                                      lambda i, j: self.coeff[i][j] + other.coeff[i][j])

    def __neg__(self) -> BiSeries:
        return BiSeries.from_function(self.order_x, self.order_y, lambda i, j: -self.coeff[i][j])

    def __sub__(self, other: BiSeries) -> BiSeries:
        return self + (-other)

    def scale(self, c: Coefficient) -> BiSeries:
        c = _as_ratpoly(c)
        return BiSeries.from_function(self.order_x, self.order_y, lambda i, j: self.coeff[i][j] * c)

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return bs_mul(self, other)
        if isinstance(other, (RatPoly, Poly, Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeff for c in row)


def bs_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    """Truncated product of two series with identical truncation orders."""
    a._check(b)
    ox, oy = a.order_x, a.order_y
    grid = [[RatPoly() for _ in range(oy + 1)] for _ in range(ox + 1)]
    for p in range(ox + 1):
        for q in range(oy + 1):
            apq = a.coeff[p][q]
            if apq.is_zero():
                continue
            for i in range(p, ox + 1):
                row_b = b.coeff[i - p]
                row_out = grid[i]
                for j in range(q, oy + 1):
                    bij = row_b[j - q]
                    if not bij.is_zero():
                        row_out[j] = row_out[j] + apq * bij
    return BiSeries(ox, oy, tuple(map(tuple, grid)))
