"""Reference values of the symmetrized poly-Bernoulli polynomial.

Three routes that share nothing but :mod:`polybern.exactnum`:

* :func:`spb_formula` -- the closed Stirling-number sum,
* :func:`spb_recurrence` -- the recursion in ``k``,
* :func:`egf_check` -- coefficient extraction from the truncated exponential
  generating function ``e^(X+Y) / (e^X + e^Y - e^(X+Y))^(x+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactnum import BiSeries, Poly, RatPoly

__all__ = [
    "stirling2", "binomial", "rising_factorial", "spb_formula", "spb_recurrence",
    "spb_table", "egf_check", "EgfReport",
]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, by S(n+1,k) = S(n,k-1) + k S(n,k)."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 is defined for non-negative arguments")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    if k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def rising_factorial(j: int) -> Poly:
    """(x+1)(x+2)...(x+j); the empty product for j = 0."""
    if j < 0:
        raise ValueError("j must be non-negative")
    if j == 0:
        return Poly((1,))
    return rising_factorial(j - 1) * Poly((j, 1))


@lru_cache(maxsize=None)
def spb_formula(n: int, k: int) -> Poly:
    total = Poly()
    for j in range(min(n, k) + 1):
        c = math.factorial(j) * stirling2(n + 1, j + 1) * stirling2(k + 1, j + 1)
        total = total + rising_factorial(j) * c
    return total


@lru_cache(maxsize=None)
def spb_recurrence(n: int, k: int) -> Poly:
    if n == 0 or k == 0:
        return Poly((1,))
    x = Poly.x()
    total = spb_recurrence(n, k - 1) * (n + 1)
    lin = Poly()
    for j in range(n):
        lin = lin + spb_recurrence(j, k - 1) * binomial(n, j)
    total = total + x * lin
    for j in range(1, n):
        total = total + spb_recurrence(j, k - 1) * binomial(n, j - 1)
    return total


def spb_table(max_n: int, max_k: int) -> list[list[Poly]]:
    return [[spb_formula(n, k) for k in range(max_k + 1)] for n in range(max_n + 1)]


@dataclass
class EgfReport:
    order_x: int
    order_y: int
    cells: dict = field(default_factory=dict)       # (n, k) -> bool
    extracted: dict = field(default_factory=dict)   # (n, k) -> Poly

    @property
    def passed(self) -> bool:
        return all(self.cells.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return sorted(nk for nk, ok in self.cells.items() if not ok)

    def to_json(self) -> dict:
        return {
            "orderX": self.order_x,
            "orderY": self.order_y,
            "passed": self.passed,
            "cells": [
                {"n": n, "k": k, "pass": ok, "coeffs": self.extracted[n, k].to_list()}
                for (n, k), ok in sorted(self.cells.items())
            ],
        }


def _exp_series(ox: int, oy: int, in_x: bool, in_y: bool) -> BiSeries:
    def coeff(i, j):
        if (i and not in_x) or (j and not in_y):
            return 0
        return Fraction(1, math.factorial(i) * math.factorial(j))
    return BiSeries.from_function(ox, oy, coeff)


def egf_series(order_x: int, order_y: int) -> BiSeries:
    """Truncation of e^(X+Y) (1 + U)^-(x+1) with U = e^X + e^Y - e^(X+Y) - 1."""
    ex = _exp_series(order_x, order_y, True, False)
    ey = _exp_series(order_x, order_y, False, True)
    exy = _exp_series(order_x, order_y, True, True)
    one = BiSeries.one(order_x, order_y)
    u = ex + ey - exy - one

    # U has no constant term, so U^m vanishes after truncation once m > order_x + order_y.
    acc = BiSeries.zero(order_x, order_y)
    u_pow = one
    for m in range(order_x + order_y + 1):
        c = RatPoly(rising_factorial(m).coeffs).scale(Fraction((-1) ** m, math.factorial(m)))
        acc = acc + u_pow.scale(c)
        u_pow = u_pow * u
        if u_pow.is_zero():
            break
    return exy * acc


def egf_check(order_x: int, order_y: int) -> EgfReport:
    if order_x < 0 or order_y < 0:
        raise ValueError("orders must be non-negative")
    series = egf_series(order_x, order_y)
    report = EgfReport(order_x, order_y)
    for n in range(order_x + 1):
        for k in range(order_y + 1):
            scaled = series[n, k].scale(math.factorial(n) * math.factorial(k))
            try:
                got = scaled.to_poly()
            except ValueError:
                report.cells[n, k] = False
                report.extracted[n, k] = Poly()
                continue
            report.extracted[n, k] = got
            report.cells[n, k] = got == spb_formula(n, k)
    return report
