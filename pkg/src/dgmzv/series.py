"""Truncated formal power series over Q, and the depth generating functions.

``PowerSeries`` is univariate in x.  ``BiSeries`` is a rectangular grid of
coefficients in (x, y), built here as a list of y-slices (each slice a
``PowerSeries`` in x).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

DEFAULT_ORDER_X = 40
DEFAULT_ORDER_Y = 6


@dataclass(frozen=True)
class PowerSeries:
    truncation_order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.truncation_order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(self.coefficients) != self.truncation_order + 1:
            raise ValueError("need exactly truncation_order + 1 coefficients")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, order: int) -> "PowerSeries":
        c = [Fraction(x) for x in coeffs[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        return cls(order, tuple(c))

    @classmethod
    def from_function(cls, f: Callable[[int], int], order: int) -> "PowerSeries":
        return cls(order, tuple(Fraction(f(n)) for n in range(order + 1)))

    @classmethod
    def constant(cls, c, order: int) -> "PowerSeries":
        return cls.from_coefficients([c], order)

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n <= self.truncation_order:
            return self.coefficients[n]
        raise IndexError(f"x^{n} is beyond truncation order {self.truncation_order}")

    def _order_with(self, other: "PowerSeries") -> int:
        return min(self.truncation_order, other.truncation_order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._order_with(other)
        return PowerSeries(n, tuple(self.coefficients[i] + other.coefficients[i] for i in range(n + 1)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._order_with(other)
        return PowerSeries(n, tuple(self.coefficients[i] - other.coefficients[i] for i in range(n + 1)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.truncation_order, tuple(-c for c in self.coefficients))

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries(self.truncation_order, tuple(c * a for a in self.coefficients))
        n = self._order_with(other)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                ai = a[i]
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return PowerSeries(n, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            return inverse(self) ** (-k)
        out = PowerSeries.constant(1, self.truncation_order)
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(order, self.coefficients[: order + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a - b


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def inverse(a: PowerSeries) -> PowerSeries:
    c0 = a.coefficients[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = a.truncation_order
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / c0
    for k in range(1, n + 1):
        s = sum((a.coefficients[i] * out[k - i] for i in range(1, k + 1) if a.coefficients[i]), Fraction(0))
        out[k] = -s / c0
    return PowerSeries(n, tuple(out))


# --- the named series --------------------------------------------------------

def es(order: int = DEFAULT_ORDER_X) -> PowerSeries:
    """x^2 / (1 - x^2): even single zetas."""
    return PowerSeries.from_function(lambda n: int(n >= 2 and n % 2 == 0), order)


def os(order: int = DEFAULT_ORDER_X) -> PowerSeries:
    """x^3 / (1 - x^2): odd single zetas."""
    return PowerSeries.from_function(lambda n: int(n >= 3 and n % 2 == 1), order)


def _cusp_count(n: int) -> int:
    # coefficient of x^n in x^12 / ((1-x^4)(1-x^6)): solutions of 4a + 6b = n - 12
    m = n - 12
    if m < 0:
        return 0
    return sum(1 for a in range(m // 4 + 1) if (m - 4 * a) % 6 == 0)


def ss(order: int = DEFAULT_ORDER_X) -> PowerSeries:
    """x^12 / ((1-x^4)(1-x^6)): cusp forms for SL2(Z)."""
    return PowerSeries.from_function(_cusp_count, order)


# --- bivariate ---------------------------------------------------------------

@dataclass(frozen=True)
class BiSeries:
    truncation_order_x: int
    truncation_order_y: int
    coefficients: tuple[tuple[Fraction, ...], ...]  # indexed [x-degree][y-degree]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation_order_x + 1 or any(
            len(row) != self.truncation_order_y + 1 for row in self.coefficients
        ):
            raise ValueError("coefficient grid must be (order_x+1) x (order_y+1)")

    @classmethod
    def from_slices(cls, slices: Sequence[PowerSeries], order_x: int) -> "BiSeries":
        order_y = len(slices) - 1
        grid = tuple(tuple(s[n] for s in slices) for n in range(order_x + 1))
        return cls(order_x, order_y, grid)

    def coefficient(self, n: int, r: int) -> Fraction:
        return self.coefficients[n][r]

    def slice(self, r: int) -> PowerSeries:
        """The coefficient of y^r, as a series in x."""
        return PowerSeries(self.truncation_order_x, tuple(row[r] for row in self.coefficients))

    def slices(self) -> list[PowerSeries]:
        return [self.slice(r) for r in range(self.truncation_order_y + 1)]

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        nx = min(self.truncation_order_x, other.truncation_order_x)
        ny = min(self.truncation_order_y, other.truncation_order_y)
        a = [self.slice(r).truncate(nx) for r in range(ny + 1)]
        b = [other.slice(r).truncate(nx) for r in range(ny + 1)]
        out = []
        for r in range(ny + 1):
            acc = PowerSeries.constant(0, nx)
            for i in range(r + 1):
                acc = acc + a[i] * b[r - i]
            out.append(acc)
        return BiSeries.from_slices(out, nx)

    def at_y_equal_one(self) -> PowerSeries:
        """Sum of all y-slices; exact only if the y-truncation covers every
        term below x^order_x."""
        acc = PowerSeries.constant(0, self.truncation_order_x)
        for s in self.slices():
            acc = acc + s
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for row in self.coefficients for c in row)


def bk_denominator(order_x: int, order_y: int, *, with_y4: bool = True) -> BiSeries:
    """1 - O(x) y + S(x) y^2 [- S(x) y^4]."""
    zero = PowerSeries.constant(0, order_x)
    slices = [zero] * (order_y + 1)
    slices[0] = PowerSeries.constant(1, order_x)
    o, s = os(order_x), ss(order_x)
    if order_y >= 1:
        slices[1] = -o
    if order_y >= 2:
        slices[2] = s
    if with_y4 and order_y >= 4:
        slices[4] = -s
    return BiSeries.from_slices(slices, order_x)


def _inverse_denominator(order_x: int, order_y: int, with_y4: bool) -> list[PowerSeries]:
    # c_r = O c_{r-1} - S c_{r-2} + S c_{r-4}
    o, s = os(order_x), ss(order_x)
    c = [PowerSeries.constant(1, order_x)]
    for r in range(1, order_y + 1):
        acc = o * c[r - 1]
        if r >= 2:
            acc = acc - s * c[r - 2]
        if with_y4 and r >= 4:
            acc = acc + s * c[r - 4]
        c.append(acc)
    return c


def a_series(order_x: int = DEFAULT_ORDER_X, order_y: int = DEFAULT_ORDER_Y) -> BiSeries:
    """1 / (1 - O y + S y^2 - S y^4): predicted dims of gr_r of the algebra mod zeta(2)."""
    return BiSeries.from_slices(_inverse_denominator(order_x, order_y, True), order_x)


def bk_series(order_x: int = DEFAULT_ORDER_X, order_y: int = DEFAULT_ORDER_Y) -> BiSeries:
    """Broadhurst-Kreimer: (1 + E y) / (1 - O y + S y^2 - S y^4)."""
    c = _inverse_denominator(order_x, order_y, True)
    e = es(order_x)
    slices = [c[0]] + [c[r] + e * c[r - 1] for r in range(1, order_y + 1)]
    return BiSeries.from_slices(slices, order_x)


def uneven_bk_series(order_x: int = DEFAULT_ORDER_X, order_y: int = DEFAULT_ORDER_Y) -> BiSeries:
    """1 / (1 - O y + S y^2): predicted dims of the totally odd part."""
    return BiSeries.from_slices(_inverse_denominator(order_x, order_y, False), order_x)


def bk_numerator(order_x: int, order_y: int) -> BiSeries:
    zero = PowerSeries.constant(0, order_x)
    slices = [zero] * (order_y + 1)
    slices[0] = PowerSeries.constant(1, order_x)
    if order_y >= 1:
        slices[1] = es(order_x)
    return BiSeries.from_slices(slices, order_x)


def total_dimension_series(order: int = DEFAULT_ORDER_X) -> PowerSeries:
    """1 + sum_N dim A_N x^N = 1 / (1 - x^3 - x^5 - ...)."""
    return inverse(PowerSeries.constant(1, order) - os(order))
