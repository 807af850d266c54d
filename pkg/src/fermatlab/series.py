"""Truncated Laurent series with exact (Gaussian-rational) or float
coefficients.

A series is stored densely on the exponent range [low, high]; ``high`` is the
truncation order: coefficients beyond it are unknown, coefficients inside the
range are authoritative (including explicit zeros).  Arithmetic propagates the
truncation order pessimistically, so "identically zero through order N" is a
meaningful, certified statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .scalars import RationalComplex, is_exact_scalar

EXACT = "exact"
FLOAT = "float"


def _zero(mode):
    return RationalComplex(0) if mode == EXACT else 0j


def _coerce_coeff(c, mode):
    if mode == EXACT:
        return RationalComplex.coerce(c)
    if isinstance(c, RationalComplex):
        return c.to_complex()
    return complex(c)


def _is_zero_coeff(c) -> bool:
    if isinstance(c, RationalComplex):
        return c.is_zero
    return c == 0


@dataclass(frozen=True)
class LaurentSeries:
    """sum of coeffs[k] * w**(low + k), truncated beyond exponent ``high``."""

    mode: str
    low: int
    high: int
    coeffs: tuple

    #: deepest pole representable; beyond this the dense layout and the
    #: pessimistic truncation bookkeeping stop being useful
    MAX_POLE_ORDER = 12

    @staticmethod
    def make(mode, low, coeffs, high=None) -> "LaurentSeries":
        if low < -LaurentSeries.MAX_POLE_ORDER:
            raise ValueError(
                f"pole order {-low} exceeds the supported maximum "
                f"{LaurentSeries.MAX_POLE_ORDER}"
            )
        coeffs = [_coerce_coeff(c, mode) for c in coeffs]
        if high is None:
            high = low + len(coeffs) - 1
        if high - low + 1 != len(coeffs):
            raise ValueError("coefficient span does not match [low, high]")
        # normalize: advance past exact leading zeros, keep the truncation order
        while coeffs and _is_zero_coeff(coeffs[0]):
            coeffs.pop(0)
            low += 1
        if not coeffs:
            low = high + 1
        return LaurentSeries(mode, low, high, tuple(coeffs))

    @staticmethod
    def zero(mode, high) -> "LaurentSeries":
        return LaurentSeries(mode, high + 1, high, ())

    @staticmethod
    def constant(value, mode, high) -> "LaurentSeries":
        return LaurentSeries.make(mode, 0, [value] + [_zero(mode)] * high, high)

    @staticmethod
    def identity(mode, high) -> "LaurentSeries":
        """The series of w itself."""
        if high < 1:
            raise ValueError("truncation order must be >= 1 for the identity series")
        coeffs = [_zero(mode)] * high  # exponents 1 .. high
        coeffs[0] = RationalComplex(1) if mode == EXACT else 1 + 0j
        return LaurentSeries.make(mode, 1, coeffs, high)

    # -- inspection ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int):
        """Coefficient of w**k; k must not exceed the truncation order."""
        if k > self.high:
            raise ValueError(f"exponent {k} beyond truncation order {self.high}")
        if k < self.low:
            return _zero(self.mode)
        return self.coeffs[k - self.low]

    def is_zero_through(self, order: int) -> bool:
        """True iff every coefficient with exponent <= order is exactly zero.

        Requires the series to be valid through ``order``.
        """
        if self.high < order:
            raise ValueError(
                f"series truncated at {self.high}, cannot certify through {order}"
            )
        return self.is_zero or self.low > order or all(
            _is_zero_coeff(c) for c in self.coeffs[: order - self.low + 1]
        )

    def leading_terms(self, count: int = 3):
        """(exponent, coefficient) pairs of the first nonzero terms."""
        out = []
        for k, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                out.append((self.low + k, c))
                if len(out) >= count:
                    break
        return out

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.mode != other.mode:
            raise ValueError("cannot mix exact and float series")

    def __add__(self, other):
        self._check(other)
        high = min(self.high, other.high)
        low = min(self.low, other.low)
        if low > high:
            return LaurentSeries.zero(self.mode, high)
        coeffs = []
        for k in range(low, high + 1):
            a = self.coeffs[k - self.low] if self.low <= k <= self.high else _zero(self.mode)
            b = other.coeffs[k - other.low] if other.low <= k <= other.high else _zero(self.mode)
            coeffs.append(a + b)
        return LaurentSeries.make(self.mode, low, coeffs, high)

    def __neg__(self):
        return LaurentSeries(self.mode, self.low, self.high, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        c = _coerce_coeff(c, self.mode)
        if _is_zero_coeff(c):
            return LaurentSeries.zero(self.mode, self.high)
        return LaurentSeries(self.mode, self.low, self.high, tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by w**k."""
        return LaurentSeries(self.mode, self.low + k, self.high + k, self.coeffs)

    def __mul__(self, other):
        self._check(other)
        # the first unknown product coefficient comes from one factor's unknown
        # tail (exponent > high) paired with the other's lowest known term
        high = min(self.high + other.low, other.high + self.low)
        if self.is_zero or other.is_zero:
            return LaurentSeries.zero(self.mode, high)
        low = self.low + other.low
        n = high - low + 1
        if n <= 0:
            return LaurentSeries.zero(self.mode, high)
        out = [_zero(self.mode) for _ in range(n)]
        for ia, a in enumerate(self.coeffs):
            if _is_zero_coeff(a):
                continue
            ea = self.low + ia
            for ib, b in enumerate(other.coeffs):
                e = ea + other.low + ib
                if e > high:
                    break
                out[e - low] = out[e - low] + a * b
        return LaurentSeries.make(self.mode, low, out, high)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("series exponent must be an int")
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return LaurentSeries.constant(1, self.mode, max(self.high, 0))
        # repeated multiplication keeps the truncation bookkeeping honest
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def invert(self) -> "LaurentSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if self.is_zero:
            raise ZeroDivisionError("cannot invert the zero series")
        m = self.low
        a = self.coeffs
        lead = a[0]
        if _is_zero_coeff(lead):
            raise ZeroDivisionError("leading coefficient vanished")
        rel_order = self.high - m  # tail length we can trust
        inv_high = self.high - 2 * m
        one = RationalComplex(1) if self.mode == EXACT else 1 + 0j
        inv = [one / lead]
        for k in range(1, rel_order + 1):
            s = _zero(self.mode)
            for j in range(1, k + 1):
                aj = a[j] if j < len(a) else _zero(self.mode)
                s = s + aj * inv[k - j]
            inv.append(-s / lead)
        return LaurentSeries.make(self.mode, -m, inv, inv_high)

    def __truediv__(self, other):
        return self * other.invert()

    def differentiate(self) -> "LaurentSeries":
        coeffs = []
        for k, c in enumerate(self.coeffs):
            e = self.low + k
            coeffs.append(c * e)
        return LaurentSeries.make(self.mode, self.low - 1, coeffs, self.high - 1)

    # -- views --------------------------------------------------------------
    def to_float(self) -> "LaurentSeries":
        if self.mode == FLOAT:
            return self
        return LaurentSeries(
            FLOAT, self.low, self.high, tuple(c.to_complex() for c in self.coeffs)
        )

    def evaluate(self, z: complex) -> complex:
        """Partial-sum evaluation (float), for small |z| cross-checks."""
        total = 0j
        for k, c in enumerate(self.coeffs):
            cc = c.to_complex() if isinstance(c, RationalComplex) else complex(c)
            total += cc * z ** (self.low + k)
        return total


# ---------------------------------------------------------------------------
# Stock series.
# ---------------------------------------------------------------------------


def exp_series(c, order: int) -> LaurentSeries:
    """Series of exp(c*w) through w**order; exact when c is exact."""
    mode = EXACT if is_exact_scalar(c) else FLOAT
    cc = RationalComplex.coerce(c) if mode == EXACT else complex(c)
    coeffs = []
    power = RationalComplex(1) if mode == EXACT else 1 + 0j
    for k in range(order + 1):
        if mode == EXACT:
            coeffs.append(power * Fraction(1, factorial(k)))
        else:
            coeffs.append(power / factorial(k))
        power = power * cc
    return LaurentSeries.make(mode, 0, coeffs, order)


def wp_coefficients(g2, g3, kmax: int):
    """Taylor tail coefficients c_k (k = 2..kmax) of the Weierstrass function:
    wp(w) = w**-2 + sum_{k>=2} c_k w**(2k-2), with
    c_2 = g2/20, c_3 = g3/28 and the classical quadratic recurrence
    c_k = 3/((2k+1)(k-3)) * sum_{j=2}^{k-2} c_j c_{k-j} for k >= 4.
    """
    exact = is_exact_scalar(g2) and is_exact_scalar(g3)
    if exact:
        g2 = RationalComplex.coerce(g2)
        g3 = RationalComplex.coerce(g3)
        c = {2: g2 * Fraction(1, 20), 3: g3 * Fraction(1, 28)}
        for k in range(4, kmax + 1):
            s = RationalComplex(0)
            for j in range(2, k - 1):
                s = s + c[j] * c[k - j]
            c[k] = s * Fraction(3, (2 * k + 1) * (k - 3))
    else:
        g2 = complex(g2)
        g3 = complex(g3)
        c = {2: g2 / 20.0, 3: g3 / 28.0}
        for k in range(4, kmax + 1):
            s = 0j
            for j in range(2, k - 1):
                s += c[j] * c[k - j]
            c[k] = 3.0 * s / ((2 * k + 1) * (k - 3))
    return c


def wp_series(g2, g3, order: int = 40) -> LaurentSeries:
    """Laurent series of the Weierstrass function for invariants (g2, g3),
    valid through w**order.  Exact mode when both invariants are exact."""
    if order < 4:
        raise ValueError("truncation order must be >= 4")
    exact = is_exact_scalar(g2) and is_exact_scalar(g3)
    mode = EXACT if exact else FLOAT
    kmax = (order + 2) // 2  # exponent 2k-2 <= order
    c = wp_coefficients(g2, g3, max(kmax, 3))
    coeffs = [_zero(mode)] * (order + 2 + 1)  # exponents -2 .. order
    one = RationalComplex(1) if exact else 1 + 0j
    coeffs[0] = one  # w^-2
    for k in range(2, kmax + 1):
        e = 2 * k - 2
        if e <= order:
            coeffs[e + 2] = c[k]
    return LaurentSeries.make(mode, -2, coeffs, order)


def ode_residual_series(g2, g3, order: int = 40) -> LaurentSeries:
    """Series of (wp')^2 - 4 wp^3 + g2 wp + g3, valid through w**order.

    For honest invariants this is identically zero; the truncation
    bookkeeping guarantees the certificate covers every exponent <= order.
    """
    if order < 10:
        raise ValueError("truncation order must be >= 10 for the cubic-law residual")
    p = wp_series(g2, g3, order + 4)
    dp = p.differentiate()
    mode = p.mode
    res = dp * dp - (p * p * p).scale(4) + p.scale(g2) + LaurentSeries.constant(
        g3, mode, order
    )
    if res.high < order:
        raise AssertionError("internal truncation slack was insufficient")
    return res
