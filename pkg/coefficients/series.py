"""
Truncated power series arithmetic.

This module is the substrate for subordination expansions, function inversion
and logarithmic coefficients:
- Exact (Fraction) and floating (complex) scalar modes
- Cauchy products, Horner composition and fixed-point reversion
- log(f(z)/z) for normalized f
- The defining series of the two classes (e^z and sqrt(1+z))
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from config import DEFAULT_TRUNCATION_ORDER, SCALAR_MODES
from coefficients.class_ids import ClassId
from utils.errors import UsageError

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex]


def _to_scalar(value, scalar_mode: str) -> Scalar:
    """Coerce a number into the scalar type of a mode"""
    if scalar_mode == "exact":
        if isinstance(value, complex) or isinstance(value, float):
            raise UsageError(f"exact series need rational coefficients, got {value!r}")
        return Fraction(value)
    return complex(value)


@dataclass(frozen=True)
class TruncatedSeries:
    """Taylor coefficients c_0..c_order of a power series, indexed from the constant term"""
    coefficients: Tuple[Scalar, ...]
    order: int
    scalar_mode: str = "exact"

    def __post_init__(self):
        if self.scalar_mode not in SCALAR_MODES:
            raise UsageError(f"unknown scalar mode {self.scalar_mode!r}")
        if self.order < 0:
            raise UsageError(f"series order must be non-negative, got {self.order}")
        if len(self.coefficients) != self.order + 1:
            raise UsageError(
                f"{len(self.coefficients)} coefficients do not match order {self.order}")

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, order: int = None,
                          scalar_mode: str = "exact") -> "TruncatedSeries":
        """Build a series, padding with zeros or truncating to the given order"""
        values = [_to_scalar(c, scalar_mode) for c in coefficients]
        if order is None:
            order = max(len(values) - 1, 0)
        zero = _to_scalar(0, scalar_mode)
        values = (values + [zero] * (order + 1))[:order + 1]
        return cls(tuple(values), order, scalar_mode)

    @classmethod
    def constant(cls, value, order: int = DEFAULT_TRUNCATION_ORDER,
                 scalar_mode: str = "exact") -> "TruncatedSeries":
        return cls.from_coefficients([value], order, scalar_mode)

    @classmethod
    def identity(cls, order: int = DEFAULT_TRUNCATION_ORDER,
                 scalar_mode: str = "exact") -> "TruncatedSeries":
        """The series z"""
        return cls.from_coefficients([0, 1], order, scalar_mode)

    def __getitem__(self, n: int) -> Scalar:
        if 0 <= n <= self.order:
            return self.coefficients[n]
        return _to_scalar(0, self.scalar_mode)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_modes(self, other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self[n] + other[n] for n in range(order + 1)), order, self.scalar_mode)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return multiply(self, other)

    def scale(self, factor) -> "TruncatedSeries":
        factor = _to_scalar(factor, self.scalar_mode)
        return TruncatedSeries(
            tuple(factor * c for c in self.coefficients), self.order, self.scalar_mode)

    def truncate(self, order: int) -> "TruncatedSeries":
        order = min(order, self.order)
        return TruncatedSeries(self.coefficients[:order + 1], order, self.scalar_mode)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by z; the constant term must vanish"""
        if self[0] != 0:
            raise UsageError("cannot divide by z: constant term is nonzero")
        if self.order == 0:
            return TruncatedSeries.constant(0, 0, self.scalar_mode)
        return TruncatedSeries(self.coefficients[1:], self.order - 1, self.scalar_mode)

    def is_normalized(self) -> bool:
        """True for series of the form z + a_2 z^2 + ..."""
        return self.order >= 1 and self[0] == 0 and self[1] == 1

    def as_list(self) -> List[Scalar]:
        return list(self.coefficients)


def _check_modes(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.scalar_mode != b.scalar_mode:
        raise UsageError(
            f"scalar mode mismatch: {a.scalar_mode} vs {b.scalar_mode}")


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order"""
    _check_modes(a, b)
    order = min(a.order, b.order)
    if a.scalar_mode == "float":
        product = np.convolve(np.asarray(a.coefficients[:order + 1], dtype=complex),
                              np.asarray(b.coefficients[:order + 1], dtype=complex))
        return TruncatedSeries(
            tuple(complex(c) for c in product[:order + 1]), order, "float")

    result = []
    for n in range(order + 1):
        total = Fraction(0)
        for k in range(n + 1):
            total += a[k] * b[n - k]
        result.append(total)
    return TruncatedSeries(tuple(result), order, "exact")


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(z)) by Horner evaluation in the series ring"""
    _check_modes(outer, inner)
    if inner[0] != 0:
        raise UsageError("inner series of a composition must have zero constant term")

    order = min(outer.order, inner.order)
    inner = inner.truncate(order)
    result = TruncatedSeries.constant(outer[order], order, outer.scalar_mode)
    for k in range(order - 1, -1, -1):
        result = multiply(result, inner) + TruncatedSeries.constant(
            outer[k], order, outer.scalar_mode)
    return result


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a normalized series, by iterated substitution F <- w - g(F)"""
    if not f.is_normalized():
        raise UsageError("reversion needs a normalized series z + a_2 z^2 + ...")

    identity = TruncatedSeries.identity(f.order, f.scalar_mode)
    tail = f - identity  # g(z) = f(z) - z
    inverse = identity
    # each pass fixes one more coefficient
    for _ in range(f.order):
        inverse = identity - compose(tail, inverse)
    return inverse


def log1p_series(order: int, scalar_mode: str = "exact") -> TruncatedSeries:
    """Series of log(1+u) = u - u^2/2 + u^3/3 - ..."""
    coefficients = [0] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)]
    return TruncatedSeries.from_coefficients(coefficients, order, scalar_mode)


def exp_series(order: int, scalar_mode: str = "exact") -> TruncatedSeries:
    """Series of e^z with coefficients 1/n!"""
    coefficients = []
    term = Fraction(1)
    for n in range(order + 1):
        coefficients.append(term)
        term /= n + 1
    return TruncatedSeries.from_coefficients(coefficients, order, scalar_mode)


def sqrt1p_series(order: int, scalar_mode: str = "exact") -> TruncatedSeries:
    """Series of sqrt(1+z) with binomial(1/2, n) coefficients"""
    coefficients = []
    term = Fraction(1)
    half = Fraction(1, 2)
    for n in range(order + 1):
        coefficients.append(term)
        term = term * (half - n) / (n + 1)
    return TruncatedSeries.from_coefficients(coefficients, order, scalar_mode)


def log_normalized(f: TruncatedSeries) -> TruncatedSeries:
    """Series of log(f(z)/z); its halved coefficients are the logarithmic coefficients"""
    if not f.is_normalized():
        raise UsageError("log(f/z) needs a normalized series z + a_2 z^2 + ...")

    quotient = f.shift_down()  # f/z = 1 + u
    u = quotient - TruncatedSeries.constant(1, quotient.order, f.scalar_mode)
    return compose(log1p_series(quotient.order, f.scalar_mode), u)


def phi_series(class_id: ClassId, order: int = DEFAULT_TRUNCATION_ORDER,
               scalar_mode: str = "exact") -> TruncatedSeries:
    """Defining function phi of a class: e^z for SSe, sqrt(1+z) for SSL"""
    if order < 1:
        raise UsageError(f"phi series order must be at least 1, got {order}")
    if class_id == ClassId.SSE:
        return exp_series(order, scalar_mode)
    return sqrt1p_series(order, scalar_mode)


def normalized_series(tail: Sequence, order: int = DEFAULT_TRUNCATION_ORDER,
                      scalar_mode: str = "exact") -> TruncatedSeries:
    """z + tail[0] z^2 + tail[1] z^3 + ... as a series"""
    return TruncatedSeries.from_coefficients([0, 1] + list(tail), order, scalar_mode)
