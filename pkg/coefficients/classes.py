"""
Coefficient extraction for members of the two Sakaguchi subclasses.

This module turns Schwarz or Caratheodory data into (a2, a3, a4, a5):
- Closed forms for SSe and SSL from Schwarz coefficients
- Closed forms from Caratheodory coefficients (plus the printed SSe a5 variant)
- A generic solver for any phi, matching z f' = phi(w) (f(z) - f(-z))/2
- The extremal functions generated by w(z) = z^2 and w(z) = z
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

from config import DEFAULT_TRUNCATION_ORDER
from coefficients.class_ids import ClassId
from coefficients.schwarz import SchwarzCoeffs, CaratheodoryCoeffs
from coefficients.series import (TruncatedSeries, compose, phi_series,
                                 normalized_series)
from utils.errors import UsageError
from utils.rationals import promote_int

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex, float]

EXTREMAL_KINDS = ["odd_w_zsq", "w_z"]

# Extremal functions by name, keyed to (class, generating Schwarz function)
EXTREMAL_NAMES: Dict[str, Tuple[ClassId, str]] = {
    "f1": (ClassId.SSE, "odd_w_zsq"),
    "f2": (ClassId.SSE, "w_z"),
    "g1": (ClassId.SSL, "odd_w_zsq"),
    "g2": (ClassId.SSL, "w_z"),
}


@dataclass(frozen=True)
class CoefficientVector:
    """Taylor coefficients a2..a5 of f(z) = z + a2 z^2 + ..."""
    a2: Scalar = 0
    a3: Scalar = 0
    a4: Scalar = 0
    a5: Scalar = 0

    def __post_init__(self):
        for name in ("a2", "a3", "a4", "a5"):
            object.__setattr__(self, name, promote_int(getattr(self, name)))

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a2, self.a3, self.a4, self.a5)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(a, Fraction) for a in self.as_tuple())

    def to_series(self, order: int = DEFAULT_TRUNCATION_ORDER,
                  scalar_mode: str = None) -> TruncatedSeries:
        """The normalized series z + a2 z^2 + ... + a5 z^5"""
        if scalar_mode is None:
            scalar_mode = "exact" if self.is_exact else "float"
        return normalized_series(self.as_tuple(), order, scalar_mode)

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "CoefficientVector":
        if not f.is_normalized():
            raise UsageError("coefficient vectors come from normalized series")
        return cls(f[2], f[3], f[4], f[5])


def coeffs_from_schwarz(class_id: ClassId, c: SchwarzCoeffs) -> CoefficientVector:
    """a2..a5 of the class member generated by the Schwarz coefficients c"""
    c1, c2, c3, c4 = c.as_tuple()
    if class_id == ClassId.SSE:
        return CoefficientVector(
            a2=c1 / 2,
            a3=(c1 * c1 + 2 * c2) / 4,
            a4=(5 * c1 ** 3 + 18 * c1 * c2 + 12 * c3) / 48,
            a5=(c1 ** 4 + 6 * c1 * c1 * c2 + 6 * c2 * c2 + 6 * c1 * c3 + 6 * c4) / 24,
        )
    return CoefficientVector(
        a2=c1 / 4,
        a3=(-c1 * c1 + 4 * c2) / 16,
        a4=(c1 ** 3 - 4 * c1 * c2 + 16 * c3) / 128,
        a5=(-c1 ** 4 + 4 * c1 * c1 * c2 - 8 * c1 * c3 + 16 * c4) / 128,
    )


def coeffs_from_caratheodory(class_id: ClassId, p: CaratheodoryCoeffs) -> CoefficientVector:
    """a2..a5 of the class member generated by p = (1+w)/(1-w)"""
    p1, p2, p3, p4 = p.as_tuple()
    if class_id == ClassId.SSE:
        return CoefficientVector(
            a2=p1 / 4,
            a3=(-p1 * p1 + 4 * p2) / 16,
            a4=(-p1 ** 3 - 12 * p1 * p2 + 48 * p3) / 384,
            a5=(p1 ** 4 - 24 * p1 * p3 + 48 * p4) / 384,
        )
    return CoefficientVector(
        a2=p1 / 8,
        a3=(-5 * p1 * p1 + 8 * p2) / 64,
        a4=(21 * p1 ** 3 - 72 * p1 * p2 + 64 * p3) / 1024,
        a5=(-116 * p1 ** 4 + 544 * p1 * p1 * p2 - 256 * p2 * p2
            - 640 * p1 * p3 + 512 * p4) / 8192,
    )


def coeffs_from_caratheodory_printed(p: CaratheodoryCoeffs) -> CoefficientVector:
    """SSe coefficients with a5 in the published form (p1^4 - 24 p1^2 p3 + 48 p4)/384"""
    derived = coeffs_from_caratheodory(ClassId.SSE, p)
    p1, _, p3, p4 = p.as_tuple()
    printed_a5 = (p1 ** 4 - 24 * p1 * p1 * p3 + 48 * p4) / 384
    return CoefficientVector(derived.a2, derived.a3, derived.a4, printed_a5)


def solve_subordination(phi: TruncatedSeries, w: TruncatedSeries) -> CoefficientVector:
    """a2..a5 of f with 2zf'/(f(z)-f(-z)) = phi(w(z)), from e = phi o w"""
    if phi[0] != 1:
        raise UsageError("phi must have constant term 1")
    if w[0] != 0:
        raise UsageError("w must have zero constant term")
    if min(phi.order, w.order) < 4:
        raise UsageError("subordination needs series of order at least 4")

    e = compose(phi, w)
    e1, e2, e3, e4 = e[1], e[2], e[3], e[4]
    return CoefficientVector(
        a2=e1 / 2,
        a3=e2 / 2,
        a4=(e3 + e1 * e2 / 2) / 4,
        a5=(e4 + e2 * e2 / 2) / 4,
    )


def extremal_function(class_id: ClassId, which: str) -> CoefficientVector:
    """Member generated by w = z^2 ('odd_w_zsq') or w = z ('w_z'), in exact arithmetic"""
    if which not in EXTREMAL_KINDS:
        raise UsageError(f"unknown extremal kind {which!r}", example="w_z")
    power = 2 if which == "odd_w_zsq" else 1
    w = TruncatedSeries.from_coefficients([0] * power + [1], DEFAULT_TRUNCATION_ORDER)
    return solve_subordination(phi_series(class_id, DEFAULT_TRUNCATION_ORDER), w)


def named_extremal(name: str) -> Tuple[ClassId, CoefficientVector]:
    """Look up f1, f2, g1 or g2"""
    if name not in EXTREMAL_NAMES:
        raise UsageError(f"unknown extremal function {name!r}", example="f2")
    class_id, which = EXTREMAL_NAMES[name]
    return class_id, extremal_function(class_id, which)
