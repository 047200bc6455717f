"""
Coefficient functionals of class members.

This module evaluates every functional bounded by the sharp estimates:
- Inverse coefficients A2..A5 and logarithmic coefficients gamma_n / Gamma_n
- Hankel determinants H22, H23 of f and of its inverse
- The logarithmic-inverse Hankel determinant H21(F_{f^-1}/2)
- Second-order Hermitian-Toeplitz determinants of gamma and Gamma
- A registry of named functionals used by the harness and the CLI
"""

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Union

from coefficients.classes import CoefficientVector
from utils.errors import UsageError
from utils.rationals import promote_int

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex, float]


def _real(z: Scalar) -> Scalar:
    return z.real if isinstance(z, complex) else z


def _abs2(z: Scalar) -> Scalar:
    if isinstance(z, complex):
        return z.real * z.real + z.imag * z.imag
    return z * z


@dataclass(frozen=True)
class InverseCoeffs:
    """Coefficients A2..A5 of the inverse function F = f^-1"""
    A2: Scalar = 0
    A3: Scalar = 0
    A4: Scalar = 0
    A5: Scalar = 0

    def __post_init__(self):
        for name in ("A2", "A3", "A4", "A5"):
            object.__setattr__(self, name, promote_int(getattr(self, name)))

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.A2, self.A3, self.A4, self.A5)

    def as_vector(self) -> CoefficientVector:
        """The inverse as a class-member style coefficient vector"""
        return CoefficientVector(*self.as_tuple())


@dataclass(frozen=True)
class LogCoeffs:
    """First three logarithmic coefficients (gamma_n of f, or Gamma_n of f^-1)"""
    g1: Scalar = 0
    g2: Scalar = 0
    g3: Scalar = 0

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            object.__setattr__(self, name, promote_int(getattr(self, name)))

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar]:
        return (self.g1, self.g2, self.g3)


def inverse_coeffs(a: CoefficientVector) -> InverseCoeffs:
    a2, a3, a4, a5 = a.as_tuple()
    return InverseCoeffs(
        A2=-a2,
        A3=-a3 + 2 * a2 * a2,
        A4=-a4 + 5 * a2 * a3 - 5 * a2 ** 3,
        A5=-a5 + 6 * a2 * a4 - 21 * a2 * a2 * a3 + 3 * a3 * a3 + 14 * a2 ** 4,
    )


def _log_from(b2: Scalar, b3: Scalar, b4: Scalar) -> LogCoeffs:
    return LogCoeffs(
        g1=b2 / 2,
        g2=(b3 - b2 * b2 / 2) / 2,
        g3=(b4 - b2 * b3 + b2 ** 3 / 3) / 2,
    )


def log_coeffs(a: CoefficientVector) -> LogCoeffs:
    """gamma_1..gamma_3, half the coefficients of log(f(z)/z)"""
    return _log_from(a.a2, a.a3, a.a4)


def log_inverse_coeffs(A: InverseCoeffs) -> LogCoeffs:
    """Gamma_1..Gamma_3, half the coefficients of log(F(w)/w)"""
    return _log_from(A.A2, A.A3, A.A4)


# ============================================================================
# HANKEL DETERMINANTS
# ============================================================================


def hankel_h22(a: CoefficientVector) -> Scalar:
    return a.a2 * a.a4 - a.a3 * a.a3


def hankel_h23(a: CoefficientVector) -> Scalar:
    return a.a3 * a.a5 - a.a4 * a.a4


def hankel_h22_inverse(a: CoefficientVector) -> Scalar:
    """A2 A4 - A3^2 written in the coefficients of f"""
    a2, a3, a4, _ = a.as_tuple()
    return a2 * a4 - a3 * a3 - a2 * a2 * (a3 - a2 * a2)


def hankel_h22_inverse_direct(a: CoefficientVector) -> Scalar:
    """A2 A4 - A3^2 from the inverse coefficients themselves"""
    A = inverse_coeffs(a)
    return A.A2 * A.A4 - A.A3 * A.A3


def hankel_h23_inverse_surrogate(a: CoefficientVector) -> Scalar:
    """a3 a5 - a4^2 - 3 a3^3; equals A3 A5 - A4^2 only when a2 = 0"""
    a3, a4, a5 = a.a3, a.a4, a.a5
    return a3 * a5 - a4 * a4 - 3 * a3 ** 3


def hankel_h23_inverse_true(a: CoefficientVector) -> Scalar:
    A = inverse_coeffs(a)
    return A.A3 * A.A5 - A.A4 * A.A4


def h23_inverse_residual(a: CoefficientVector) -> Scalar:
    """True minus surrogate H23 of the inverse; vanishes when a2 = 0"""
    a2, a3, a4, a5 = a.as_tuple()
    return (4 * a2 * a3 * a4 + 2 * a2 ** 2 * a3 ** 2 - 6 * a2 ** 4 * a3
            - 2 * a2 ** 2 * a5 + 2 * a2 ** 3 * a4 + 3 * a2 ** 6)


def hankel_h21_log_inverse(a: CoefficientVector) -> Scalar:
    """H21(F_{f^-1}/2) = Gamma_1 Gamma_3 - Gamma_2^2 in the coefficients of f"""
    a2, a3, a4, _ = a.as_tuple()
    return (13 * a2 ** 4 - 12 * a2 * a2 * a3 - 12 * a3 * a3 + 12 * a2 * a4) / 48


def hankel_h21_log(a: CoefficientVector) -> Scalar:
    """H21(F_f/2) = gamma_1 gamma_3 - gamma_2^2"""
    gamma = log_coeffs(a)
    return gamma.g1 * gamma.g3 - gamma.g2 * gamma.g2


def diff_functionals(a: CoefficientVector) -> Tuple[Scalar, Scalar]:
    """(H22(f^-1) - H22(f), surrogate H23(f^-1) - H23(f))"""
    a2, a3 = a.a2, a.a3
    return -a2 * a2 * (a3 - a2 * a2), -3 * a3 ** 3


# ============================================================================
# HERMITIAN-TOEPLITZ DETERMINANTS
# ============================================================================


def toeplitz_t21_log(a2: Scalar, a3: Scalar) -> Scalar:
    """gamma_1^2 - |gamma_2|^2 for real a2"""
    a2 = _real(a2)
    s = a2 * a2
    return (-s * s + 4 * s + 4 * s * _real(a3) - 4 * _abs2(a3)) / 16


def toeplitz_t21_log_inverse(A2: Scalar, A3: Scalar) -> Scalar:
    """Gamma_1^2 - |Gamma_2|^2 for real A2"""
    return toeplitz_t21_log(A2, A3)


def rotate_real(a: CoefficientVector) -> CoefficientVector:
    """Rotate e^{-i t} f(e^{i t} z) so that a2 becomes real and non-negative"""
    a2 = a.a2
    if isinstance(a2, complex):
        if a2 == 0:
            return a
        unit = cmath.exp(-1j * cmath.phase(a2))
        return CoefficientVector(*(value * unit ** n
                                   for n, value in enumerate(a.as_tuple(), start=1)))
    if a2 < 0:
        # rotation by pi: a_n -> (-1)^(n-1) a_n
        return CoefficientVector(-a.a2, a.a3, -a.a4, a.a5)
    return a


# ============================================================================
# FUNCTIONAL REGISTRY
# ============================================================================


def _t21_log(a: CoefficientVector) -> Scalar:
    rotated = rotate_real(a)
    return toeplitz_t21_log(rotated.a2, rotated.a3)


def _t21_log_inverse(a: CoefficientVector) -> Scalar:
    A = inverse_coeffs(rotate_real(a))
    return toeplitz_t21_log_inverse(A.A2, A.A3)


@dataclass(frozen=True)
class FunctionalDefinition:
    """A named coefficient functional"""
    key: str
    description: str
    evaluate: Callable[[CoefficientVector], Scalar]
    signed: bool = False  # bounded above and below rather than in modulus


FUNCTIONALS: Dict[str, FunctionalDefinition] = {
    definition.key: definition for definition in [
        FunctionalDefinition("h21_log_inverse", "H21(F_{f^-1}/2)", hankel_h21_log_inverse),
        FunctionalDefinition("h21_log", "H21(F_f/2)", hankel_h21_log),
        FunctionalDefinition("h22", "H22(f)", hankel_h22),
        FunctionalDefinition("h22_inverse", "H22(f^-1)", hankel_h22_inverse),
        FunctionalDefinition("h22_diff", "H22(f^-1) - H22(f)",
                             lambda a: diff_functionals(a)[0]),
        FunctionalDefinition("h23", "H23(f)", hankel_h23),
        FunctionalDefinition("h23_inverse", "H23(f^-1), surrogate form",
                             hankel_h23_inverse_surrogate),
        FunctionalDefinition("h23_inverse_true", "H23(f^-1) = A3 A5 - A4^2",
                             hankel_h23_inverse_true),
        FunctionalDefinition("h23_diff", "H23(f^-1) - H23(f), surrogate form",
                             lambda a: diff_functionals(a)[1]),
        FunctionalDefinition("t21_log", "T21(F_f/gamma)", _t21_log, signed=True),
        FunctionalDefinition("t21_log_inverse", "T21(F_{f^-1}/Gamma)", _t21_log_inverse,
                             signed=True),
    ]
}


def functional_ids() -> List[str]:
    return list(FUNCTIONALS)


def get_functional(functional_id: str) -> FunctionalDefinition:
    if functional_id not in FUNCTIONALS:
        raise UsageError(f"unknown functional {functional_id!r}",
                         example="--functional h22_inverse")
    return FUNCTIONALS[functional_id]


def evaluate_functional(functional_id: str, a: CoefficientVector) -> Scalar:
    return get_functional(functional_id).evaluate(a)
