"""
Schwarz and Caratheodory coefficient models.

This module provides the two probabilistic inputs of the coefficient problems:
- Schwarz coefficients (c1..c4) with the classical necessary inequalities
- Caratheodory coefficients (p1..p4) and the w <-> (1+w)/(1-w) substitution
- The Libera-Zlotkiewicz expansion of p2, p3, p4 in p1 and disk parameters
- Deterministic samplers keyed by (seed, stream_index)
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from config import (FEASIBILITY_TOLERANCE, SAMPLER_KINDS, MAX_SAMPLER_DEGREE,
                    MAX_SAMPLER_ATOMS, DEFAULT_SAMPLER_DEGREE, DEFAULT_SAMPLER_ATOMS,
                    SINGLE_ATOM_PROBABILITY, RADIUS_EXPONENT)
from coefficients.series import TruncatedSeries
from utils.errors import UsageError
from utils.rationals import promote_int

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex, float, int]


def _abs2(z: Scalar) -> Scalar:
    """|z|^2, exact for rationals"""
    if isinstance(z, complex):
        return z.real * z.real + z.imag * z.imag
    return z * z


@dataclass(frozen=True)
class SchwarzCoeffs:
    """Coefficients c1..c4 of a Schwarz function w(z) = c1 z + c2 z^2 + ..."""
    c1: Scalar = 0
    c2: Scalar = 0
    c3: Scalar = 0
    c4: Scalar = 0

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            object.__setattr__(self, name, promote_int(getattr(self, name)))

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.c1, self.c2, self.c3, self.c4)

    def to_series(self, order: int = 4, scalar_mode: str = None) -> TruncatedSeries:
        """The truncated series of w"""
        if scalar_mode is None:
            scalar_mode = "float" if any(isinstance(c, (complex, float))
                                         for c in self.as_tuple()) else "exact"
        return TruncatedSeries.from_coefficients([0, *self.as_tuple()], order, scalar_mode)

    @classmethod
    def from_series(cls, w: TruncatedSeries) -> "SchwarzCoeffs":
        return cls(w[1], w[2], w[3], w[4])


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    """Coefficients p1..p4 of p(z) = 1 + p1 z + ... with positive real part"""
    p1: Scalar = 0
    p2: Scalar = 0
    p3: Scalar = 0
    p4: Scalar = 0

    def __post_init__(self):
        for name in ("p1", "p2", "p3", "p4"):
            object.__setattr__(self, name, promote_int(getattr(self, name)))

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.p1, self.p2, self.p3, self.p4)

    @property
    def t(self) -> Scalar:
        """4 - p1^2, the weight of the free parameters in the Libera expansion"""
        return 4 - self.p1 * self.p1


@dataclass
class ValidityVerdict:
    """Outcome of a feasibility check; each violation is (inequality, slack)"""
    passed: bool
    violations: List[Tuple[str, float]] = field(default_factory=list)


@dataclass(frozen=True)
class SamplerConfig:
    """Configuration of a deterministic coefficient sampler"""
    kind: str = "blaschke_mix"
    degree: int = DEFAULT_SAMPLER_DEGREE
    atoms: int = DEFAULT_SAMPLER_ATOMS
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SAMPLER_KINDS:
            raise UsageError(f"unknown sampler kind {self.kind!r}", example="blaschke_mix")
        if not 0 <= self.degree <= MAX_SAMPLER_DEGREE:
            raise UsageError(f"sampler degree must lie in [0, {MAX_SAMPLER_DEGREE}]")
        if not 1 <= self.atoms <= MAX_SAMPLER_ATOMS:
            raise UsageError(f"sampler atoms must lie in [1, {MAX_SAMPLER_ATOMS}]")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("sampler seed must be a 64-bit unsigned integer")


def validate_schwarz(c: SchwarzCoeffs, tol: float = FEASIBILITY_TOLERANCE) -> ValidityVerdict:
    """Check the four necessary coefficient inequalities of a Schwarz function"""
    m1, m2, m3, m4 = (abs(x) for x in c.as_tuple())
    bounds = [
        ("|c1| <= 1", 1, m1),
        ("|c2| <= 1-|c1|^2", 1 - m1 * m1, m2),
        ("|c3| <= 1-|c1|^2-|c2|^2/(1+|c1|)", 1 - m1 * m1 - m2 * m2 / (1 + m1), m3),
        ("|c4| <= 1-|c1|^2-|c2|^2", 1 - m1 * m1 - m2 * m2, m4),
    ]

    violations = []
    for name, bound, modulus in bounds:
        slack = float(bound - modulus)
        if slack < -tol:
            violations.append((name, slack))
    return ValidityVerdict(passed=not violations, violations=violations)


def validate_caratheodory(p: CaratheodoryCoeffs, tol: float = FEASIBILITY_TOLERANCE) -> ValidityVerdict:
    """Check the classical bound |p_n| <= 2"""
    violations = []
    for n, value in enumerate(p.as_tuple(), start=1):
        slack = float(2 - abs(value))
        if slack < -tol:
            violations.append((f"|p{n}| <= 2", slack))
    return ValidityVerdict(passed=not violations, violations=violations)


def caratheodory_from_schwarz(c: SchwarzCoeffs) -> CaratheodoryCoeffs:
    """Coefficients of p = (1+w)/(1-w)"""
    c1, c2, c3, c4 = c.as_tuple()
    return CaratheodoryCoeffs(
        p1=2 * c1,
        p2=2 * (c2 + c1 * c1),
        p3=2 * (c3 + 2 * c1 * c2 + c1 ** 3),
        p4=2 * (c4 + 2 * c1 * c3 + c2 * c2 + 3 * c1 * c1 * c2 + c1 ** 4),
    )


def schwarz_from_caratheodory(p: CaratheodoryCoeffs) -> SchwarzCoeffs:
    """Coefficients of w = (p-1)/(p+1)"""
    p1, p2, p3, p4 = p.as_tuple()
    return SchwarzCoeffs(
        c1=p1 / 2,
        c2=p2 / 2 - p1 * p1 / 4,
        c3=p3 / 2 - p1 * p2 / 2 + p1 ** 3 / 8,
        c4=p4 / 2 - (p2 * p2 + 2 * p1 * p3) / 4 + 3 * p1 * p1 * p2 / 8 - p1 ** 4 / 16,
    )


def libera_expand(p1: Scalar, xi: Scalar = 0, eta: Scalar = 0, gamma: Scalar = 0,
                  tol: float = FEASIBILITY_TOLERANCE) -> CaratheodoryCoeffs:
    """Expand p2, p3, p4 from a real p1 in [0, 2] and closed-disk parameters xi, eta, gamma"""
    p1, xi, eta, gamma = (promote_int(v) for v in (p1, xi, eta, gamma))
    if isinstance(p1, complex):
        if abs(p1.imag) > tol:
            raise UsageError(f"p1 must be real in [0, 2], got {p1!r}")
        p1 = p1.real
    if not -tol <= p1 <= 2 + tol:
        raise UsageError(f"p1 must lie in [0, 2], got {p1!r}")
    for name, value in (("xi", xi), ("eta", eta), ("gamma", gamma)):
        if abs(value) > 1 + tol:
            raise UsageError(f"|{name}| must be at most 1, got {abs(value)!r}")

    t = 4 - p1 * p1
    xi_conj = xi.conjugate()
    one_minus_xi2 = 1 - _abs2(xi)
    one_minus_eta2 = 1 - _abs2(eta)

    p2 = (p1 * p1 + t * xi) / 2
    p3 = (p1 ** 3 + 2 * p1 * t * xi - p1 * t * xi * xi + 2 * t * one_minus_xi2 * eta) / 4
    p4 = (p1 ** 4 + 3 * p1 * p1 * t * xi + (4 - 3 * p1 * p1) * t * xi * xi
          + p1 * p1 * t * xi ** 3 + 4 * t * one_minus_xi2 * one_minus_eta2 * gamma
          + 4 * t * one_minus_xi2 * (p1 * eta - p1 * xi * eta - xi_conj * eta * eta)) / 8
    return CaratheodoryCoeffs(p1, p2, p3, p4)


# ============================================================================
# SAMPLERS
# ============================================================================


def mobius_coefficients(alpha: complex, order: int = 3) -> np.ndarray:
    """Taylor coefficients of (alpha + z)/(1 + conj(alpha) z) through z^order"""
    alpha = complex(alpha)
    coefficients = np.empty(order + 1, dtype=complex)
    coefficients[0] = alpha
    scale = 1 - abs(alpha) ** 2
    ratio = -alpha.conjugate()
    for n in range(1, order + 1):
        coefficients[n] = scale * ratio ** (n - 1)
    return coefficients


def inner_map_coefficients(alphas: Sequence[complex], theta: float = 0.0) -> np.ndarray:
    """c1..c4 of e^{i theta} z B(z) with B the product of Möbius factors at the given alphas"""
    product = np.zeros(4, dtype=complex)
    product[0] = 1
    for alpha in alphas:
        product = np.convolve(product, mobius_coefficients(alpha))[:4]
    return np.exp(1j * theta) * product


def _stream_rng(config: SamplerConfig, stream_index: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, stream_index])


def _mixture_weights(rng: np.random.Generator, max_atoms: int) -> np.ndarray:
    """Convex weights; a single atom with probability SINGLE_ATOM_PROBABILITY"""
    if max_atoms == 1 or rng.random() < SINGLE_ATOM_PROBABILITY:
        return np.ones(1)
    count = int(rng.integers(2, max_atoms + 1))
    return rng.dirichlet(np.ones(count))


def _disk_point(rng: np.random.Generator) -> complex:
    """Point of the open disk with radii concentrated near the circle"""
    radius = 1.0 - rng.random() ** RADIUS_EXPONENT
    radius = min(radius, 1.0 - 1e-15)
    return radius * np.exp(2j * math.pi * rng.random())


def sample_schwarz(config: SamplerConfig, stream_index: int) -> Tuple[SchwarzCoeffs, TruncatedSeries]:
    """Draw a convex combination of rotated Blaschke-type maps z B(z); returns c1..c4 and w"""
    if config.kind != "blaschke_mix":
        raise UsageError(f"sample_schwarz needs kind 'blaschke_mix', got {config.kind!r}")

    rng = _stream_rng(config, stream_index)
    weights = _mixture_weights(rng, config.atoms)
    total = np.zeros(4, dtype=complex)
    for weight in weights:
        theta = 2 * math.pi * rng.random()
        degree = int(rng.integers(0, config.degree + 1))
        alphas = [_disk_point(rng) for _ in range(degree)]
        total += weight * inner_map_coefficients(alphas, theta)

    c = SchwarzCoeffs(*(complex(x) for x in total))
    return c, c.to_series(order=4, scalar_mode="float")


def sample_caratheodory(config: SamplerConfig, stream_index: int) -> CaratheodoryCoeffs:
    """Draw p = sum t_k (1 + x_k z)/(1 - x_k z) with |x_k| = 1; p_n = 2 sum t_k x_k^n"""
    if config.kind != "herglotz_mix":
        raise UsageError(f"sample_caratheodory needs kind 'herglotz_mix', got {config.kind!r}")

    rng = _stream_rng(config, stream_index)
    weights = _mixture_weights(rng, config.atoms)
    points = np.exp(2j * math.pi * rng.random(len(weights)))
    moments = [complex(2 * np.sum(weights * points ** n)) for n in range(1, 5)]
    return CaratheodoryCoeffs(*moments)


def sample_libera(config: SamplerConfig, stream_index: int) -> CaratheodoryCoeffs:
    """Draw real p1 in [0, 2] and xi, eta, gamma in the closed disk, then expand"""
    if config.kind != "libera":
        raise UsageError(f"sample_libera needs kind 'libera', got {config.kind!r}")

    rng = _stream_rng(config, stream_index)
    p1 = 2.0 * rng.random()
    xi, eta, gamma = (_disk_point(rng) for _ in range(3))
    # half of the draws put xi on the circle, where the Toeplitz extremes live
    if rng.random() < 0.5:
        xi = xi / abs(xi)
    return libera_expand(p1, xi, eta, gamma)
