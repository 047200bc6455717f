"""
Certification of the extremal problems behind the sharp bounds.

This module reproduces every claimed extremum numerically:
- A catalog of objectives over the regions Lambda, Omega and Delta
- Grid scan plus coordinate-wise golden-section refinement
- Boundary restrictions as fitted polynomials with exact critical points
- Auxiliary boundary ceilings quoted inside the proofs
- Refutation witnesses for claims that the exact restrictions exceed
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import (DEFAULT_GRID, MIN_GRID, DEFAULT_REFINE_ITERS, DEFAULT_CERTIFY_TOLERANCE,
                    REFINE_SWEEPS, REFINE_WINDOW_CELLS, OMEGA_GRID, PROFILE_DEGREE,
                    FLOAT_AGREEMENT_TOLERANCE)
from coefficients.class_ids import ClassId
from systems.harness import BoundReport, STATUS_PASS, STATUS_FAIL, STATUS_REFUTED, get_bound
from systems.performance_manager import PerformanceManager
from utils.errors import UsageError

logger = logging.getLogger(__name__)

INV_GOLDEN = (math.sqrt(5) - 1) / 2


class Region(Enum):
    """Domains of the extremal problems"""
    LAMBDA = "Lambda"  # 0 <= x <= 1, 0 <= y <= 1 - x^2
    OMEGA = "Omega"  # [0,2] x [0,1] x [0,1]
    DELTA = "Delta"  # [0,2] x [0,1]

    @property
    def box(self) -> List[Tuple[float, float]]:
        """Search box; Lambda is searched in (x, s) with y = s(1 - x^2)"""
        if self == Region.OMEGA:
            return [(0.0, 2.0), (0.0, 1.0), (0.0, 1.0)]
        if self == Region.DELTA:
            return [(0.0, 2.0), (0.0, 1.0)]
        return [(0.0, 1.0), (0.0, 1.0)]

    def contains(self, point: Sequence[float], tol: float = 0.0) -> bool:
        if self == Region.LAMBDA:
            x, y = point
            return -tol <= x <= 1 + tol and -tol <= y <= 1 - x * x + tol
        return all(lo - tol <= value <= hi + tol for value, (lo, hi) in zip(point, self.box))


# ============================================================================
# OBJECTIVES
# ============================================================================
# Written with integer constants only, so the same code runs on numpy arrays,
# floats and Fractions.


def _k(x, y):
    return 1 - x * x - y * y / (1 + x)


def chi_e(x, y):
    return (x ** 4 + 48 * y * y + 36 * x * x * y + 24 * x * _k(x, y)) / 768


def upsilon_e(x, y):
    return (x ** 4 + 18 * x * x * y + 24 * y * y + 12 * x * _k(x, y)) / 96


def phi_e(x, y):
    k = _k(x, y)
    rest = 1 - x * x - y * y
    return (109 * x ** 6 / 2304 + 53 * x ** 4 * y / 192 + 33 * x * x * y * y / 64
            + y ** 3 / 4 + x ** 3 * k / 96 + x * y * k / 16 + k * k / 16
            + x * x * rest / 16 + y * rest / 8)


def u_e(x, y):
    return 3 * (x ** 6 + 8 * y ** 3 + 6 * x ** 4 * y + 12 * x * x * y * y) / 64


def diff22_e(x, y):
    return x * x * y / 8


def beta_l(x, y):
    return (x ** 4 + 12 * x * x * y + 32 * y * y + 16 * x * _k(x, y)) / 512


def alpha_l(x, y):
    return (3 * x ** 4 + 4 * x * x * y + 32 * y * y + 16 * x * _k(x, y)) / 512


def mu_l(x, y):
    k = _k(x, y)
    rest = 1 - x * x - y * y
    return (19 * x ** 6 + 200 * x ** 4 * y + 688 * x * x * y * y + 768 * y ** 3
            + 32 * x ** 3 * k + 128 * x * y * k + 256 * k * k
            + 128 * x * x * rest + 512 * y * rest) / 16384


def v_l(x, y):
    return 3 * (x ** 6 + 64 * y ** 3 + 12 * x ** 4 * y + 48 * x * x * y * y) / 4096


def diff22_l(x, y):
    return (x ** 4 + 2 * x * x * y) / 128


def n_l(p, x, y):
    t = 4 - p * p
    return (38 * p ** 4 + 48 * p * p * t * (x + 4 * x * x)
            + 384 * p * y * t * (1 - x * x) + 384 * t * t * x * x) / 393216


def _toeplitz(quartic: int, quadratic: int, cross: int, square: int, scale: int) -> Callable:
    """(quartic p^4 + quadratic p^2 + cross p^2 t x + square t^2 x^2)/scale with t = 4 - p^2"""
    def objective(p, x):
        t = 4 - p * p
        return (quartic * p ** 4 + quadratic * p * p + cross * p * p * t * x
                + square * t * t * x * x) / scale
    return objective


phit_e = _toeplitz(-1, 64, 8, -16, 4096)
psit_e = _toeplitz(-1, 64, -8, -16, 4096)
kappa_l = _toeplitz(-9, 256, 48, -64, 65536)
g_l = _toeplitz(-9, 256, -48, -64, 65536)
delta_l = _toeplitz(-25, 256, 80, -64, 65536)
j_l = _toeplitz(-25, 256, -80, -64, 65536)


@dataclass(frozen=True)
class ObjectiveSpec:
    """One extremal problem with its published extremum"""
    id: str
    arity: int
    formula: Callable
    region: Region
    sense: str  # "max" or "min"
    claimed_value: Fraction
    claimed_point: Tuple
    statement: str
    class_id: ClassId
    group: str = ""
    functional: str = ""  # bound-table key of the functional this objective controls
    corrected_value: Optional[Fraction] = None  # exact supremum when the claim is too small
    witness_edge: Optional[str] = None  # set on claims the boundary restriction exceeds

    @property
    def refuted(self) -> bool:
        return self.witness_edge is not None

    def evaluate(self, point: Sequence) -> object:
        return self.formula(*point)

    def exact_claim_value(self) -> Optional[Fraction]:
        """Rational value at the claimed point, or None when the point is irrational"""
        if not all(isinstance(v, (int, Fraction)) for v in self.claimed_point):
            return None
        return self.formula(*(Fraction(v) for v in self.claimed_point))


def objective_catalog() -> List[ObjectiveSpec]:
    F = Fraction
    sse, ssl = ClassId.SSE, ClassId.SSL
    lam, omega, delta = Region.LAMBDA, Region.OMEGA, Region.DELTA
    half_root = math.sqrt(0.5)
    return [
        ObjectiveSpec("chi_e", 2, chi_e, lam, "max", F(1, 16), (0, 1),
                      "SSe |H21(F_{f^-1}/2)| <= 1/16", sse,
                      "SSe H21 of the inverse log", functional="h21_log_inverse"),
        ObjectiveSpec("upsilon_e", 2, upsilon_e, lam, "max", F(1, 4), (0, 1),
                      "SSe |H22(f^-1)| <= 1/4", sse,
                      "SSe H22 of the inverse", functional="h22_inverse"),
        ObjectiveSpec("phi_e", 2, phi_e, lam, "max", F(1, 4), (0, 1),
                      "SSe |H23(f^-1)| <= 1/4", sse,
                      "SSe H23 of the inverse", functional="h23_inverse",
                      witness_edge="y=1-x^2"),
        ObjectiveSpec("u_e", 2, u_e, lam, "max", F(3, 8), (0, 1),
                      "SSe |H23(f^-1) - H23(f)| <= 3/8", sse,
                      "SSe H23 of the inverse", functional="h23_diff"),
        ObjectiveSpec("diff22_e", 2, diff22_e, lam, "max", F(1, 32), (half_root, F(1, 2)),
                      "SSe |H22(f^-1) - H22(f)| <= 1/32", sse,
                      "SSe H22 of the inverse", functional="h22_diff"),
        ObjectiveSpec("N_L", 3, n_l, omega, "max", F(1, 64), (0, 1, 0),
                      "SSL |H21(F_{f^-1}/2)| <= 1/64", ssl,
                      "SSL H21 of the inverse log", functional="h21_log_inverse"),
        ObjectiveSpec("beta_L", 2, beta_l, lam, "max", F(1, 16), (0, 1),
                      "SSL |H22(f)| <= 1/16", ssl,
                      "SSL H22", functional="h22"),
        ObjectiveSpec("alpha_L", 2, alpha_l, lam, "max", F(1, 16), (0, 1),
                      "SSL |H22(f^-1)| <= 1/16", ssl,
                      "SSL H22", functional="h22_inverse"),
        ObjectiveSpec("mu_L", 2, mu_l, lam, "max", F(3, 64), (0, 1),
                      "SSL |H23(f^-1)| <= 3/64", ssl,
                      "SSL H23 of the inverse", functional="h23_inverse"),
        ObjectiveSpec("v_L", 2, v_l, lam, "max", F(3, 64), (0, 1),
                      "SSL |H23(f^-1) - H23(f)| <= 3/64", ssl,
                      "SSL H23 of the inverse", functional="h23_diff"),
        ObjectiveSpec("diff22_L", 2, diff22_l, lam, "max", F(1, 128), (1, 0),
                      "SSL |H22(f^-1) - H22(f)| <= 1/128", ssl,
                      "SSL H22", functional="h22_diff"),
        ObjectiveSpec("PhiT_e", 2, phit_e, delta, "max", F(15, 256), (2, 0),
                      "SSe T21(F_f/gamma), T21(F_{f^-1}/Gamma) <= 15/256", sse,
                      "SSe T21 of the log coefficients", functional="t21_log"),
        ObjectiveSpec("PsiT_e", 2, psit_e, delta, "min", F(-1, 16), (0, 1),
                      "SSe T21(F_f/gamma), T21(F_{f^-1}/Gamma) >= -1/16", sse,
                      "SSe T21 of the log coefficients", functional="t21_log"),
        ObjectiveSpec("kappa_L", 2, kappa_l, delta, "max", F(55, 4096), (2, 0),
                      "SSL T21(F_f/gamma) <= 55/4096", ssl,
                      "SSL T21 of the log coefficients", functional="t21_log",
                      corrected_value=F(13, 968), witness_edge="x=1"),
        ObjectiveSpec("G_L", 2, g_l, delta, "min", F(-1, 64), (0, 1),
                      "SSL T21(F_f/gamma) >= -1/64", ssl,
                      "SSL T21 of the log coefficients", functional="t21_log"),
        ObjectiveSpec("delta_L", 2, delta_l, delta, "max", F(39, 4096), (2, 0),
                      "SSL T21(F_{f^-1}/Gamma) <= 39/4096", ssl,
                      "SSL T21 of the inverse log coefficients", functional="t21_log_inverse",
                      corrected_value=F(15, 1352), witness_edge="x=1"),
        ObjectiveSpec("J_L", 2, j_l, delta, "min", F(-1, 64), (0, 1),
                      "SSL T21(F_{f^-1}/Gamma) >= -1/64", ssl,
                      "SSL T21 of the inverse log coefficients", functional="t21_log_inverse"),
    ]


def get_objective(objective_id: str) -> ObjectiveSpec:
    for spec in objective_catalog():
        if spec.id == objective_id:
            return spec
    raise UsageError(f"unknown objective {objective_id!r}", example="chi_e")


# ============================================================================
# OPTIMIZER
# ============================================================================


def _to_region(spec: ObjectiveSpec, coords: Sequence):
    """Map search coordinates to region coordinates"""
    if spec.region == Region.LAMBDA:
        x, s = coords
        return (x, s * (1 - x * x))
    return tuple(coords)


def _golden_max(g: Callable[[float], float], a: float, b: float,
                iters: int) -> Tuple[float, float]:
    """Golden-section search for the maximum of g on [a, b]; endpoints are candidates too"""
    candidates = [(g(a), -a, a), (g(b), -b, b)]
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - INV_GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + INV_GOLDEN * (b - a)
            gd = g(d)
    candidates.extend([(gc, -c, c), (gd, -d, d)])
    value, _, point = max(candidates)
    return point, value


def optimize(spec: ObjectiveSpec, grid: int = DEFAULT_GRID,
             refine_iters: int = DEFAULT_REFINE_ITERS) -> Tuple[Tuple[float, ...], float]:
    """Locate the extremum of an objective: grid scan, golden-section refinement, edge profiles"""
    if grid < MIN_GRID:
        raise UsageError(f"grid must be at least {MIN_GRID}, got {grid}", example="--grid 512")
    sign = 1.0 if spec.sense == "max" else -1.0
    box = spec.region.box
    points = min(grid, OMEGA_GRID) if spec.arity == 3 else grid

    axes = [np.linspace(lo, hi, points) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    values = sign * spec.formula(*_to_region(spec, mesh))
    # argmax returns the first maximum in C order: the lexicographically smallest index
    index = np.unravel_index(int(np.argmax(values)), values.shape)
    best = [float(axes[i][index[i]]) for i in range(len(box))]
    best_value = float(values[index])

    steps = [(hi - lo) / (points - 1) for lo, hi in box]
    for _ in range(REFINE_SWEEPS):
        for i, (lo, hi) in enumerate(box):
            def along(t, i=i):
                trial = list(best)
                trial[i] = t
                return sign * float(spec.formula(*_to_region(spec, trial)))

            a = max(lo, best[i] - REFINE_WINDOW_CELLS * steps[i])
            b = min(hi, best[i] + REFINE_WINDOW_CELLS * steps[i])
            t, value = _golden_max(along, a, b, refine_iters)
            if value > best_value:
                best[i], best_value = t, value

    point = tuple(float(v) for v in _to_region(spec, best))

    # edges where the objective is flat in one variable can trap the coordinate sweeps
    for edge in EDGES[spec.region]:
        profile = boundary_profile(spec, edge)
        if sign * profile.value > best_value:
            point, best_value = profile.point, sign * profile.value

    logger.debug(f"{spec.id}: {spec.sense} {sign * best_value:.15g} at {point}")
    return point, sign * best_value


# ============================================================================
# BOUNDARY PROFILES
# ============================================================================


def _const(value: float, like):
    return np.full_like(like, value, dtype=float)


# edge name -> (variable low, variable high, variable -> region point)
EDGES: Dict[Region, Dict[str, Tuple[float, float, Callable]]] = {
    Region.LAMBDA: {
        "y=0": (0.0, 1.0, lambda x: (x, _const(0.0, x))),
        "x=0": (0.0, 1.0, lambda y: (_const(0.0, y), y)),
        "y=1-x^2": (0.0, 1.0, lambda x: (x, 1 - x * x)),
    },
    Region.DELTA: {
        "p=0": (0.0, 1.0, lambda x: (_const(0.0, x), x)),
        "p=2": (0.0, 1.0, lambda x: (_const(2.0, x), x)),
        "x=0": (0.0, 2.0, lambda p: (p, _const(0.0, p))),
        "x=1": (0.0, 2.0, lambda p: (p, _const(1.0, p))),
    },
    Region.OMEGA: {
        "x=0,y=1": (0.0, 2.0, lambda p: (p, _const(0.0, p), _const(1.0, p))),
        "x=1,y=0": (0.0, 2.0, lambda p: (p, _const(1.0, p), _const(0.0, p))),
        "x=1,y=1": (0.0, 2.0, lambda p: (p, _const(1.0, p), _const(1.0, p))),
        "p=0,y=1": (0.0, 1.0, lambda x: (_const(0.0, x), x, _const(1.0, x))),
        "p=2,y=1": (0.0, 1.0, lambda x: (_const(2.0, x), x, _const(1.0, x))),
    },
}


@dataclass
class BoundaryProfile:
    """Restriction of an objective to one edge of its region"""
    objective: str
    edge: str
    interval: Tuple[float, float]
    polynomial: np.polynomial.Chebyshev
    value: float  # extremum in the objective's sense
    at: float  # edge variable
    point: Tuple[float, ...]


def boundary_profile(spec: ObjectiveSpec, edge: str) -> BoundaryProfile:
    """Fit the restriction to an edge and extremize it over critical points and endpoints"""
    edges = EDGES[spec.region]
    if edge not in edges:
        raise UsageError(f"{spec.id} has no edge {edge!r}", example=", ".join(edges))
    lo, hi, to_point = edges[edge]

    # Chebyshev nodes keep the degree-PROFILE_DEGREE fit exact to roundoff
    count = 2 * PROFILE_DEGREE + 1
    nodes = lo + (hi - lo) * (1 - np.cos(np.pi * (np.arange(count) + 0.5) / count)) / 2
    samples = spec.formula(*to_point(nodes))
    polynomial = np.polynomial.Chebyshev.fit(nodes, samples, PROFILE_DEGREE, domain=[lo, hi])

    candidates = [lo, hi]
    for root in polynomial.deriv().roots():
        if abs(root.imag) < 1e-9 and lo <= root.real <= hi:
            candidates.append(float(root.real))

    def exact_on_edge(t: float) -> float:
        point = to_point(np.array([t]))
        return float(spec.formula(*point)[0])

    sign = 1.0 if spec.sense == "max" else -1.0
    scored = sorted((-sign * exact_on_edge(t), t) for t in candidates)
    best_t = scored[0][1]
    best_value = exact_on_edge(best_t)
    point = tuple(float(c[0]) for c in to_point(np.array([best_t])))
    return BoundaryProfile(spec.id, edge, (lo, hi), polynomial, best_value, best_t, point)


# ============================================================================
# AUXILIARY CEILINGS
# ============================================================================


@dataclass(frozen=True)
class AuxiliaryCeiling:
    """A boundary maximum quoted inside a proof"""
    id: str
    objective: str
    edge: str
    quoted: Fraction
    half_unit: Optional[Fraction] = None  # decimal quotes: half a unit in the last digit
    exact_point: Optional[Tuple] = None  # exact quotes: rational argmax


AUXILIARY_CEILINGS: List[AuxiliaryCeiling] = [
    AuxiliaryCeiling("chi_e(x,0)", "chi_e", "y=0", Fraction("0.0122"), Fraction(5, 10 ** 5)),
    AuxiliaryCeiling("upsilon_e(x,0)", "upsilon_e", "y=0", Fraction("0.049"), Fraction(5, 10 ** 4)),
    AuxiliaryCeiling("beta_L(x,0)", "beta_L", "y=0", Fraction("0.0123"), Fraction(5, 10 ** 5)),
    AuxiliaryCeiling("alpha_L(x,0)", "alpha_L", "y=0", Fraction("0.0128"), Fraction(5, 10 ** 5)),
    AuxiliaryCeiling("N_L(p,0,1)", "N_L", "x=0,y=1", Fraction("0.0032"), Fraction(5, 10 ** 5)),
    AuxiliaryCeiling("N_L(2,x,y)", "N_L", "p=2,y=1", Fraction(19, 12288), exact_point=(2, 0, 0)),
    AuxiliaryCeiling("N_L(p,1,y)", "N_L", "x=1,y=0", Fraction(1, 64), exact_point=(0, 1, 0)),
    AuxiliaryCeiling("phi_e(x,0)", "phi_e", "y=0", Fraction(1, 16), exact_point=(0, 0)),
    AuxiliaryCeiling("mu_L(x,0)", "mu_L", "y=0", Fraction(1, 64), exact_point=(0, 0)),
]


def check_auxiliary(ceiling: AuxiliaryCeiling) -> BoundReport:
    spec = get_objective(ceiling.objective)
    profile = boundary_profile(spec, ceiling.edge)
    gap = profile.value - float(ceiling.quoted)

    if ceiling.exact_point is not None:
        exact = spec.formula(*(Fraction(v) for v in ceiling.exact_point))
        passed = exact == ceiling.quoted and abs(gap) <= FLOAT_AGREEMENT_TOLERANCE
        note = f"exact value {exact} at {ceiling.exact_point}"
    else:
        passed = abs(gap) <= float(ceiling.half_unit)
        note = f"quoted to +/- {float(ceiling.half_unit):g}"

    return BoundReport(
        id=f"aux:{ceiling.id}",
        claimed=ceiling.quoted,
        computed=profile.value,
        gap=gap,
        status=STATUS_PASS if passed else STATUS_FAIL,
        group="auxiliary",
        witness=profile.point,
        note=note,
        class_id=spec.class_id,
        functional=spec.functional,
    )


# ============================================================================
# CERTIFICATION
# ============================================================================


def _report_labels(spec: ObjectiveSpec) -> Dict[str, object]:
    """Class, functional and the extremal function attaining this objective's extremum"""
    bound = get_bound(spec.class_id, spec.functional)
    extremal = bound.extremal if spec.sense == "max" else bound.lower_extremal
    return {"class_id": spec.class_id, "functional": spec.functional, "extremal": extremal}


def certify_objective(spec: ObjectiveSpec, grid: int = DEFAULT_GRID,
                      refine_iters: int = DEFAULT_REFINE_ITERS,
                      tol: float = DEFAULT_CERTIFY_TOLERANCE) -> BoundReport:
    """Optimize one objective and compare it with its claimed extremum"""
    point, computed = optimize(spec, grid, refine_iters)
    claimed = float(spec.claimed_value)
    gap = computed - claimed
    labels = _report_labels(spec)

    if not spec.refuted:
        status = STATUS_PASS if abs(gap) <= tol else STATUS_FAIL
        return BoundReport(spec.id, spec.claimed_value, computed, gap, status,
                           group=spec.group, witness=point, note=spec.statement, **labels)

    profile = boundary_profile(spec, spec.witness_edge)
    exceeds = profile.value > claimed + tol
    located = computed >= profile.value - tol
    matches = (spec.corrected_value is None
               or abs(profile.value - float(spec.corrected_value)) <= tol)
    status = STATUS_REFUTED if exceeds and located and matches else STATUS_FAIL
    sharp = spec.corrected_value if spec.corrected_value is not None else profile.value
    supremum = sharp if spec.corrected_value is not None else f"{profile.value:.12g}"
    if spec.corrected_value is None:
        labels["extremal"] = f"relaxation point on {spec.witness_edge}"
    note = (f"{spec.statement}; edge {spec.witness_edge} reaches {supremum} "
            f"at {tuple(round(v, 9) for v in profile.point)}")
    if status == STATUS_REFUTED:
        logger.warning(f"{spec.id}: published extremum {spec.claimed_value} exceeded, {note}")
    return BoundReport(spec.id, spec.claimed_value, computed, gap, status, group=spec.group,
                       published_value=spec.claimed_value, witness=profile.point, note=note,
                       sharp_value=sharp, **labels)


def certify_all(grid: int = DEFAULT_GRID, refine_iters: int = DEFAULT_REFINE_ITERS,
                tol: float = DEFAULT_CERTIFY_TOLERANCE,
                manager: Optional[PerformanceManager] = None) -> List[BoundReport]:
    """One report per catalog objective, then one per auxiliary ceiling"""
    if tol <= 0:
        raise UsageError(f"tolerance must be positive, got {tol}", example="--tol 1e-6")
    manager = manager or PerformanceManager()

    reports = []
    for spec in objective_catalog():
        with manager.timed(f"certify {spec.id}"):
            report = certify_objective(spec, grid, refine_iters, tol)
        report.elapsed = manager.elapsed(f"certify {spec.id}")
        if report.status == STATUS_FAIL:
            logger.warning(f"{spec.id}: computed {report.computed:.12g}, claimed {spec.claimed_value}")
        reports.append(report)

    for ceiling in AUXILIARY_CEILINGS:
        report = check_auxiliary(ceiling)
        if report.status == STATUS_FAIL:
            logger.warning(f"{report.id}: boundary maximum {report.computed:.12g}, "
                           f"quoted {ceiling.quoted}")
        reports.append(report)

    passed = sum(1 for r in reports if r.status == STATUS_PASS)
    logger.info(f"Certified {len(reports)} claim(s): {passed} pass")
    return reports
