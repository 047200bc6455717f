# Centralized Toolkit Configuration
# This file contains the commonly tuned constants of the verification toolkit for easier maintenance

# ============================================================================
# SERIES ARITHMETIC SETTINGS
# ============================================================================

# Every functional needs coefficients only through a5; order 8 leaves room for oracle checks
DEFAULT_TRUNCATION_ORDER = 8
SCALAR_MODES = ["exact", "float"]

# ============================================================================
# TOLERANCES
# ============================================================================

FEASIBILITY_TOLERANCE = 1e-12  # slack allowed in coefficient-inequality checks
VIOLATION_TOLERANCE = 1e-9  # absolute slack when counting bound violations
DEFAULT_CERTIFY_TOLERANCE = 1e-6  # optimizer value vs claimed extremum
FLOAT_AGREEMENT_TOLERANCE = 1e-12  # float vs exact series coefficients

# ============================================================================
# OPTIMIZER SETTINGS
# ============================================================================

DEFAULT_GRID = 512  # points per axis
MIN_GRID = 64
DEFAULT_REFINE_ITERS = 40  # golden-section iterations per coordinate sweep
REFINE_SWEEPS = 3  # coordinate sweeps after the grid scan
REFINE_WINDOW_CELLS = 2  # half-width of the refinement bracket, in grid cells
OMEGA_GRID = 96  # points per axis on the three-dimensional cuboid
PROFILE_DEGREE = 12  # boundary restrictions are polynomials of at most this degree

# ============================================================================
# SAMPLER SETTINGS
# ============================================================================

SAMPLER_KINDS = ["blaschke_mix", "herglotz_mix", "libera"]
DEFAULT_SAMPLER_DEGREE = 4  # Möbius factors per inner map
MAX_SAMPLER_DEGREE = 4
DEFAULT_SAMPLER_ATOMS = 3  # maps per convex combination
MAX_SAMPLER_ATOMS = 6

# Probability that a draw is a single inner map rather than a convex mix;
# single maps reach the boundary of the coefficient body
SINGLE_ATOM_PROBABILITY = 0.5

# Exponent for Möbius zero radii r = 1 - u**RADIUS_EXPONENT, pushing zeros towards the circle
RADIUS_EXPONENT = 3.0

# ============================================================================
# CAMPAIGN SETTINGS
# ============================================================================

DEFAULT_TRIALS = 100000
DEFAULT_SEED = 42
CHUNK_SIZE = 2048  # stream indices per parallel work unit
THREADS_ENV_VAR = "SAKAGUCHI_THREADS"
DEFAULT_THREADS = 1
WORKER_BACKENDS = ["process", "thread"]
DEFAULT_WORKER_BACKEND = "process"

# ============================================================================
# OUTPUT SETTINGS
# ============================================================================

OUTPUT_FORMATS = ["json", "csv", "markdown"]
DEFAULT_OUTPUT_FORMAT = "json"
CSV_REPORT_HEADER = ["id", "claimed", "computed", "gap", "status"]
TRIAL_CSV_HEADER = ["class", "functional", "trials", "max_abs", "bound", "violations",
                    "gap_to_bound", "status", "extremal"]
EXPANSION_CSV_HEADER = ["quantity", "value"]
FLOAT_REPORT_DIGITS = 12  # significant digits for float fields in reports

# ============================================================================
# LOGGING SETTINGS
# ============================================================================

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
DEFAULT_LOG_LEVEL = "WARNING"

# ============================================================================
# EXIT CODES
# ============================================================================

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
