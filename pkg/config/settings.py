import os
from dotenv import load_dotenv

# Load environment variables from .env file in project root
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
load_dotenv(os.path.join(project_root, '.env'))

# Logging is the only environment-configurable concern; numerical results never are.
LOG_LEVEL = os.getenv("COMPLEXCOMPOSE_LOG_LEVEL", "INFO")
LOG_DIR = os.getenv("COMPLEXCOMPOSE_LOG_DIR", os.path.join(project_root, "logs"))

# Coefficient catalog
CATALOG_RESIDUE_TOL = 5e-13
CONSISTENCY_TOL = 1e-13
SYMMETRY_TOL = 1e-14          # per stage
FILE_DECIMAL_DIGITS = 17

# Solver
NEWTON_FD_STEP = 1e-7
NEWTON_RESIDUAL_TOL = 1e-14
NEWTON_STEP_TOL = 1e-15
NEWTON_MAX_ITER = 50
NEWTON_DIVERGENCE_LIMIT = 1e6
ACCEPT_RESIDUAL_TOL = 1e-13
POLISH_BASIN_TOL = 1e-3
DEDUP_DISTANCE = 1e-8
DEFAULT_SEARCH_BOX = 1.0
DEFAULT_SEARCH_STARTS = 200
DEFAULT_SEED = 20220817
MAX_CLOSED_FORM_ORDER = 5

# Polynomial probes
DEFAULT_POLY_DEGREE = 24
MAX_POLY_DEGREE = 40
POLY_SIGNIFICANCE = 1e-9

# Stability scan
STABILITY_SCAN_STEP = 1e-3
STABILITY_BISECTION_TOL = 1e-8
STABILITY_GROWTH_TOL = 1e-9
STABILITY_SCAN_FACTOR = 10

# Log-log slope fits
NOISE_FLOOR = 1e-12
NOISE_EPS_FACTOR = 100
MIN_FIT_POINTS = 3

# Self-reference solutions
REFERENCE_STEP_DIVISOR = 50
REFERENCE_METHOD = "SC11"
REFERENCE_VALIDATION_TOL = 1e-12

# CSV output
CSV_SIGNIFICANT_DIGITS = 17
