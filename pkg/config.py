# config.py
import os
from dotenv import load_dotenv

load_dotenv()

# Runtime settings (overridable from the environment or a .env file)
LOG_LEVEL = os.getenv("LIPKIN_LOG_LEVEL", "INFO").upper()
OUTPUT_DIR = os.getenv("LIPKIN_OUTPUT_DIR", ".")
MAX_WORKERS = int(os.getenv("LIPKIN_WORKERS", "1"))

# Model defaults
DEFAULT_EPSILON = 1.0
DEFAULT_GRID_STEPS = 400  # dense enough for second-difference jump detection

# Default sweeps behind the figure commands
FIGURE_PARTICLES_TWO = (5, 10, 20, 50)
FIGURE_PARTICLES_THREE = (5, 10, 20)
FIGURE_CHI_RANGE_TWO = (0.2, 3.0)
FIGURE_CHI_RANGE_THREE = (0.2, 5.0)

# CSV persistence
CSV_FLOAT_FORMAT = ".17g"
CSV_DELIMITER = ","
CSV_LINE_TERMINATOR = "\n"

# Exact diagonalization
SYMMETRY_TOL = 1e-12      # |H_ij - H_ji| relative to max|H|
DEGENERACY_TOL = 1e-10    # ground-state gap relative to max|H|
PARITY_TOL = 1e-10        # weight allowed outside the even-parity sector
CLUSTER_TOL = 1e-6        # eigenvalues this close to E0 are searched for the even state
RESIDUAL_TOL = 1e-10      # ||H v - E v|| relative to max|H|

# Mean field
HF_MULTISTART = 16
HF_LBFGS_FTOL = 1e-15
HF_GRADIENT_TOL = 1e-13
HF_NEWTON_STEPS = 50
HF_SYMMETRIC_BRANCH_TOL = 1e-14  # relative energy window preferring the symmetric branch
HF_CLOSED_FORM_TOL = 1e-9        # warn above this angle deviation
HF_CLOSED_FORM_FATAL_TOL = 1e-6  # raise above this
VARIATIONAL_TOL = 1e-10

# Correlation measures
DISCORD_GRID = 64
DISCORD_REFINE_TOL = 1e-9
DISCORD_REFINE_STARTS = 4
NEGATIVE_CLAMP_TOL = 1e-12
STATE_TOL = 1e-10

# Transition detection
TRANSITION_JUMP_FACTOR = 5.0
TRANSITION_WINDOW = 6
TRANSITION_MIN_POINTS = 20
TRANSITION_NOISE_FLOOR = 1e-4  # fraction of the largest neighbour difference treated as rounding noise
