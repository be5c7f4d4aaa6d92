"""Global constants for dirac-scs."""

import math

# Version
__version__ = "0.1.0"

# Logger configuration constants
VALID_LOG_TIME_MODES = ["none", "normal", "elapsed", "both"]
DEFAULT_LOG_TIMES_MODE = "elapsed"
VALID_COLOR_MODES = ["auto", "on", "off"]
DEFAULT_COLOR_MODE = "auto"

# Output formatting
FLOAT_FORMAT = ".17g"
DEFAULT_OUTPUT_DIR = "scs-output"
MANIFEST_NAME = "run.yaml"

# Algebra / kinematics tolerances
IDENTITY_TOL = 1e-12
ON_SHELL_TOL = 1e-9
ALGEBRA_CHECK_SEED = 20240611
ALGEBRA_CHECK_SAMPLES = 1000

# Mean-field dispersion search
ENERGY_WINDOW_SCALE = 10.0
ENERGY_BRACKETS = 4096
ROOT_DEDUP_TOL = 1e-9
ROOT_ACCEPT_TOL = 1e-9
ROOT_XTOL = 1e-15
ROOT_RTOL = 1e-15  # brentq rejects rtol below 4 * machine epsilon

# Phase handling
PHASE_EPSILON = 1e-10  # relative to max |field|

# Pairing-field solver
CFL_FACTOR = 0.5
KINK_NEWTON_TOL = 1e-10
KINK_NEWTON_MAX_ITER = 50
TRAVEL_RTOL = 1e-12
TRAVEL_ATOL = 1e-14

# Regime thresholds
REGIME_NEGLIGIBLE = 0.05
REGIME_SMALL_RATIO = 0.1
REGIME_MOLECULAR_RATIO = 1.0

SQRT2 = math.sqrt(2.0)

VALID_SUBCOMMANDS = [
    "algebra-check",
    "dispersion",
    "factorize",
    "evolve",
    "kink",
    "travel",
    "quasi",
    "regimes",
    "gauge",
]

# Parameter schemas: key -> (type, default).  A default of None means required
# when the subcommand actually needs it.
PARAMETER_SCHEMAS: dict[str, dict[str, tuple[type, object]]] = {
    "algebra-check": {
        "samples": (int, ALGEBRA_CHECK_SAMPLES),
    },
    "dispersion": {
        "m": (float, 1.0),
        "mu": (float, 0.0),
        "sigma": (float, 0.0),
        "re_delta": (float, 0.0),
        "im_delta": (float, 0.0),
        "p_min": (float, -2.0),
        "p_max": (float, 2.0),
        "p_steps": (int, 41),
    },
    "factorize": {
        "E": (float, 1.25),
        "p": (float, 0.75),
        "mu": (float, 0.0),
        "re_delta": (float, 0.0),
        "im_delta": (float, 0.0),
    },
    "evolve": {
        "nx": (int, 1024),
        "dx": (float, 0.05),
        "dt": (float, 0.0125),
        "steps": (int, 1000),
        "m_delta": (float, 1.0),
        "g_delta": (float, 6.0),
        "sign": (str, "manifest"),
        "boundary": (str, "periodic"),
        "ic": (str, "zero"),
        "snapshot_every": (int, 100),
        "rho_background": (float, 0.0),
    },
    "kink": {
        "m_delta": (float, 1.0),
        "g_delta": (float, 6.0),
        "nx": (int, 4096),
        "dx": (float, 0.01),
    },
    "travel": {
        "omega_rho": (float, 0.8),
        "k_rho": (float, 0.5),
        "omega_beta": (float, 2.0),
        "k_beta": (float, 1.0),
        "C": (float, 0.1),
        "rho_init": (float, 1.0),
        "m_delta": (float, 1.0),
        "u_max": (float, 5.0),
        "du": (float, 0.01),
        "variant": (str, "generic"),
    },
    "quasi": {
        "c1": (float, 1.0),
        "c2": (float, 1.0),
        "k_phi1": (float, 0.0),
        "k_phi2": (float, 0.0),
        "A_rho": (float, 0.05),
        "B_rho": (float, 0.0),
        "kappa": (float, 1.0),
        "k_rho": (float, 0.5),
        "omega_rho": (float, 0.25),
        "C_beta": (float, 0.0),
        "m": (float, 0.0),
        "mu": (float, 0.0),
        "background": (str, "cosine"),
        "x_min": (float, 0.0),
        "x_max": (float, 0.5),
        "nx": (int, 1001),
        "t_max": (float, 0.01),
        "nt": (int, 21),
    },
    "regimes": {
        "param1": (str, "p"),
        "min1": (float, 0.0),
        "max1": (float, 10.0),
        "steps1": (int, 11),
        "param2": (str, "condensate_fraction"),
        "min2": (float, 0.0),
        "max2": (float, 1.0),
        "steps2": (int, 11),
        "rho0": (float, 1.0),
        "condensate_fraction": (float, 0.95),
        "p": (float, 0.01),
        "q_beta": (float, 0.01),
        "q_delta": (float, 1.0),
        "mu": (float, 0.5),
        "m": (float, 1.0),
    },
    "gauge": {
        "phases": (str, ""),
        "mu": (float, 0.0),
    },
}
