"""
Paths and numeric defaults shared by the tracker, the limit model and the
study harness.
"""
import os.path
import math

DROPLET_PATH = os.path.realpath(os.path.join(
                     os.path.dirname(__file__), "..", ".."))

SCENARIO_PATH = os.path.join(DROPLET_PATH, "scenarios")

SCENARIO_SCHEMA = 1

# pressure laws
DEFAULT_GAS_K = 1.0
DEFAULT_GAS_GAMMA = 1.4
QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-12

# root finding
ROOT_TOL = 1e-11
ROOT_MAX_ITER = 100
BRACKET_FACTOR = 10.0
BRACKET_MAX_WIDEN = 4

# front tracking
ZERO_WAVE = 1e-12
TIME_GUARD = 1e-14
TRIPLE_SHIFT = 1e-12
STATE_MATCH_TOL = 1e-9
DEFAULT_MAX_EVENTS = 1000000

# functionals
CALIBRATION_SAMPLES = 200
CALIBRATION_SAFETY = 1.5
CALIBRATION_RADIUS = 0.05
CALIBRATION_MAX_SIZE = 0.02
# interface ratios are sampled over these etas and the run's own
CALIBRATION_ETAS = [10.0, 100.0, 1000.0, 10000.0]
DECREASE_TOL = 1e-10

# limit model
DEFAULT_ODE_STEPS = 2000

# study
DEFAULT_ETA_LADDER = [10.0, 30.0, 100.0, 300.0, 1000.0]
DEFAULT_WINDOW_DEPTH = 2
TREND_SLACK = 0.1
# values below this count as converged when checking a trend
TREND_FLOOR = 1e-12
# largest last/first ratio along a ladder spanning TREND_RATIO_SPAN or more
TREND_RATIO_SPAN = 100.0
TREND_RATIO_LIMITS = {
    'l1_v_liquid': 0.2,
    'l1_tau_liquid': 0.2,
    'trace_left': 0.2,
    'trace_right': 0.2,
    'weakstar': 0.25,
    'weakstar_windows': 0.25,
}
# pair of gas points for the space Lipschitz constant, in units of m
LIPSCHITZ_POINTS = (-0.25, -0.125)
LIPSCHITZ_SPREAD = 0.1


def scenario_path(name):
    if not name.endswith('.json'):
        name = name + '.json'
    return os.path.join(SCENARIO_PATH, name)


def fan_jump_count(sigma, epsilon):
    """
    Number of equal jumps a rarefaction of pressure size sigma is split
    into, so that each jump is at most epsilon.

    >>> fan_jump_count(0.35, 0.1)
    4
    >>> fan_jump_count(0.3, 0.1)
    3
    >>> fan_jump_count(0.05, 0.1)
    1
    """
    if sigma <= 0:
        raise ValueError("fan size must be positive: %r" % sigma)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive: %r" % epsilon)
    return max(1, int(math.ceil(sigma / epsilon - 1e-9)))
