"""Numerical settings for CatSim."""

from __future__ import annotations

import math

HERMITIAN_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
UNITARY_TOL = 1e-9
NORMALIZED_TOL = 1e-10
NORM_DRIFT_TOL = 1e-8
TRANSFORM_REL_TOL = 1e-6
INTERIOR_UNITARY_TOL = 1e-8
ZERO_PROBABILITY_TOL = 1e-14
COHERENT_LEAKAGE_TOL = 1e-10

MAX_TOTAL_DIM = 2000
DEFAULT_GUARD = 5

REGIME_RATIO_THRESHOLD = 50.0
LAMB_DICKE_THRESHOLD = 0.3

DEFAULT_N_STEPS = 64
DEFAULT_T_MAX = 2 * math.pi
DEFAULT_WIGNER_HALF_WIDTH = 1.5
DEFAULT_WIGNER_POINTS = 31
SPECTRUM_COUNT = 8

OUTPUT_DIR = "results"
SIGNIFICANT_DIGITS = 12
WORKERS_ENV_VAR = "CATSIM_WORKERS"
