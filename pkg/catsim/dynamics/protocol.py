"""Pulse, projective measurement and the cat states they produce."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from catsim.config import settings
from catsim.engine import hilbert
from catsim.engine.hilbert import PureState, QubitLevel
from catsim.errors import DegenerateCatError

logger = logging.getLogger(__name__)

# Rows and columns in the (e, g) basis order.
PULSE_V = np.array([[1, 1], [-1, 1]], dtype=complex) / math.sqrt(2)
PULSE_V.setflags(write=False)


class CatBranch(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is CatBranch.PLUS else -1


class NormalizationMode(str, Enum):
    NOMINAL = "nominal"
    PROPER = "proper"


@dataclass(frozen=True)
class CatState:
    branch: CatBranch
    beta_t: complex
    normalization_mode: NormalizationMode
    amplitudes: np.ndarray
    leakage: float = 0.0

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class CollapseResult:
    outcome: QubitLevel
    probability: float
    motional: Optional[np.ndarray]

    @property
    def empty(self) -> bool:
        return self.motional is None


def apply_pulse_v(psi: PureState) -> PureState:
    rotated = np.einsum("ij,abj->abi", PULSE_V, psi.as_tensor())
    return PureState(rotated, psi.signature, psi.norm_deficit)


def collapse_measure(
    psi: PureState,
    outcome: QubitLevel,
    require_cavity_vacuum: bool = True,
) -> CollapseResult:
    """Project the qubit (and optionally the cavity onto vacuum); renormalize what is left.

    Without the cavity projection the conditional state lives on vibration x cavity
    and is returned flattened in that order.
    """
    outcome = QubitLevel(outcome)
    branch = psi.as_tensor()[..., outcome.index]
    if require_cavity_vacuum:
        branch = branch[:, 0]

    conditional = branch.ravel()
    probability = float(np.vdot(conditional, conditional).real)
    if probability <= settings.ZERO_PROBABILITY_TOL:
        logger.warning("Collapse outcome %s has zero probability", outcome.value)
        return CollapseResult(outcome=outcome, probability=probability, motional=None)
    return CollapseResult(
        outcome=outcome,
        probability=probability,
        motional=conditional / math.sqrt(probability),
    )


def outcome_probabilities(psi: PureState) -> Dict[Tuple[QubitLevel, bool], float]:
    """Probabilities over (qubit level, cavity in vacuum)."""
    populations = np.abs(psi.as_tensor()) ** 2
    result = {}
    for level in QubitLevel:
        level_populations = populations[..., level.index]
        vacuum = float(level_populations[:, 0].sum())
        result[(level, True)] = vacuum
        result[(level, False)] = float(level_populations.sum()) - vacuum
    return result


def cat_state(
    beta_t: complex,
    branch: CatBranch,
    n_vib: int,
    mode: NormalizationMode = NormalizationMode.PROPER,
    guard: int = settings.DEFAULT_GUARD,
) -> CatState:
    branch = CatBranch(branch)
    mode = NormalizationMode(mode)
    if branch is CatBranch.MINUS and beta_t == 0:
        raise DegenerateCatError("Odd cat state with beta_t = 0 is the zero vector")

    plus = hilbert.coherent_state(n_vib, beta_t, guard)
    minus = hilbert.coherent_state(n_vib, -beta_t, guard)
    amplitudes = (plus + branch.sign * minus) / math.sqrt(2)
    if mode is NormalizationMode.PROPER:
        amplitudes = amplitudes / np.linalg.norm(amplitudes)
    amplitudes.setflags(write=False)
    return CatState(
        branch=branch,
        beta_t=beta_t,
        normalization_mode=mode,
        amplitudes=amplitudes,
        leakage=hilbert.coherent_leakage(n_vib, beta_t),
    )


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """<alpha|beta> for untruncated coherent states."""
    return complex(np.exp(-abs(alpha) ** 2 / 2 - abs(beta) ** 2 / 2 + np.conj(alpha) * beta))


def cat_norm_squared(beta_t: complex, branch: CatBranch) -> float:
    """Squared norm of (|b> +/- |-b>)/sqrt(2)."""
    return 1.0 + CatBranch(branch).sign * math.exp(-2 * abs(beta_t) ** 2)


def cat_mean_number(beta_t: complex, branch: CatBranch) -> float:
    x = abs(beta_t) ** 2
    if CatBranch(branch) is CatBranch.PLUS:
        return x * math.tanh(x)
    if x == 0:
        raise DegenerateCatError("Odd cat state with beta_t = 0 is the zero vector")
    return x / math.tanh(x)
