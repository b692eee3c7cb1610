"""Numeric and closed-form time evolution of the ion-cavity state."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from catsim.config import settings
from catsim.dynamics.observables import observables
from catsim.engine import hilbert, qcore
from catsim.engine.hilbert import Operator, PureState, QubitLevel, TruncationScheme
from catsim.engine.model import SystemParams, vib_displacement
from catsim.errors import TruncationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrajectoryRecord:
    times: np.ndarray
    states: Tuple[PureState, ...]
    norm: np.ndarray
    fidelity: Optional[np.ndarray]
    p_e: np.ndarray
    p_g: np.ndarray
    n_vib_mean: np.ndarray
    n_cav_mean: np.ndarray
    parity: np.ndarray


def initial_state(trunc: TruncationScheme) -> PureState:
    qubit = (hilbert.qubit_ket(QubitLevel.EXCITED) + hilbert.qubit_ket(QubitLevel.GROUND)) / math.sqrt(2)
    return hilbert.product_state(
        hilbert.fock_state(trunc.n_vib, 0, trunc.guard),
        hilbert.fock_state(trunc.n_cav, 0, trunc.cav_guard),
        qubit,
        trunc,
    )


def _check_times(times: Sequence[float]) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1:
        raise ValueError("times must be a one-dimensional sequence")
    if np.any(times < 0):
        raise ValueError("times must be nonnegative")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be sorted")
    return times


def evolve_numeric(
    h: Operator,
    psi0: PureState,
    times: Sequence[float],
    trunc: TruncationScheme,
    *,
    frame: Optional[Operator] = None,
    reference: Optional[Callable[[float], PureState]] = None,
) -> TrajectoryRecord:
    """Evolve psi0 under exp(-i h t); with a frame T, h acts in the transformed frame."""
    times = _check_times(times)
    eigenvalues, eigenvectors = qcore.herm_eig(h.matrix)

    start = psi0 if frame is None else frame @ psi0
    coefficients = qcore.dagger(eigenvectors) @ start.amplitudes
    frame_dag = None if frame is None else frame.dag()

    states = []
    for t in times:
        if t == 0:
            amplitudes = start.amplitudes
        else:
            amplitudes = eigenvectors @ (np.exp(-1j * eigenvalues * t) * coefficients)
        state = PureState(amplitudes, h.signature, psi0.norm_deficit)
        if frame_dag is not None:
            state = frame_dag @ state
        states.append(state)

    norms = np.array([hilbert.interior_norm(state, trunc) for state in states])
    drift = float(np.max(1.0 - norms)) if norms.size else 0.0
    if drift > settings.NORM_DRIFT_TOL:
        worst = int(np.argmax(1.0 - norms))
        raise TruncationError(
            f"Interior norm drift {drift:.3e} at t={times[worst]:.6g} exceeds "
            f"{settings.NORM_DRIFT_TOL:.1e}; increase n_vib/n_cav or the guard band"
        )

    fidelity = None
    if reference is not None:
        fidelity = np.array(
            [qcore.fidelity(reference(t).amplitudes, state.amplitudes) for t, state in zip(times, states)]
        )

    values = [observables(state) for state in states]
    return TrajectoryRecord(
        times=times,
        states=tuple(states),
        norm=norms,
        fidelity=fidelity,
        p_e=np.array([v.p_e for v in values]),
        p_g=np.array([v.p_g for v in values]),
        n_vib_mean=np.array([v.n_vib_mean for v in values]),
        n_cav_mean=np.array([v.n_cav_mean for v in values]),
        parity=np.array([v.parity for v in values]),
    )


def analytic_propagator(p: SystemParams, t: float, trunc: TruncationScheme) -> Operator:
    """Closed-form U(t): free phases, D(beta)-conditional displacement, sigma_x rotation."""
    free = hilbert.local_operator(
        trunc,
        vib=np.diag(np.exp(-1j * p.nu * t * np.arange(trunc.n_vib))),
        cav=np.diag(np.exp(-1j * p.omega * t * np.arange(trunc.n_cav))),
    )
    d = vib_displacement(p, trunc)
    conditional = hilbert.local_operator(trunc, vib=d, qubit=hilbert.PROJECT_E) + hilbert.local_operator(
        trunc, vib=qcore.dagger(d), qubit=hilbert.PROJECT_G
    )
    angle = p.omega0 * t / 2
    rotation = hilbert.embed(
        math.cos(angle) * np.eye(2) + 1j * math.sin(angle) * hilbert.SIGMA_X,
        hilbert.Slot.QUBIT,
        trunc,
    )
    return free @ conditional @ rotation


def analytic_state(p: SystemParams, t: float, trunc: TruncationScheme) -> PureState:
    beta_t = np.exp(-1j * p.nu * t) * p.beta
    vacuum = hilbert.fock_state(trunc.n_cav, 0, trunc.cav_guard)
    excited = np.kron(
        np.kron(hilbert.coherent_state(trunc.n_vib, beta_t, trunc.guard), vacuum),
        hilbert.qubit_ket(QubitLevel.EXCITED),
    )
    ground = np.kron(
        np.kron(hilbert.coherent_state(trunc.n_vib, -beta_t, trunc.guard), vacuum),
        hilbert.qubit_ket(QubitLevel.GROUND),
    )
    phase = np.exp(-0.5j * p.omega0 * t) / math.sqrt(2)
    return PureState(
        phase * (excited + ground),
        trunc.signature,
        norm_deficit=hilbert.coherent_leakage(trunc.n_vib, beta_t),
    )
