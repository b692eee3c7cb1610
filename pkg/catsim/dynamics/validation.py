"""Compare closed-form evolution against brute-force numerics."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from catsim.dynamics.evolve import (
    TrajectoryRecord,
    analytic_propagator,
    analytic_state,
    evolve_numeric,
    initial_state,
)
from catsim.engine import model, qcore
from catsim.engine.hilbert import Operator, PureState, TruncationScheme
from catsim.engine.model import RegimeReport, SystemParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValidationReport:
    params: SystemParams
    times: np.ndarray
    regime: RegimeReport
    fidelity_regime: np.ndarray
    fidelity_full: np.ndarray
    fidelity_transform: np.ndarray
    propagator_deviation: np.ndarray
    propagator_unitarity: np.ndarray
    trajectory_regime: TrajectoryRecord
    trajectory_full: TrajectoryRecord


def validation_run(p: SystemParams, trunc: TruncationScheme, times: Sequence[float]) -> ValidationReport:
    """Track the closed-form state and propagator against evolution under the regime and full Hamiltonians.

    fidelity_regime: closed-form state vs T^dag exp(-i H_regime t) T psi0.
    fidelity_full: closed-form state vs exp(-i H t) psi0.
    fidelity_transform: exp(-i H t) psi0 vs T^dag exp(-i H_T t) T psi0.
    propagator_deviation: interior max |U_closed(t) - T^dag exp(-i H_regime t) T|.
    """
    times = np.asarray(times, dtype=float)
    psi0 = initial_state(trunc)
    t_op = model.build_t(p, trunc)
    h_regime = model.build_h_regime(p, trunc)

    def reference(t: float) -> PureState:
        return analytic_state(p, t, trunc)

    logger.info("Validation run eta=%s g=%s over %d samples", p.eta, p.g, times.size)
    regime = evolve_numeric(h_regime, psi0, times, trunc, frame=t_op, reference=reference)
    full = evolve_numeric(model.build_h_full(p, trunc), psi0, times, trunc, reference=reference)
    transformed = evolve_numeric(model.build_h_transformed(p, trunc), psi0, times, trunc, frame=t_op)

    fidelity_transform = np.array(
        [
            qcore.fidelity(a.amplitudes, b.amplitudes)
            for a, b in zip(full.states, transformed.states)
        ]
    )

    eigenvalues, eigenvectors = qcore.herm_eig(h_regime.matrix)
    t_matrix = t_op.matrix
    t_dag = qcore.dagger(t_matrix)
    deviations = []
    unitarity = []
    for t in times:
        closed = analytic_propagator(p, t, trunc)
        numeric = t_dag @ qcore.propagator_from_eig(eigenvalues, eigenvectors, t) @ t_matrix
        deviations.append(model.interior_residual(closed, Operator(numeric, closed.signature), trunc))
        unitarity.append(model.interior_unitarity_deviation(closed, trunc))

    return ValidationReport(
        params=p,
        times=times,
        regime=model.regime_report(p),
        fidelity_regime=regime.fidelity,
        fidelity_full=full.fidelity,
        fidelity_transform=fidelity_transform,
        propagator_deviation=np.array(deviations),
        propagator_unitarity=np.array(unitarity),
        trajectory_regime=regime,
        trajectory_full=full,
    )
