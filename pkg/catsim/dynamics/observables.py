"""Expectation values used to certify prepared states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from catsim.engine.hilbert import PureState, QubitLevel


@dataclass(frozen=True)
class Observables:
    p_e: float
    p_g: float
    n_vib_mean: float
    n_cav_mean: float
    parity: float


def _parity_signs(dim: int) -> np.ndarray:
    return np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)


def observables(psi: PureState) -> Observables:
    populations = np.abs(psi.as_tensor()) ** 2
    n_vib, n_cav, _ = psi.signature.dims

    vib_populations = populations.sum(axis=(1, 2))
    cav_populations = populations.sum(axis=(0, 2))
    return Observables(
        p_e=float(populations[..., QubitLevel.EXCITED.index].sum()),
        p_g=float(populations[..., QubitLevel.GROUND.index].sum()),
        n_vib_mean=float(np.dot(np.arange(n_vib), vib_populations)),
        n_cav_mean=float(np.dot(np.arange(n_cav), cav_populations)),
        parity=float(np.dot(_parity_signs(n_vib), vib_populations)),
    )


def motional_parity(motional: np.ndarray) -> float:
    populations = np.abs(np.asarray(motional)) ** 2
    return float(np.dot(_parity_signs(populations.size), populations))


def mean_number(motional: np.ndarray) -> float:
    populations = np.abs(np.asarray(motional)) ** 2
    return float(np.dot(np.arange(populations.size), populations))
