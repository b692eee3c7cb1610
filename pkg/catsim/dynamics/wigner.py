"""Wigner function of a motional state on a phase-space grid."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from catsim.config import settings
from catsim.engine import hilbert
from catsim.errors import AmplitudeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WignerGrid:
    half_width: float = settings.DEFAULT_WIGNER_HALF_WIDTH
    points: int = settings.DEFAULT_WIGNER_POINTS

    def __post_init__(self) -> None:
        if self.half_width <= 0:
            raise ValueError(f"Grid half-width must be > 0, got {self.half_width}")
        if self.points < 2:
            raise ValueError(f"Grid needs at least 2 points per axis, got {self.points}")

    def axis(self) -> np.ndarray:
        # Built from centred integers so the axis is exactly symmetric about 0.
        steps = np.arange(self.points) - (self.points - 1) / 2
        return steps * (2 * self.half_width / (self.points - 1))

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / (self.points - 1)


@dataclass(frozen=True)
class WignerField:
    alpha_re: np.ndarray
    alpha_im: np.ndarray
    w: np.ndarray

    def total(self, spacing: float) -> float:
        return float(self.w.sum() * spacing**2)


def wigner_value(motional: np.ndarray, alpha: complex, guard: int = settings.DEFAULT_GUARD) -> float:
    """W(alpha) = (2/pi) <D(alpha) P D(alpha)^dag>."""
    motional = np.asarray(motional, dtype=complex)
    shifted = hilbert.displacement(motional.size, -alpha, guard) @ motional
    signs = np.where(np.arange(motional.size) % 2 == 0, 1.0, -1.0)
    return float(2 / math.pi * np.dot(signs, np.abs(shifted) ** 2))


def wigner_grid(
    motional: np.ndarray,
    grid: WignerGrid,
    guard: int = settings.DEFAULT_GUARD,
) -> WignerField:
    motional = np.asarray(motional, dtype=complex)
    axis = grid.axis()
    corner = 2 * grid.half_width**2
    limit = (motional.size - guard) / 4
    if corner > limit:
        raise AmplitudeError(
            f"Grid corner |alpha|^2 = {corner:.6g} exceeds (dim - guard)/4 = {limit:.6g}"
        )

    logger.debug("Computing Wigner function on %dx%d grid", grid.points, grid.points)
    w = np.empty((grid.points, grid.points))
    for i, re in enumerate(axis):
        for j, im in enumerate(axis):
            w[i, j] = wigner_value(motional, complex(re, im), guard)
    return WignerField(alpha_re=axis.copy(), alpha_im=axis.copy(), w=w)
