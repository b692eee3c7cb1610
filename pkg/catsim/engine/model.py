"""Hamiltonians of the ion-cavity system and the diagonalizing transformation T."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from catsim.config import settings
from catsim.engine import hilbert, qcore
from catsim.engine.hilbert import Operator, TruncationScheme

logger = logging.getLogger(__name__)

PARAM_FIELDS = ("nu", "omega", "omega0", "g", "eta")


@dataclass(frozen=True)
class SystemParams:
    """Frequencies in units of nu (hbar = 1); eta is the Lamb-Dicke parameter."""

    nu: float = 1.0
    omega: float = 1.0
    omega0: float = 0.2
    g: float = 0.005
    eta: float = 0.5

    def __post_init__(self) -> None:
        for name in PARAM_FIELDS:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.nu <= 0:
            raise ValueError(f"nu must be > 0, got {self.nu}")
        for name in ("omega", "omega0", "g", "eta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def beta(self) -> complex:
        return 0.5j * self.eta


@dataclass(frozen=True)
class RegimeReport:
    ratio_drive: float
    ratio_ld: float
    regime_ok: bool
    beyond_ld: bool


@dataclass(frozen=True)
class TransformCheck:
    h_norm: float
    residual_simplified: float
    residual_exact: float
    t_unitarity: float
    d_unitarity: float

    @property
    def relative_residual_simplified(self) -> float:
        return self.residual_simplified / self.h_norm

    @property
    def relative_residual_exact(self) -> float:
        return self.residual_exact / self.h_norm

    @property
    def simplified_ok(self) -> bool:
        return self.relative_residual_simplified <= settings.TRANSFORM_REL_TOL

    @property
    def exact_ok(self) -> bool:
        return self.relative_residual_exact <= settings.TRANSFORM_REL_TOL

    @property
    def unitary_ok(self) -> bool:
        tolerance = settings.INTERIOR_UNITARY_TOL
        return self.t_unitarity <= tolerance and self.d_unitarity <= tolerance


def _free_terms(p: SystemParams, trunc: TruncationScheme) -> Operator:
    return p.nu * hilbert.local_operator(trunc, vib=hilbert.number(trunc.n_vib)) + p.omega * (
        hilbert.local_operator(trunc, cav=hilbert.number(trunc.n_cav))
    )


def _cavity_quadrature(trunc: TruncationScheme) -> np.ndarray:
    b = hilbert.annihilation(trunc.n_cav)
    return b + qcore.dagger(b)


def vib_displacement(p: SystemParams, trunc: TruncationScheme) -> np.ndarray:
    return hilbert.displacement(trunc.n_vib, p.beta, trunc.guard)


def build_h_full(p: SystemParams, trunc: TruncationScheme) -> Operator:
    coupling = hilbert.local_operator(
        trunc,
        vib=hilbert.cos_position(trunc.n_vib, p.eta),
        cav=_cavity_quadrature(trunc),
        qubit=hilbert.SIGMA_X,
    )
    return (
        _free_terms(p, trunc)
        + (p.omega0 / 2) * hilbert.embed(hilbert.SIGMA_Z, hilbert.Slot.QUBIT, trunc)
        + p.g * coupling
    )


def build_t(p: SystemParams, trunc: TruncationScheme) -> Operator:
    d = vib_displacement(p, trunc)
    d_dag = qcore.dagger(d)
    t = (
        hilbert.local_operator(trunc, vib=(d_dag + d) / 2)
        + hilbert.local_operator(trunc, vib=(d_dag - d) / 2, qubit=hilbert.SIGMA_Z)
        + hilbert.local_operator(trunc, vib=d, qubit=hilbert.SIGMA_PLUS)
        - hilbert.local_operator(trunc, vib=d_dag, qubit=hilbert.SIGMA_MINUS)
    )
    return t * (1 / math.sqrt(2))


def build_h_regime(p: SystemParams, trunc: TruncationScheme) -> Operator:
    a = hilbert.annihilation(trunc.n_vib)
    drive = -0.5j * p.eta * p.nu * (qcore.dagger(a) - a)
    shift = p.nu * p.eta**2 / 4
    return (
        _free_terms(p, trunc)
        + hilbert.local_operator(trunc, vib=drive, qubit=hilbert.SIGMA_X)
        - (p.omega0 / 2) * hilbert.embed(hilbert.SIGMA_X, hilbert.Slot.QUBIT, trunc)
        + shift * Operator.identity(trunc.signature)
    )


def _simplified_coupling(trunc: TruncationScheme) -> Operator:
    return hilbert.local_operator(trunc, cav=_cavity_quadrature(trunc), qubit=hilbert.SIGMA_Z)


def build_h_transformed(p: SystemParams, trunc: TruncationScheme) -> Operator:
    # The omega0/(eta nu) bracket is expanded, so eta = 0 needs no special case.
    return build_h_regime(p, trunc) + p.g * _simplified_coupling(trunc)


def exact_coupling(p: SystemParams, trunc: TruncationScheme) -> Operator:
    """T (g quadrature sigma_x cos) T^dag = g quadrature cos(eta x)[cos(eta x) sz + sin(eta x) sy]."""
    cos_sq = hilbert.position_function(trunc.n_vib, lambda x: np.cos(p.eta * x) ** 2)
    sin_cos = hilbert.position_function(trunc.n_vib, lambda x: np.sin(2 * p.eta * x) / 2)
    quadrature = _cavity_quadrature(trunc)
    return hilbert.local_operator(
        trunc, vib=cos_sq, cav=quadrature, qubit=hilbert.SIGMA_Z
    ) + hilbert.local_operator(trunc, vib=sin_cos, cav=quadrature, qubit=hilbert.SIGMA_Y)


def build_h_transformed_exact(p: SystemParams, trunc: TruncationScheme) -> Operator:
    return build_h_regime(p, trunc) + p.g * exact_coupling(p, trunc)


def regime_report(
    p: SystemParams,
    ratio_threshold: Optional[float] = None,
    ld_threshold: Optional[float] = None,
) -> RegimeReport:
    ratio_threshold = settings.REGIME_RATIO_THRESHOLD if ratio_threshold is None else ratio_threshold
    ld_threshold = settings.LAMB_DICKE_THRESHOLD if ld_threshold is None else ld_threshold

    ratio_drive = math.inf if p.g == 0 else p.eta * p.nu / p.g
    return RegimeReport(
        ratio_drive=ratio_drive,
        ratio_ld=p.eta,
        regime_ok=ratio_drive >= ratio_threshold,
        beyond_ld=p.eta >= ld_threshold,
    )


def interior_unitarity_deviation(u: Operator, trunc: TruncationScheme) -> float:
    return qcore.unitarity_error(u.matrix, hilbert.interior_indices(trunc))


def interior_residual(left: Operator, right: Operator, trunc: TruncationScheme) -> float:
    return qcore.max_abs(hilbert.restrict_interior((left - right).matrix, trunc))


def transform_check(p: SystemParams, trunc: TruncationScheme) -> TransformCheck:
    h = build_h_full(p, trunc)
    t = build_t(p, trunc)
    transformed = t @ h @ t.dag()

    d = vib_displacement(p, trunc)
    check = TransformCheck(
        h_norm=qcore.max_abs(h.matrix),
        residual_simplified=interior_residual(transformed, build_h_transformed(p, trunc), trunc),
        residual_exact=interior_residual(transformed, build_h_transformed_exact(p, trunc), trunc),
        t_unitarity=interior_unitarity_deviation(t, trunc),
        d_unitarity=qcore.unitarity_error(d, np.arange(trunc.vib_interior)),
    )
    if not check.simplified_ok:
        logger.warning(
            "T H T^dag departs from the eta-independent form by %.3e (relative) at eta=%s g=%s",
            check.relative_residual_simplified,
            p.eta,
            p.g,
        )
    return check


def spectrum_check(
    p: SystemParams,
    trunc: TruncationScheme,
    count: int = settings.SPECTRUM_COUNT,
) -> float:
    """Largest deviation between the lowest eigenvalues of H and of the exact transformed H."""
    original, _ = qcore.herm_eig(build_h_full(p, trunc).matrix)
    transformed, _ = qcore.herm_eig(build_h_transformed_exact(p, trunc).matrix)
    return float(np.max(np.abs(original[:count] - transformed[:count])))
