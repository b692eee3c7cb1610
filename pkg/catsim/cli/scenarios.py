"""Scenario handlers: compute one parameter point and write its data files."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Sequence

import numpy as np

from catsim.config import settings
from catsim.config.scenario import ScenarioConfig
from catsim.dynamics.evolve import analytic_state
from catsim.dynamics.observables import motional_parity
from catsim.dynamics.protocol import (
    CatBranch,
    NormalizationMode,
    apply_pulse_v,
    cat_state,
    collapse_measure,
    outcome_probabilities,
)
from catsim.dynamics.validation import validation_run
from catsim.dynamics.wigner import wigner_grid
from catsim.engine import model, qcore
from catsim.engine.hilbert import QubitLevel
from catsim.engine.model import RegimeReport, SystemParams
from catsim.output.format import Value
from catsim.output.writer import write_csv

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = (
    "time",
    "norm",
    "fidelity_regime",
    "fidelity_full",
    "p_e",
    "p_g",
    "n_vib_mean",
    "n_cav_mean",
    "parity",
)
WIGNER_HEADER = ("alpha_re", "alpha_im", "w")

_BRANCH_OUTCOME = {CatBranch.PLUS: QubitLevel.EXCITED, CatBranch.MINUS: QubitLevel.GROUND}
_BRANCH_NAME = {CatBranch.PLUS: "plus", CatBranch.MINUS: "minus"}


@dataclass
class PointResult:
    paths: List[Path] = field(default_factory=list)
    summary: Dict[str, Value] = field(default_factory=dict)
    tolerance_ok: bool = True


def _regime_entries(report: RegimeReport) -> Dict[str, Value]:
    return {
        "regime.ratio_drive": report.ratio_drive,
        "regime.ratio_ld": report.ratio_ld,
        "regime.regime_ok": report.regime_ok,
        "regime.beyond_ld": report.beyond_ld,
    }


def _check_branches(cfg: ScenarioConfig, p: SystemParams) -> None:
    # Raises DegenerateCatError before any work when an odd cat is requested at eta = 0.
    for branch in cfg.branches:
        cat_state(p.beta, branch, cfg.trunc.n_vib, NormalizationMode.PROPER, cfg.trunc.guard)


def validate_transform(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str) -> PointResult:
    check = model.transform_check(p, cfg.trunc)
    spectrum = model.spectrum_check(p, cfg.trunc)
    rows = [
        ("h_norm", check.h_norm),
        ("residual_simplified", check.residual_simplified),
        ("residual_exact", check.residual_exact),
        ("relative_residual_simplified", check.relative_residual_simplified),
        ("relative_residual_exact", check.relative_residual_exact),
        ("t_unitarity", check.t_unitarity),
        ("d_unitarity", check.d_unitarity),
        ("spectrum_deviation", spectrum),
    ]
    path = write_csv(output_dir, f"{cfg.scenario}{suffix}", ("quantity", "value"), rows)

    result = PointResult(paths=[path], tolerance_ok=check.exact_ok and check.unitary_ok)
    result.summary.update(_regime_entries(model.regime_report(p)))
    result.summary.update(
        {
            "transform.relative_residual_simplified": check.relative_residual_simplified,
            "transform.relative_residual_exact": check.relative_residual_exact,
            "transform.simplified_ok": check.simplified_ok,
            "transform.exact_ok": check.exact_ok,
            "transform.unitary_ok": check.unitary_ok,
            "spectrum.deviation": spectrum,
        }
    )
    return result


def _evolve(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str, use_regime: bool) -> PointResult:
    times = cfg.time.times(p.nu)
    report = validation_run(p, cfg.trunc, times)
    trajectory = report.trajectory_regime if use_regime else report.trajectory_full

    rows = zip(
        report.times,
        trajectory.norm,
        report.fidelity_regime,
        report.fidelity_full,
        trajectory.p_e,
        trajectory.p_g,
        trajectory.n_vib_mean,
        trajectory.n_cav_mean,
        trajectory.parity,
    )
    path = write_csv(output_dir, f"{cfg.scenario}{suffix}", TRAJECTORY_HEADER, rows)

    completeness = float(np.max(np.abs(trajectory.p_e + trajectory.p_g - 1.0)))
    result = PointResult(paths=[path], tolerance_ok=completeness <= settings.NORMALIZED_TOL)
    result.summary.update(_regime_entries(report.regime))
    result.summary.update(
        {
            "trajectory.min_norm": float(np.min(trajectory.norm)),
            "trajectory.population_deviation": completeness,
            "fidelity.regime_min": float(np.min(report.fidelity_regime)),
            "fidelity.full_min": float(np.min(report.fidelity_full)),
            "fidelity.transform_min": float(np.min(report.fidelity_transform)),
            "propagator.deviation_t0": float(report.propagator_deviation[0]),
            "propagator.deviation_max": float(np.max(report.propagator_deviation)),
            "propagator.unitarity_max": float(np.max(report.propagator_unitarity)),
        }
    )
    return result


def evolve_regime(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str) -> PointResult:
    return _evolve(cfg, p, output_dir, suffix, use_regime=True)


def evolve_full(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str) -> PointResult:
    return _evolve(cfg, p, output_dir, suffix, use_regime=False)


def cat_protocol(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str) -> PointResult:
    _check_branches(cfg, p)
    trunc = cfg.trunc
    names = [_BRANCH_NAME[branch] for branch in cfg.branches]
    header = ["time", "p_e", "p_g"] + [f"fidelity_{name}" for name in names] + [f"parity_{name}" for name in names]

    rows = []
    completeness = 0.0
    leakage = 0.0
    for t in cfg.time.times(p.nu):
        pulsed = apply_pulse_v(analytic_state(p, t, trunc))
        leakage = max(leakage, pulsed.norm_deficit)
        completeness = max(completeness, abs(sum(outcome_probabilities(pulsed).values()) - 1.0))
        collapses = {level: collapse_measure(pulsed, level) for level in QubitLevel}
        row: List[float] = [
            t,
            collapses[QubitLevel.EXCITED].probability,
            collapses[QubitLevel.GROUND].probability,
        ]
        beta_t = np.exp(-1j * p.nu * t) * p.beta
        fidelities: List[float] = []
        parities: List[float] = []
        for branch in cfg.branches:
            collapsed = collapses[_BRANCH_OUTCOME[branch]]
            if collapsed.empty:
                fidelities.append(math.nan)
                parities.append(math.nan)
                continue
            target = cat_state(beta_t, branch, trunc.n_vib, NormalizationMode.PROPER, trunc.guard)
            fidelities.append(qcore.fidelity(collapsed.motional, target.amplitudes))
            parities.append(motional_parity(collapsed.motional))
        rows.append(row + fidelities + parities)

    path = write_csv(output_dir, f"{cfg.scenario}{suffix}", header, rows)
    result = PointResult(paths=[path], tolerance_ok=completeness <= settings.NORMALIZED_TOL)
    result.summary.update(_regime_entries(model.regime_report(p)))
    result.summary["collapse.completeness_deviation"] = completeness
    result.summary["truncation.coherent_leakage"] = leakage
    return result


def wigner(cfg: ScenarioConfig, p: SystemParams, output_dir: Path, suffix: str) -> PointResult:
    _check_branches(cfg, p)
    trunc = cfg.trunc
    t = cfg.time.t_max / p.nu
    pulsed = apply_pulse_v(analytic_state(p, t, trunc))

    result = PointResult()
    result.summary.update(_regime_entries(model.regime_report(p)))
    for branch in cfg.branches:
        collapsed = collapse_measure(pulsed, _BRANCH_OUTCOME[branch])
        name = _BRANCH_NAME[branch]
        if collapsed.empty:
            logger.warning("Skipping Wigner grid for %s branch: zero collapse probability", name)
            continue
        field_data = wigner_grid(collapsed.motional, cfg.wigner, trunc.guard)
        rows = [
            (re, im, field_data.w[i, j])
            for i, re in enumerate(field_data.alpha_re)
            for j, im in enumerate(field_data.alpha_im)
        ]
        result.paths.append(write_csv(output_dir, f"wigner_{name}{suffix}", WIGNER_HEADER, rows))
        result.summary[f"wigner.{name}.integral"] = field_data.total(cfg.wigner.spacing)
        result.summary[f"wigner.{name}.parity"] = motional_parity(collapsed.motional)
    return result


Handler = Callable[[ScenarioConfig, SystemParams, Path, str], PointResult]

HANDLERS: Dict[str, Handler] = {
    "validate-transform": validate_transform,
    "evolve-regime": evolve_regime,
    "evolve-full": evolve_full,
    "cat-protocol": cat_protocol,
    "wigner": wigner,
}


def handler_for(scenario: str) -> Handler:
    if scenario not in HANDLERS:
        raise ValueError(f"Unsupported scenario: {scenario}")
    return HANDLERS[scenario]


def describe_point(assignments: Sequence[tuple]) -> str:
    return ", ".join(f"{name}={value}" for name, value in assignments) or "base parameters"
