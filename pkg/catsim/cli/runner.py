"""Run one scenario config across its sweep points."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple

from catsim.cli.scenarios import PointResult, describe_point, handler_for
from catsim.config import settings
from catsim.config.scenario import ScenarioConfig
from catsim.engine.model import SystemParams
from catsim.errors import CatSimError, ConfigError, NumericalError
from catsim.output.format import Value, format_assignments, format_number
from catsim.output.writer import prepare_output_dir, write_summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


@dataclass
class ScenarioOutcome:
    exit_code: int
    paths: List[Path] = field(default_factory=list)
    message: str = ""


def resolve_workers() -> int:
    raw = os.environ.get(settings.WORKERS_ENV_VAR, "1").strip() or "1"
    try:
        workers = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{settings.WORKERS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if workers < 1:
        raise ConfigError(f"{settings.WORKERS_ENV_VAR} must be >= 1, got {workers}")
    return workers


def _point_prefix(assignments: Tuple[Tuple[str, float], ...]) -> str:
    if not assignments:
        return ""
    return ".".join(f"{name}={format_number(value)}" for name, value in assignments) + "."


def _run_points(cfg: ScenarioConfig, output_dir: Path) -> List[Tuple[tuple, PointResult]]:
    handler = handler_for(cfg.scenario)
    points = list(cfg.sweep_points())

    def run_point(point: Tuple[tuple, SystemParams]) -> Tuple[tuple, PointResult]:
        assignments, params = point
        logger.info("Running %s at %s", cfg.scenario, describe_point(assignments))
        return assignments, handler(cfg, params, output_dir, format_assignments(assignments))

    workers = min(resolve_workers(), len(points))
    if workers <= 1:
        return [run_point(point) for point in points]
    logger.info("Running %d sweep points on %d workers", len(points), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map keeps input order, so summaries do not depend on scheduling.
        return list(pool.map(run_point, points))


def run_scenario(cfg: ScenarioConfig) -> ScenarioOutcome:
    try:
        output_dir = prepare_output_dir(cfg.output_dir)
        results = _run_points(cfg, output_dir)
    except NumericalError as exc:
        logger.error("Numerical failure: %s", exc)
        return ScenarioOutcome(EXIT_NUMERICAL, message=str(exc))
    except (CatSimError, ValueError) as exc:
        logger.error("Invalid input: %s", exc)
        return ScenarioOutcome(EXIT_INVALID, message=str(exc))

    summary: Dict[str, Value] = {"scenario": cfg.scenario, "points": len(results)}
    paths: List[Path] = []
    tolerance_ok = True
    for assignments, result in results:
        prefix = _point_prefix(assignments)
        for key, value in result.summary.items():
            summary[f"{prefix}{key}"] = value
        summary[f"{prefix}tolerance_ok"] = result.tolerance_ok
        tolerance_ok = tolerance_ok and result.tolerance_ok
        paths.extend(result.paths)

    exit_code = EXIT_OK if tolerance_ok else EXIT_NUMERICAL
    summary["tolerance_ok"] = tolerance_ok
    summary["exit_status"] = exit_code
    paths.append(write_summary(output_dir, summary))

    if not tolerance_ok:
        logger.error("Scenario %s finished with tolerance violations", cfg.scenario)
        return ScenarioOutcome(exit_code, paths, "tolerance violated")
    logger.info("Scenario %s finished: %d files written", cfg.scenario, len(paths))
    return ScenarioOutcome(exit_code, paths)
