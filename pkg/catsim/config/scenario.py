"""Scenario configuration files: flat `key = value` lines with dotted keys."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from catsim.config import settings
from catsim.dynamics.protocol import CatBranch
from catsim.dynamics.wigner import WignerGrid
from catsim.engine.hilbert import TruncationScheme
from catsim.engine.model import PARAM_FIELDS, SystemParams
from catsim.errors import ConfigError
from catsim.output.format import format_number

SCENARIOS = ("validate-transform", "evolve-regime", "evolve-full", "cat-protocol", "wigner")

_FLOAT_KEYS = {f"params.{name}" for name in PARAM_FIELDS} | {"time.t_max", "wigner.half_width"}
_INT_KEYS = {"trunc.n_vib", "trunc.n_cav", "trunc.guard", "time.n_steps", "wigner.points"}
_TEXT_KEYS = {"scenario", "output_dir", "cat.branches"}


@dataclass(frozen=True)
class TimeGrid:
    t_max: float = settings.DEFAULT_T_MAX
    n_steps: int = settings.DEFAULT_N_STEPS

    def __post_init__(self) -> None:
        if not math.isfinite(self.t_max) or self.t_max < 0:
            raise ValueError(f"time.t_max must be finite and >= 0, got {self.t_max}")
        if self.n_steps < 1:
            raise ValueError(f"time.n_steps must be >= 1, got {self.n_steps}")

    def times(self, nu: float) -> List[float]:
        """Sample times; t_max is given in units of 1/nu."""
        if self.n_steps == 1:
            return [self.t_max / nu]
        step = self.t_max / (self.n_steps - 1)
        return [i * step / nu for i in range(self.n_steps)]


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    params: SystemParams
    trunc: TruncationScheme
    time: TimeGrid = field(default_factory=TimeGrid)
    sweep: Tuple[Tuple[str, Tuple[float, ...]], ...] = ()
    output_dir: str = settings.OUTPUT_DIR
    wigner: WignerGrid = field(default_factory=WignerGrid)
    branches: Tuple[CatBranch, ...] = (CatBranch.PLUS, CatBranch.MINUS)

    def sweep_points(self) -> Iterator[Tuple[Tuple[Tuple[str, float], ...], SystemParams]]:
        """Yield (assignments, params) for every point of the Cartesian sweep."""
        if not self.sweep:
            yield (), self.params
            return
        names = [name for name, _ in self.sweep]
        for values in itertools.product(*(values for _, values in self.sweep)):
            assignments = tuple(zip(names, values))
            try:
                params = replace(self.params, **dict(assignments))
            except ValueError as exc:
                raise ConfigError(f"Invalid sweep point {assignments}: {exc}") from exc
            yield assignments, params


def _parse_lines(text: str, source: str) -> Dict[str, str]:
    entries: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{source}:{number}: empty key or value")
        if key in entries:
            raise ConfigError(f"{source}:{number}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _to_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: not a number: {value!r}") from exc


def _to_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: not an integer: {value!r}") from exc


def _parse_sweep(key: str, value: str) -> Tuple[str, Tuple[float, ...]]:
    name = key.split(".", 1)[1]
    if name not in PARAM_FIELDS:
        raise ConfigError(f"{key}: sweep field must be one of {', '.join(PARAM_FIELDS)}")
    values = tuple(_to_float(key, item.strip()) for item in value.split(",") if item.strip())
    if not values:
        raise ConfigError(f"{key}: sweep needs at least one value")
    labels = [format_number(item) for item in values]
    repeated = sorted({label for label in labels if labels.count(label) > 1})
    if repeated:
        raise ConfigError(f"{key}: duplicate sweep values {', '.join(repeated)}")
    return name, values


def default_guard(n_vib: int) -> int:
    """Guard band used when a config omits trunc.guard; narrowed so small spaces keep an interior."""
    return max(1, min(settings.DEFAULT_GUARD, (n_vib - 1) // 2))


def _parse_branches(value: str) -> Tuple[CatBranch, ...]:
    try:
        return tuple(CatBranch(item.strip()) for item in value.split(",") if item.strip())
    except ValueError as exc:
        raise ConfigError(f"cat.branches: expected '+' and/or '-', got {value!r}") from exc


def parse_config(text: str, source: str = "<config>") -> ScenarioConfig:
    entries = _parse_lines(text, source)

    scenario = entries.get("scenario")
    if scenario is None:
        raise ConfigError(f"{source}: missing required key 'scenario'")
    if scenario not in SCENARIOS:
        raise ConfigError(f"{source}: unknown scenario {scenario!r}; expected one of {', '.join(SCENARIOS)}")

    numbers: Dict[str, float] = {}
    sweep: List[Tuple[str, Tuple[float, ...]]] = []
    for key, value in entries.items():
        if key in _FLOAT_KEYS:
            numbers[key] = _to_float(key, value)
        elif key in _INT_KEYS:
            numbers[key] = _to_int(key, value)
        elif key.startswith("sweep."):
            sweep.append(_parse_sweep(key, value))
        elif key not in _TEXT_KEYS:
            raise ConfigError(f"{source}: unknown key {key!r}")

    def section(prefix: str) -> Dict[str, float]:
        return {key[len(prefix) :]: value for key, value in numbers.items() if key.startswith(prefix)}

    try:
        params = SystemParams(**section("params."))
        trunc_fields = section("trunc.")
        if "n_vib" not in trunc_fields or "n_cav" not in trunc_fields:
            raise ConfigError(f"{source}: trunc.n_vib and trunc.n_cav are required")
        trunc_fields.setdefault("guard", default_guard(int(trunc_fields["n_vib"])))
        trunc = TruncationScheme(**trunc_fields)
        time = TimeGrid(**section("time."))
        wigner = WignerGrid(**section("wigner."))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc

    config = ScenarioConfig(
        scenario=scenario,
        params=params,
        trunc=trunc,
        time=time,
        sweep=tuple(sweep),
        output_dir=entries.get("output_dir", settings.OUTPUT_DIR),
        wigner=wigner,
        branches=_parse_branches(entries.get("cat.branches", "+,-")),
    )
    # Validate every sweep point before any computation starts.
    for _ in config.sweep_points():
        pass
    return config


def load_config(path: str, output_dir: Optional[str] = None) -> ScenarioConfig:
    config_path = Path(path).expanduser().resolve()
    if not config_path.exists():
        raise ConfigError(f"Config not found at {config_path}")
    config = parse_config(config_path.read_text(encoding="utf-8"), str(config_path))
    if output_dir is not None:
        config = replace(config, output_dir=output_dir)
    return config
