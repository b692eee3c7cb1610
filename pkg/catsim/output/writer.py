"""Write scenario data files to the output directory."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from catsim.output.format import Value, build_csv_text, build_summary_text

logger = logging.getLogger(__name__)

SUMMARY_FILENAME = "summary.txt"


def _sanitize_filename(name: str) -> str:
    safe = re.sub(r"[^A-Za-z0-9._=+-]+", "_", name).strip("_")
    return safe or "untitled"


def prepare_output_dir(output_dir: str) -> Path:
    path = Path(output_dir).expanduser().resolve()
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(
    output_dir: Path,
    stem: str,
    header: Sequence[str],
    rows: Iterable[Sequence[Value]],
) -> Path:
    # Overwrites in place: reruns of one config must produce identical files.
    path = output_dir / f"{_sanitize_filename(stem)}.csv"
    path.write_text(build_csv_text(header, rows), encoding="utf-8", newline="\n")
    logger.info("Wrote %s", path)
    return path


def write_summary(output_dir: Path, entries: Mapping[str, Value]) -> Path:
    path = output_dir / SUMMARY_FILENAME
    path.write_text(build_summary_text(entries), encoding="utf-8", newline="\n")
    logger.info("Wrote %s", path)
    return path
