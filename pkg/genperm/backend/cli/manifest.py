# genperm/backend/cli/manifest.py
"""
Output rendering and run manifests.

Every number leaves the tool through `fmt_number`, so reruns with the same
inputs and seed produce identical bytes. A file written with --out gets a
`<file>.manifest.json` sidecar recording how to rerun it.
"""
import csv
import io
import json
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import click
import numpy as np
from pydantic import BaseModel, Field

from genperm.backend.config import NUMBER_FORMAT, TOOL_VERSION


class RunManifest(BaseModel):
    subcommand: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    flags: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    tool_version: str = TOOL_VERSION
    started_at: str = ""
    wall_time_s: float = 0.0


class RunClock:
    """Collects what a manifest needs while a subcommand runs."""

    def __init__(self, subcommand: str, inputs: Dict[str, Any], flags: Dict[str, Any], seed: Optional[int] = None):
        self.subcommand = subcommand
        self.inputs = {k: str(v) for k, v in inputs.items() if v is not None}
        self.flags = {k: _plain(v) for k, v in flags.items()}
        self.seed = seed
        self.started_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        self._t0 = time.perf_counter()

    def manifest(self) -> RunManifest:
        return RunManifest(
            subcommand=self.subcommand,
            inputs=self.inputs,
            flags=self.flags,
            seed=self.seed,
            started_at=self.started_at,
            wall_time_s=round(time.perf_counter() - self._t0, 3),
        )


def fmt_number(x: float) -> str:
    return format(float(x), NUMBER_FORMAT)


def _plain(value: Any) -> Any:
    """Turn numpy scalars, tuples and paths into JSON-ready values with 12-digit floats."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(fmt_number(value))
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, Path):
        return str(value)
    return value


def render_json(payload: Any) -> str:
    return json.dumps(_plain(payload), indent=2) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if x is None else fmt_number(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def emit(text: str, out: Optional[Path], clock: RunClock, extra_outputs: Sequence[Path] = ()) -> None:
    """
    Write `text` to `out` (plus manifest sidecars) or to stdout.

    Args:
        text: rendered output
        out: destination file, None for stdout
        clock: the running subcommand's manifest data
        extra_outputs: other files the subcommand already wrote that also need a manifest
    """
    targets: List[Path] = list(extra_outputs)
    if out is None:
        click.echo(text, nl=False)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        targets.append(out)
    if targets:
        body = render_json(clock.manifest())
        for target in targets:
            manifest_path(target).write_text(body, encoding="utf-8")
