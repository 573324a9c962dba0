"""Run manifests: every subcommand records what it read and wrote."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable

from . import __version__


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(primary_output: str | Path) -> Path:
    p = Path(primary_output)
    return p.with_name(p.name + ".manifest.json")


def write_manifest(
    primary_output: str | Path,
    subcommand: str,
    config: dict,
    inputs: Iterable[str | Path],
    outputs: Iterable[str | Path],
    wall_clock_sec: float,
) -> Path:
    payload = {
        "subcommand": subcommand,
        "tool_version": __version__,
        "config": config,
        "inputs": {str(p): file_digest(p) for p in inputs},
        "outputs": {str(p): file_digest(p) for p in outputs},
        "wall_clock_sec": round(wall_clock_sec, 3),
    }
    path = manifest_path(primary_output)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=1, sort_keys=True)
        f.write("\n")
    return path
