"""Answer-set artifact files: JSON lines, one label per line.

Line 1 may be a metadata header ``{"meta": {...}}``; every other line is
``{"label": ..., "members": [{"phrase", "score", "sources"}, ...]}``.
Scores are serialized with exactly six decimal places, so writers must
hand in scores already quantized to six decimals if they need the
read(write(x)) == x round trip to be exact.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Iterable

from .core import AnswerSet, Label, ScoredCandidate
from .errors import IntegrityError, ParseError

FORMAT_NAME = "aas-jsonl/1"


def _member_json(m: ScoredCandidate) -> str:
    sources = ", ".join(json.dumps(s) for s in sorted(m.sources))
    return f'{{"phrase": {json.dumps(m.phrase)}, "score": {m.score:.6f}, "sources": [{sources}]}}'


def _record_json(s: AnswerSet) -> str:
    members = ", ".join(_member_json(m) for m in s.members)
    return f'{{"label": {json.dumps(s.label.normalized)}, "members": [{members}]}}'


def write_aas_file(
    sets: Iterable[AnswerSet], path: str | Path, meta: dict[str, Any] | None = None
) -> None:
    """Write sets in the given order, preceded by a metadata header."""
    header = {"meta": {"format": FORMAT_NAME, **(meta or {})}}
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as f:
        f.write(json.dumps(header, sort_keys=True) + "\n")
        for s in sets:
            f.write(_record_json(s) + "\n")
    os.replace(tmp, path)


def _parse_record(obj: dict[str, Any], path: str, lineno: int) -> AnswerSet:
    try:
        label_str = obj["label"]
        raw_members = obj["members"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"record is missing {exc}", str(path), lineno) from exc
    members = []
    for raw in raw_members:
        try:
            members.append(
                ScoredCandidate(
                    phrase=raw["phrase"],
                    score=float(raw["score"]),
                    sources=frozenset(raw["sources"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad member entry: {exc}", str(path), lineno) from exc
    # Membership order in the file is authoritative; AnswerSet rejects it
    # if it is not the canonical (score desc, phrase asc) order.
    return AnswerSet(label=Label(raw=label_str, normalized=label_str), members=tuple(members))


def read_aas_file(path: str | Path) -> tuple[list[AnswerSet], dict[str, Any]]:
    """Read an artifact, returning its sets and header metadata.

    Raises ParseError with the offending line number on malformed input
    and IntegrityError naming the label when a set breaks an invariant.
    """
    sets: list[AnswerSet] = []
    seen: set[str] = set()
    meta: dict[str, Any] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", str(path), lineno) from exc
            if not isinstance(obj, dict):
                raise ParseError("line is not a JSON object", str(path), lineno)
            if lineno == 1 and "meta" in obj and "label" not in obj:
                meta = obj["meta"]
                continue
            record = _parse_record(obj, str(path), lineno)
            name = record.label.normalized
            if name in seen:
                raise IntegrityError(name, "label appears on more than one line")
            seen.add(name)
            sets.append(record)
    return sets, meta


def index_by_label(sets: Iterable[AnswerSet]) -> dict[str, AnswerSet]:
    return {s.label.normalized: s for s in sets}
