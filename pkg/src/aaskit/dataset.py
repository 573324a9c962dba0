"""Dataset, prediction, and vocabulary file ingestion.

The canonical dataset shape is the GQA question file: a JSON object
mapping question_id to ``{"question", "answer", "imageId"}``.  A VQA-v2
adapter accepts the official annotations shape and reduces the ten
annotator answers to the single most common one.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from pathlib import Path

from .core import Label, PredictionRecord, QAItem, normalize
from .errors import FormatError, ParseError

log = logging.getLogger(__name__)


def _load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", str(path), exc.lineno) from exc


def load_gqa_questions(path: str | Path) -> list[QAItem]:
    """Load a GQA-shaped question file, ordered by ascending question_id."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected an object mapping question_id to entries")
    items = []
    for qid in sorted(data):
        entry = data[qid]
        try:
            question = entry["question"]
            answer = entry["answer"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"{path}: entry {qid!r} is missing {exc}") from exc
        items.append(
            QAItem(
                question_id=str(qid),
                question_text=question,
                ground_truth=Label.from_raw(answer),
                image_id=str(entry.get("imageId", "")),
            )
        )
    return items


def load_vqa_annotations(
    annotations_path: str | Path, questions_path: str | Path | None = None
) -> list[QAItem]:
    """Adapter for the VQA-v2 annotations shape.

    The ground truth is ``multiple_choice_answer`` when present, else the
    most common entry of ``answers`` (ties broken lexicographically).
    Question texts come from the optional questions file; VQA annotations
    do not carry them.
    """
    data = _load_json(annotations_path)
    annotations = data.get("annotations") if isinstance(data, dict) else None
    if annotations is None:
        raise FormatError(f"{annotations_path}: no 'annotations' list found")

    texts: dict[str, str] = {}
    if questions_path is not None:
        qdata = _load_json(questions_path)
        for q in qdata.get("questions", []):
            texts[str(q["question_id"])] = q.get("question", "")

    items = []
    for ann in annotations:
        try:
            qid = str(ann["question_id"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"{annotations_path}: annotation missing {exc}") from exc
        answer = ann.get("multiple_choice_answer")
        if answer is None:
            counts = Counter(a["answer"] for a in ann.get("answers", []))
            if not counts:
                raise FormatError(f"{annotations_path}: annotation {qid} has no answers")
            answer = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        items.append(
            QAItem(
                question_id=qid,
                question_text=texts.get(qid, ""),
                ground_truth=Label.from_raw(answer),
                image_id=str(ann.get("image_id", "")),
            )
        )
    items.sort(key=lambda it: it.question_id)
    return items


def check_unique_ids(items: list[QAItem]) -> dict[str, QAItem]:
    """Index items by question_id, rejecting duplicates."""
    by_id: dict[str, QAItem] = {}
    dropped = []
    for it in items:
        if it.question_id in by_id:
            dropped.append(it.question_id)
        by_id[it.question_id] = it
    if dropped:
        raise FormatError(f"duplicate question ids: {sorted(set(dropped))}")
    return by_id


def write_gqa_questions(items: list[QAItem], path: str | Path) -> None:
    """Write items back out in the canonical GQA shape."""
    data = {
        it.question_id: {
            "question": it.question_text,
            "answer": it.ground_truth.normalized,
            "imageId": it.image_id,
        }
        for it in items
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


def load_predictions(path: str | Path) -> list[PredictionRecord]:
    """Load a predictions file: JSON lines of {question_id, answer}."""
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", str(path), lineno) from exc
            try:
                records.append(
                    PredictionRecord(question_id=str(obj["question_id"]), predicted=obj["answer"])
                )
            except (KeyError, TypeError) as exc:
                raise ParseError(f"prediction missing {exc}", str(path), lineno) from exc
    return records


def load_vocabulary(path: str | Path) -> dict[str, int]:
    """Answer vocabulary: one answer per line, index = line number (0-based).

    Entries are normalized; when two lines normalize identically the first
    index wins and a warning is logged.
    """
    vocab: dict[str, int] = {}
    with open(path, encoding="utf-8") as f:
        for idx, line in enumerate(f):
            answer = line.rstrip("\n")
            if not answer.strip():
                continue
            key = normalize(answer)
            if key in vocab:
                log.warning("vocabulary line %d duplicates %r; keeping index %d", idx, key, vocab[key])
                continue
            vocab[key] = idx
    return vocab


def unique_labels(items: list[QAItem]) -> list[Label]:
    """Unique ground-truth labels in ascending normalized order."""
    seen: dict[str, Label] = {}
    for it in items:
        seen.setdefault(it.ground_truth.normalized, it.ground_truth)
    return [seen[k] for k in sorted(seen)]
