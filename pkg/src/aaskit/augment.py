"""Soft training targets from answer sets.

For each question, the target distribution spreads mass over the
answer-set members that exist in the trainer's answer vocabulary, either
uniformly or proportional to semantic scores.  Downstream trainers
consume the exported file; no training happens here.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .core import AnswerSet, QAItem
from .errors import EvalError, FormatError

log = logging.getLogger(__name__)

MODES = ("uniform", "score")


@dataclass(frozen=True)
class SoftTarget:
    question_id: str
    targets: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        indices = [i for i, _ in self.targets]
        if len(set(indices)) != len(indices):
            raise FormatError(f"question {self.question_id}: duplicate vocabulary indices")
        total = sum(w for _, w in self.targets)
        if abs(total - 1.0) > 1e-9:
            raise FormatError(f"question {self.question_id}: weights sum to {total}")


def soft_target_for(
    item: QAItem, aas: AnswerSet, vocab: Mapping[str, int], mode: str
) -> SoftTarget | None:
    """Target distribution for one question; None when the GT has no index."""
    if mode not in MODES:
        raise FormatError(f"mode must be one of {MODES}, got {mode!r}")
    gt = item.ground_truth.normalized
    if gt not in vocab:
        return None
    members = [m for m in aas.members if m.phrase in vocab]
    if mode == "uniform":
        weight = 1.0 / len(members)
        weights = [weight] * len(members)
    else:
        total = sum(m.score for m in members)
        weights = [m.score / total for m in members]
    return SoftTarget(
        question_id=item.question_id,
        targets=tuple((vocab[m.phrase], w) for m, w in zip(members, weights)),
    )


def export_soft_targets(
    dataset: Sequence[QAItem],
    answer_sets: Mapping[str, AnswerSet],
    vocab: Mapping[str, int],
    mode: str,
    path: str | Path,
) -> int:
    """Write one JSON line per question; returns the skipped-question tally."""
    missing = sorted(
        {
            it.ground_truth.normalized
            for it in dataset
            if it.ground_truth.normalized not in answer_sets
        }
    )
    if missing:
        raise EvalError(f"ground truths without an answer set: {missing}")
    skipped = 0
    with open(path, "w", encoding="utf-8") as f:
        for item in sorted(dataset, key=lambda it: it.question_id):
            target = soft_target_for(
                item, answer_sets[item.ground_truth.normalized], vocab, mode
            )
            if target is None:
                skipped += 1
                continue
            record = {
                "question_id": target.question_id,
                "targets": [[idx, weight] for idx, weight in target.targets],
            }
            f.write(json.dumps(record) + "\n")
    if skipped:
        log.warning("skipped %d questions whose ground truth is not in the vocabulary", skipped)
    return skipped
