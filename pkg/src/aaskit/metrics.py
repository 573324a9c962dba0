"""Prediction scoring, K-sweeps, and human-agreement IoU.

A prediction earns the semantic score of the matching answer-set member
(1.0 for the ground truth itself) and 0 when it is not in the set, so
the aggregate always dominates exact match.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .core import AnswerSet, PredictionRecord, QAItem
from .errors import EvalError, FormatError

DEFAULT_K_RANGE = tuple(range(2, 11))


def score_prediction(aas: AnswerSet, prediction: PredictionRecord) -> float:
    """Member score of the normalized prediction, else 0."""
    member = aas.lookup(prediction.predicted)
    return member.score if member is not None else 0.0


@dataclass(frozen=True)
class EvalReport:
    n_questions: int
    exact_match_pct: float
    aas_accuracy_pct: float
    # Auxiliary binary reading of the metric: membership without the
    # semantic weighting.
    aas_membership_pct: float
    per_question: tuple[tuple[str, float], ...]
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "n_questions": self.n_questions,
            "exact_match_pct": round(self.exact_match_pct, 2),
            "aas_accuracy_pct": round(self.aas_accuracy_pct, 2),
            "aas_membership_pct": round(self.aas_membership_pct, 2),
            "config": self.config,
            "per_question": [
                {"question_id": qid, "score": round(score, 2)}
                for qid, score in self.per_question
            ],
        }
        return json.dumps(payload, indent=1, sort_keys=True)


def _resolve(
    dataset: Mapping[str, QAItem],
    answer_sets: Mapping[str, AnswerSet],
    predictions: Sequence[PredictionRecord],
) -> list[tuple[PredictionRecord, QAItem, AnswerSet]]:
    if not predictions:
        raise EvalError("no predictions to evaluate")
    counts = Counter(p.question_id for p in predictions)
    duplicates = sorted(qid for qid, n in counts.items() if n > 1)
    if duplicates:
        raise EvalError(f"duplicate prediction question ids: {duplicates}")
    missing_ids = sorted({p.question_id for p in predictions if p.question_id not in dataset})
    if missing_ids:
        raise EvalError(f"prediction question ids not in dataset: {missing_ids}")
    missing_labels = sorted(
        {
            dataset[p.question_id].ground_truth.normalized
            for p in predictions
            if dataset[p.question_id].ground_truth.normalized not in answer_sets
        }
    )
    if missing_labels:
        raise EvalError(f"ground truths without an answer set: {missing_labels}")
    return [
        (p, dataset[p.question_id], answer_sets[dataset[p.question_id].ground_truth.normalized])
        for p in predictions
    ]


def evaluate(
    answer_sets: Mapping[str, AnswerSet],
    dataset: Mapping[str, QAItem],
    predictions: Sequence[PredictionRecord],
    config: dict | None = None,
) -> EvalReport:
    """Exact-match and semantic accuracy over a prediction file."""
    rows = _resolve(dataset, answer_sets, predictions)
    per_question = []
    exact = 0
    member = 0
    total = 0.0
    for prediction, item, aas in rows:
        hit = aas.lookup(prediction.predicted)
        score = hit.score if hit is not None else 0.0
        per_question.append((prediction.question_id, score))
        total += score
        if hit is not None:
            member += 1
            if hit.phrase == item.ground_truth.normalized:
                exact += 1
    n = len(rows)
    return EvalReport(
        n_questions=n,
        exact_match_pct=100.0 * exact / n,
        aas_accuracy_pct=100.0 * total / n,
        aas_membership_pct=100.0 * member / n,
        per_question=tuple(per_question),
        config=config or {},
    )


def k_sweep(
    answer_sets: Mapping[str, AnswerSet],
    dataset: Mapping[str, QAItem],
    predictions: Sequence[PredictionRecord],
    k_range: Sequence[int] = DEFAULT_K_RANGE,
    artifact_k: int | None = None,
) -> list[tuple[int, float]]:
    """Semantic accuracy when every set is truncated to its top k.

    The artifact must have been built with k >= max(k_range); pass the
    builder's k from the artifact metadata, else the deepest stored set
    is used as a bound.
    """
    if not k_range:
        raise EvalError("empty k range")
    built_k = artifact_k
    if built_k is None:
        built_k = max((len(s.members) for s in answer_sets.values()), default=0)
    if built_k < max(k_range):
        raise EvalError(
            f"artifact was built with k={built_k}, too small for a sweep up to {max(k_range)}"
        )
    out = []
    for k in sorted(k_range):
        truncated = {name: s.truncated(k) for name, s in answer_sets.items()}
        report = evaluate(truncated, dataset, predictions)
        out.append((k, report.aas_accuracy_pct))
    return out


def write_sweep_csv(rows: Sequence[tuple[int, float]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("k,aas_accuracy_pct\n")
        for k, pct in rows:
            f.write(f"{k},{pct:.2f}\n")


# -- human agreement --


def load_human_annotations(path: str | Path) -> dict[str, dict[str, list[bool]]]:
    """JSON lines of {label, phrase, votes:[bool, bool, bool]} per candidate."""
    votes: dict[str, dict[str, list[bool]]] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                label, phrase, ballot = obj["label"], obj["phrase"], obj["votes"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise FormatError(f"{path}:{lineno}: bad annotation line: {exc}") from exc
            if len(ballot) != 3 or not all(isinstance(v, bool) for v in ballot):
                raise FormatError(
                    f"{path}:{lineno}: expected exactly 3 boolean votes for "
                    f"({label!r}, {phrase!r})"
                )
            votes.setdefault(label, {})[phrase] = list(ballot)
    return votes


def majority_set(phrase_votes: Mapping[str, Sequence[bool]]) -> set[str]:
    """Phrases approved by at least 2 of the 3 annotators."""
    return {phrase for phrase, ballot in phrase_votes.items() if sum(ballot) >= 2}


def iou(a: set[str], b: set[str]) -> float:
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


@dataclass(frozen=True)
class IouReport:
    mean_pct: float
    per_label: tuple[tuple[str, float], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "mean_iou_pct": round(self.mean_pct, 2),
                "per_label": [
                    {"label": label, "iou": round(value, 4)} for label, value in self.per_label
                ],
            },
            indent=1,
            sort_keys=True,
        )


def iou_agreement(
    answer_sets: Mapping[str, AnswerSet],
    annotations: Mapping[str, Mapping[str, Sequence[bool]]],
) -> IouReport:
    """Mean IoU between automatic and human-approved alternative sets.

    The label itself is excluded from both sides: annotators judged the
    alternatives, and counting the trivially shared label would inflate
    agreement.
    """
    if not annotations:
        raise EvalError("no human annotations to compare against")
    missing = sorted(set(annotations) - set(answer_sets))
    if missing:
        raise EvalError(f"annotated labels without an answer set: {missing}")
    per_label = []
    for label in sorted(annotations):
        auto = set(answer_sets[label].alternatives())
        human = majority_set(annotations[label]) - {label}
        per_label.append((label, iou(auto, human)))
    mean = sum(v for _, v in per_label) / len(per_label)
    return IouReport(mean_pct=100.0 * mean, per_label=tuple(per_label))
