"""Scorers behind the service: a pretrained NLI model or a lexical stand-in.

Scores are always the probability mass on the entailment class, a value
in [0, 1].  The lexical overlap scorer exists so the service contract
can run hermetically (CI, cold environments); production deployments
pass a transformers checkpoint id or local path instead.
"""

from __future__ import annotations

import re
from typing import Protocol, Sequence

Pair = tuple[str, str]

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class Scorer(Protocol):
    name: str

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]: ...


class OverlapScorer:
    """Token-set Jaccard similarity; identical sentences score 1.0."""

    name = "lexical"

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]:
        out = []
        for premise, hypothesis in pairs:
            a = frozenset(_TOKEN_RE.findall(premise.lower()))
            b = frozenset(_TOKEN_RE.findall(hypothesis.lower()))
            union = a | b
            out.append(len(a & b) / len(union) if union else 1.0)
        return out


class TransformersNliScorer:
    """Sequence-classification NLI checkpoint, single-threaded inference.

    The entailment class index is read from the checkpoint's id2label
    map, so any MNLI/SNLI-style head works unmodified.
    """

    def __init__(self, model_id: str, max_length: int = 256):
        import torch
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        torch.set_num_threads(1)  # deterministic given fixed weights
        self._torch = torch
        self.name = model_id
        self.max_length = max_length
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForSequenceClassification.from_pretrained(model_id).eval()
        self.entail_index = self._find_entailment_index(self.model.config.id2label)

    @staticmethod
    def _find_entailment_index(id2label: dict) -> int:
        for index, label in id2label.items():
            if "entail" in str(label).lower():
                return int(index)
        raise ValueError(f"no entailment class in id2label: {id2label}")

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]:
        if not pairs:
            return []
        torch = self._torch
        premises = [p for p, _ in pairs]
        hypotheses = [h for _, h in pairs]
        encoded = self.tokenizer(
            premises,
            hypotheses,
            padding=True,
            truncation=True,
            max_length=self.max_length,
            return_tensors="pt",
        )
        with torch.no_grad():
            logits = self.model(**encoded).logits
        probabilities = torch.softmax(logits, dim=-1)[:, self.entail_index]
        return [float(v) for v in probabilities]


def load_scorer(spec: str) -> Scorer:
    """'lexical' for the hermetic baseline, anything else is a checkpoint."""
    if spec == "lexical":
        return OverlapScorer()
    return TransformersNliScorer(spec)
