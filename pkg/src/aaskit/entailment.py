"""Premise harvesting, substitution hypotheses, and semantic scoring.

A candidate's semantic score is the mean entailment score over up to 50
premise sentences, where each hypothesis is the premise with the label
replaced by the candidate.  Scoring goes through a pluggable backend;
three ship here: an HTTP client for the scoring service, a precomputed
score table for replay, and a lexical overlap baseline for hermetic
tests.
"""

from __future__ import annotations

import hashlib
import re
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol, Sequence

import httpx

from .core import Label, QAItem
from .errors import CacheMiss, ContractViolation, FormatError, ParseError, ResourceUnavailable

MAX_PREMISES = 50
DEFAULT_THRESHOLD = 0.5
HTTP_BATCH_LIMIT = 256
FALLBACK_PREMISE = "there is a {label} in the picture."

Pair = tuple[str, str]


def _word_re(label: str) -> re.Pattern[str]:
    return re.compile(
        rf"(?<![0-9A-Za-z_]){re.escape(label)}(?![0-9A-Za-z_])", re.IGNORECASE
    )


def contains_whole_word(text: str, label: Label) -> bool:
    return _word_re(label.normalized).search(text) is not None


@dataclass(frozen=True)
class PremiseSet:
    """Up to 50 sentences containing the label as a whole word."""

    label: Label
    premises: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.premises) > MAX_PREMISES:
            raise ContractViolation(f"{len(self.premises)} premises exceed {MAX_PREMISES}")
        for p in self.premises:
            if not contains_whole_word(p, self.label):
                raise ContractViolation(
                    f"premise {p!r} does not contain {self.label.normalized!r} as a whole word"
                )

    def __len__(self) -> int:
        return len(self.premises)


def harvest_premises(dataset: Sequence[QAItem], label: Label) -> PremiseSet:
    """First 50 question texts (ascending question_id) containing the label.

    Falls back to a single template premise when the corpus has no match,
    so every vocabulary label gets a defined semantic score.
    """
    hits = []
    for item in sorted(dataset, key=lambda it: it.question_id):
        if contains_whole_word(item.question_text, label):
            hits.append(item.question_text)
            if len(hits) == MAX_PREMISES:
                break
    if not hits:
        hits = [FALLBACK_PREMISE.format(label=label.normalized)]
    return PremiseSet(label=label, premises=tuple(hits))


def make_hypothesis(premise: str, label: Label, candidate: str) -> str:
    """Replace every whole-word occurrence of the label with the candidate."""
    pattern = _word_re(label.normalized)
    replaced, n = pattern.subn(lambda _: candidate, premise)
    if n == 0:
        raise ContractViolation(
            f"premise {premise!r} does not contain {label.normalized!r} as a whole word"
        )
    return replaced


class ScoringBackend(Protocol):
    """Order-preserving batch scorer; scores are entailment probabilities."""

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]: ...


@dataclass(frozen=True)
class SemanticScore:
    candidate: str
    mean_score: float
    n_premises: int


def _checked(scores: list[float], n: int) -> list[float]:
    if len(scores) != n:
        raise ContractViolation(f"backend returned {len(scores)} scores for {n} pairs")
    for s in scores:
        if not 0.0 <= s <= 1.0:
            raise ContractViolation(f"backend score {s} outside [0, 1]")
    return scores


def score_pairs(
    backend: ScoringBackend, pairs: Sequence[Pair], batch_size: int = HTTP_BATCH_LIMIT
) -> list[float]:
    """Score pairs in batches; batching never changes the result."""
    out: list[float] = []
    for start in range(0, len(pairs), batch_size):
        chunk = pairs[start : start + batch_size]
        out.extend(_checked(list(backend.score_batch(chunk)), len(chunk)))
    return out


def semantic_score(
    backend: ScoringBackend,
    premises: PremiseSet,
    candidate: str,
    retries: int = 3,
    sleep_fn: Callable[[float], None] = time.sleep,
) -> SemanticScore:
    """Mean entailment score of the candidate over all premises.

    Backend failures are retried up to `retries` times before the last
    ResourceUnavailable propagates.
    """
    if not premises.premises:
        raise ContractViolation("premise set is empty")
    pairs = [
        (p, make_hypothesis(p, premises.label, candidate)) for p in premises.premises
    ]
    delay = 0.5
    for attempt in range(retries + 1):
        try:
            scores = score_pairs(backend, pairs)
            break
        except ResourceUnavailable:
            if attempt == retries:
                raise
            sleep_fn(delay)
            delay *= 2
    return SemanticScore(
        candidate=candidate,
        mean_score=sum(scores) / len(scores),
        n_premises=len(scores),
    )


def filter_candidates(
    scored: Sequence[SemanticScore], threshold: float = DEFAULT_THRESHOLD
) -> list[SemanticScore]:
    """Keep scores >= threshold (the boundary itself is kept), order preserved."""
    if not 0.0 <= threshold <= 1.0:
        raise ContractViolation(f"threshold {threshold} outside [0, 1]")
    return [s for s in scored if s.mean_score >= threshold]


# -- backends --

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _token_set(sentence: str) -> frozenset[str]:
    return frozenset(_TOKEN_RE.findall(sentence.lower()))


class LexicalBackend:
    """Token-set Jaccard similarity; 1.0 on identical sentences.

    Deterministic and dependency-free, for hermetic tests and offline
    builds.
    """

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]:
        out = []
        for premise, hypothesis in pairs:
            a, b = _token_set(premise), _token_set(hypothesis)
            union = a | b
            out.append(len(a & b) / len(union) if union else 1.0)
        return out


def pair_hash(sentence: str) -> str:
    return hashlib.sha256(sentence.encode("utf-8")).hexdigest()


class TableBackend:
    """Replay backend over a TSV of premise_hash, hypothesis_hash, score."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._scores: dict[tuple[str, str], float] = {}
        with open(self.path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ParseError("expected 3 tab-separated fields", str(path), lineno)
                try:
                    score = float(parts[2])
                except ValueError as exc:
                    raise ParseError(f"bad score: {exc}", str(path), lineno) from exc
                if not 0.0 <= score <= 1.0:
                    raise ParseError(f"score {score} outside [0, 1]", str(path), lineno)
                self._scores[(parts[0], parts[1])] = score

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]:
        out = []
        for premise, hypothesis in pairs:
            key = (pair_hash(premise), pair_hash(hypothesis))
            if key not in self._scores:
                raise CacheMiss(f"score table has no entry for pair {key[0][:12]}/{key[1][:12]}")
            out.append(self._scores[key])
        return out


def dump_score_table(
    pairs: Sequence[Pair], scores: Sequence[float], path: str | Path
) -> None:
    """Write a replay table for the given scored pairs."""
    if len(pairs) != len(scores):
        raise FormatError(f"{len(pairs)} pairs but {len(scores)} scores")
    with open(path, "w", encoding="utf-8") as f:
        for (premise, hypothesis), score in zip(pairs, scores):
            f.write(f"{pair_hash(premise)}\t{pair_hash(hypothesis)}\t{score}\n")


class HttpBackend:
    """Client for the entailment scoring service.

    Contract: POST {base_url}/v1/score with {"pairs": [{"premise",
    "hypothesis"}, ...]} (at most 256 pairs per request) returns
    {"scores": [...]} in request order.
    """

    def __init__(
        self,
        base_url: str,
        timeout: float = 60.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self._client = httpx.Client(
            base_url=self.base_url, timeout=timeout, transport=transport
        )

    def score_batch(self, pairs: Sequence[Pair]) -> list[float]:
        scores: list[float] = []
        for start in range(0, len(pairs), HTTP_BATCH_LIMIT):
            chunk = pairs[start : start + HTTP_BATCH_LIMIT]
            body = {"pairs": [{"premise": p, "hypothesis": h} for p, h in chunk]}
            try:
                response = self._client.post("/v1/score", json=body)
            except httpx.HTTPError as exc:
                raise ResourceUnavailable(f"scoring service unreachable: {exc}") from exc
            if response.status_code != 200:
                raise ResourceUnavailable(
                    f"scoring service returned HTTP {response.status_code}"
                )
            payload = response.json()
            got = payload.get("scores")
            if not isinstance(got, list):
                raise ContractViolation("scoring service response has no scores list")
            scores.extend(float(s) for s in got)
        return _checked(scores, len(pairs))

    def health(self) -> dict:
        try:
            response = self._client.get("/v1/health")
        except httpx.HTTPError as exc:
            raise ResourceUnavailable(f"scoring service unreachable: {exc}") from exc
        if response.status_code != 200:
            raise ResourceUnavailable(f"scoring service health check: HTTP {response.status_code}")
        return response.json()

    def close(self) -> None:
        self._client.close()
