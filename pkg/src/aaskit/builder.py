"""End-to-end answer-set construction.

Per label: collect candidates from every enabled source, merge them with
provenance, score the union once through the entailment backend, filter
at the threshold, then cut each view (union and per-source) down to the
top k.  Per-source sets are restrictions of the one scored union, so
scores stay consistent across per-source comparisons.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .conceptnet import API_VERSION, DEFAULT_MIN_WEIGHT, ConceptNetClient, conceptnet_candidates
from .core import (
    SOURCE_TAGS,
    AnswerSet,
    Label,
    QAItem,
    ScoredCandidate,
    groundtruth_member,
)
from .dataset import unique_labels
from .entailment import (
    DEFAULT_THRESHOLD,
    ScoringBackend,
    filter_candidates,
    harvest_premises,
    semantic_score,
)
from .errors import FormatError, MissingResource
from .vectors import DEFAULT_KNN, VectorTable, knn_candidates
from .wordnet import DEFAULT_HYPERNYM_DEPTH, WordnetIndex, wordnet_candidates

UNION_VIEW = "union"


@dataclass(frozen=True)
class BuildConfig:
    """Knobs for one build run; defaults reproduce the shipped settings."""

    k: int = 6
    threshold: float = DEFAULT_THRESHOLD
    knn_n: int = DEFAULT_KNN
    sources: tuple[str, ...] = SOURCE_TAGS
    hypernym_depth: int = DEFAULT_HYPERNYM_DEPTH
    min_weight: float = DEFAULT_MIN_WEIGHT
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 2 <= self.k <= 10:
            raise FormatError(f"k must be in [2, 10] for sweep compatibility, got {self.k}")
        if not 0.0 <= self.threshold <= 1.0:
            raise FormatError(f"threshold {self.threshold} outside [0, 1]")
        if self.knn_n < 1:
            raise FormatError(f"knn_n must be >= 1, got {self.knn_n}")
        unknown = set(self.sources) - set(SOURCE_TAGS)
        if unknown:
            raise FormatError(f"unknown sources {sorted(unknown)}")
        if not self.sources:
            raise FormatError("at least one source must be enabled")


@dataclass
class SourcePool:
    """Loaded candidate sources; only enabled ones need to be present."""

    wordnet: WordnetIndex | None = None
    bert_vectors: VectorTable | None = None
    counterfit_vectors: VectorTable | None = None
    conceptnet: ConceptNetClient | None = None

    def candidates(self, tag: str, label: Label, config: BuildConfig) -> list[str]:
        if tag == "wordnet":
            if self.wordnet is None:
                raise MissingResource("source 'wordnet' is enabled but no database was loaded")
            return wordnet_candidates(self.wordnet, label, config.hypernym_depth)
        if tag == "conceptnet":
            if self.conceptnet is None:
                raise MissingResource("source 'conceptnet' is enabled but no client was configured")
            edges = self.conceptnet.fetch_edges(label)
            return conceptnet_candidates(edges, config.min_weight)
        if tag == "bert-vec":
            if self.bert_vectors is None:
                raise MissingResource("source 'bert-vec' is enabled but no vector table was loaded")
            return knn_candidates(self.bert_vectors, label, config.knn_n)
        if tag == "counterfit-vec":
            if self.counterfit_vectors is None:
                raise MissingResource(
                    "source 'counterfit-vec' is enabled but no vector table was loaded"
                )
            return knn_candidates(self.counterfit_vectors, label, config.knn_n)
        raise FormatError(f"unknown source tag {tag!r}")


def build_candidates(
    label: Label, pool: SourcePool, config: BuildConfig
) -> dict[str, list[str]]:
    """Candidate phrases per enabled source, label excluded everywhere."""
    out: dict[str, list[str]] = {}
    for tag in SOURCE_TAGS:
        if tag in config.sources:
            out[tag] = [p for p in pool.candidates(tag, label, config) if p != label.normalized]
    return out


def union_candidates(per_source: dict[str, list[str]]) -> list[tuple[str, frozenset[str]]]:
    """Deduplicated union in canonical source order, with provenance sets."""
    provenance: dict[str, set[str]] = {}
    order: list[str] = []
    for tag in SOURCE_TAGS:
        for phrase in per_source.get(tag, []):
            if phrase not in provenance:
                provenance[phrase] = set()
                order.append(phrase)
            provenance[phrase].add(tag)
    return [(phrase, frozenset(provenance[phrase])) for phrase in order]


def _view_set(
    label: Label,
    kept: list[tuple[str, float, frozenset[str]]],
    k: int,
    restrict_to: str | None,
) -> AnswerSet:
    members = [groundtruth_member(label)]
    for phrase, score, sources in kept:
        if restrict_to is None:
            members.append(ScoredCandidate(phrase=phrase, score=score, sources=sources))
        elif restrict_to in sources:
            members.append(
                ScoredCandidate(phrase=phrase, score=score, sources=frozenset({restrict_to}))
            )
    full = AnswerSet.build(label, members)
    return full.truncated(k)


def build_label_views(
    label: Label,
    pool: SourcePool,
    dataset: Sequence[QAItem],
    config: BuildConfig,
    backend: ScoringBackend,
) -> dict[str, AnswerSet]:
    """Score one label's union once and cut every view from it."""
    per_source = build_candidates(label, pool, config)
    union = union_candidates(per_source)
    premises = harvest_premises(dataset, label)
    kept: list[tuple[str, float, frozenset[str]]] = []
    scored = [
        (phrase, sources, semantic_score(backend, premises, phrase))
        for phrase, sources in union
    ]
    for phrase, sources, sem in scored:
        if filter_candidates([sem], config.threshold):
            # 6-decimal quantization matches the artifact serialization,
            # so rebuilt artifacts are byte-stable.
            kept.append((phrase, round(sem.mean_score, 6), sources))
    views = {UNION_VIEW: _view_set(label, kept, config.k, None)}
    for tag in config.sources:
        views[tag] = _view_set(label, kept, config.k, tag)
    return views


def build_aas(
    label: Label,
    pool: SourcePool,
    dataset: Sequence[QAItem],
    config: BuildConfig,
    backend: ScoringBackend,
    restrict_to: str | None = None,
) -> AnswerSet:
    """One label's answer set; restrict_to selects a per-source variant."""
    views = build_label_views(label, pool, dataset, config, backend)
    return views[UNION_VIEW if restrict_to is None else restrict_to]


def pool_provenance(pool: SourcePool, config: BuildConfig) -> dict:
    """Self-describing artifact metadata for the loaded sources."""
    out: dict = {}
    if "wordnet" in config.sources and pool.wordnet is not None:
        out["wordnet_version"] = pool.wordnet.version
    if "conceptnet" in config.sources and pool.conceptnet is not None:
        out["conceptnet_api"] = API_VERSION
        out["conceptnet_relations"] = ",".join(sorted(pool.conceptnet.relations))
    for tag, table in (
        ("bert-vec", pool.bert_vectors),
        ("counterfit-vec", pool.counterfit_vectors),
    ):
        if tag in config.sources and table is not None:
            out[f"{tag}-table"] = f"{table.origin or 'unnamed'} (dim {table.dim})"
    return out


def artifact_metadata(config: BuildConfig, view: str, backend_name: str) -> dict:
    return {
        "tool": f"aaskit {__version__}",
        "view": view,
        "k": config.k,
        "threshold": config.threshold,
        "knn_n": config.knn_n,
        "sources": list(config.sources),
        "hypernym_depth": config.hypernym_depth,
        "min_weight": config.min_weight,
        "backend": backend_name,
        "k_counts_ground_truth": True,
        "normalization": "lowercase, collapsed whitespace, terminal .,!? stripped",
        **config.metadata,
    }


class _Checkpoint:
    """Per-label journal so vocabulary builds survive backend outages."""

    def __init__(self, path: str | Path, fingerprint: str):
        self.path = Path(path)
        self.fingerprint = fingerprint
        self._lock = threading.Lock()
        self._handle = None

    def load(self) -> dict[str, dict[str, AnswerSet]]:
        done: dict[str, dict[str, AnswerSet]] = {}
        if not self.path.is_file():
            return done
        with open(self.path, encoding="utf-8") as f:
            header = f.readline()
            if not header.strip():
                return done
            meta = json.loads(header)
            if meta.get("fingerprint") != self.fingerprint:
                raise FormatError(
                    f"checkpoint {self.path} was written with a different configuration; "
                    "delete it to rebuild from scratch"
                )
            for line in f:
                if not line.strip():
                    continue
                obj = json.loads(line)
                views = {
                    view: _answer_set_from_record(obj["label"], record)
                    for view, record in obj["views"].items()
                }
                done[obj["label"]] = views
        return done

    def append(self, label: str, views: dict[str, AnswerSet]) -> None:
        with self._lock:
            if self._handle is None:
                exists = self.path.is_file() and self.path.stat().st_size > 0
                self._handle = open(self.path, "a", encoding="utf-8")
                if not exists:
                    self._handle.write(json.dumps({"fingerprint": self.fingerprint}) + "\n")
            record = {
                "label": label,
                "views": {
                    view: [
                        {"phrase": m.phrase, "score": m.score, "sources": sorted(m.sources)}
                        for m in s.members
                    ]
                    for view, s in views.items()
                },
            }
            self._handle.write(json.dumps(record, ensure_ascii=False) + "\n")
            self._handle.flush()

    def close(self, success: bool) -> None:
        with self._lock:
            if self._handle is not None:
                self._handle.close()
                self._handle = None
        if success and self.path.is_file():
            self.path.unlink()


def _answer_set_from_record(label: str, members: list[dict]) -> AnswerSet:
    lab = Label(raw=label, normalized=label)
    return AnswerSet(
        label=lab,
        members=tuple(
            ScoredCandidate(
                phrase=m["phrase"], score=float(m["score"]), sources=frozenset(m["sources"])
            )
            for m in members
        ),
    )


def config_fingerprint(config: BuildConfig, backend_name: str) -> str:
    return json.dumps(
        {
            "k": config.k,
            "threshold": config.threshold,
            "knn_n": config.knn_n,
            "sources": sorted(config.sources),
            "hypernym_depth": config.hypernym_depth,
            "min_weight": config.min_weight,
            "backend": backend_name,
        },
        sort_keys=True,
    )


def build_vocabulary_aas(
    dataset: Sequence[QAItem],
    pool: SourcePool,
    config: BuildConfig,
    backend: ScoringBackend,
    jobs: int = 1,
    checkpoint_path: str | Path | None = None,
    backend_name: str = "custom",
    progress: Callable[[str], None] | None = None,
) -> dict[str, list[AnswerSet]]:
    """One answer set per unique ground truth, for every view.

    Work is parallel over labels but the merge is deterministic (ascending
    label order), so worker count never changes the output.  With a
    checkpoint path, completed labels are journaled and a rerun resumes
    after a backend outage.
    """
    labels = unique_labels(dataset)
    checkpoint = (
        _Checkpoint(checkpoint_path, config_fingerprint(config, backend_name))
        if checkpoint_path is not None
        else None
    )
    done = checkpoint.load() if checkpoint is not None else {}
    pending = [lab for lab in labels if lab.normalized not in done]

    def run_one(label: Label) -> tuple[str, dict[str, AnswerSet]]:
        views = build_label_views(label, pool, dataset, config, backend)
        if checkpoint is not None:
            checkpoint.append(label.normalized, views)
        if progress is not None:
            progress(label.normalized)
        return label.normalized, views

    success = False
    try:
        if jobs <= 1:
            for label in pending:
                name, views = run_one(label)
                done[name] = views
        else:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                for name, views in executor.map(run_one, pending):
                    done[name] = views
        success = True
    finally:
        if checkpoint is not None:
            checkpoint.close(success=success)

    view_names = [UNION_VIEW, *config.sources]
    return {
        view: [done[name][view] for name in sorted(done)] for view in view_names
    }
