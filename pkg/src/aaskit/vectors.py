"""Word-vector tables and cosine nearest-neighbor candidates.

One code path serves both embedding legs: the counter-fitting vectors
and a static table of BERT-derived vectors extracted offline.  Files are
word2vec text format (token then floats, one entry per line); an
optional "count dim" header line is detected and skipped.  Underscores
in tokens denote spaces in multi-word phrases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Label, normalize
from .errors import ContractViolation, MissingResource, ParseError, UnusableAnswer

log = logging.getLogger(__name__)

VECTOR_SOURCE_TAGS = ("bert-vec", "counterfit-vec")

# Similarities are quantized before ranking so that ties resolve
# lexicographically no matter which BLAS computed the dot products.
_SIM_DECIMALS = 12

DEFAULT_KNN = 10


@dataclass(frozen=True, eq=False)
class VectorTable:
    """Immutable phrase -> unit-normalizable vector table."""

    dim: int
    entries: dict[str, np.ndarray]
    source_tag: str
    origin: str = ""
    _phrases: tuple[str, ...] = field(init=False, repr=False, compare=False)
    _matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.source_tag not in VECTOR_SOURCE_TAGS:
            raise ContractViolation(
                f"source_tag {self.source_tag!r} not in {VECTOR_SOURCE_TAGS}"
            )
        phrases = tuple(sorted(self.entries))
        if phrases:
            matrix = np.stack([self.entries[p] for p in phrases])
            norms = np.linalg.norm(matrix, axis=1, keepdims=True)
            matrix = matrix / norms
        else:
            matrix = np.zeros((0, self.dim))
        object.__setattr__(self, "_phrases", phrases)
        object.__setattr__(self, "_matrix", matrix)

    def __len__(self) -> int:
        return len(self.entries)


def load_vectors(path: str | Path, source_tag: str) -> VectorTable:
    """Load a text vector file, normalizing tokens through core.normalize."""
    path = Path(path)
    if not path.is_file():
        raise MissingResource(f"vector file {path} not found")
    entries: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # "count dim" header
                except ValueError:
                    pass
            token, values = parts[0], parts[1:]
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise ParseError(f"non-numeric vector component: {exc}", str(path), lineno) from exc
            if dim is None:
                if vec.size == 0:
                    raise ParseError("entry with no vector components", str(path), lineno)
                dim = int(vec.size)
            elif vec.size != dim:
                raise ParseError(
                    f"dimension mismatch: expected {dim}, found {vec.size}", str(path), lineno
                )
            if not np.all(np.isfinite(vec)):
                raise ParseError("non-finite vector component", str(path), lineno)
            if not np.any(vec):
                raise ParseError(f"zero vector for token {token!r}", str(path), lineno)
            try:
                phrase = normalize(token.replace("_", " "))
            except UnusableAnswer:
                log.warning("%s:%d: token %r normalizes to nothing; skipped", path, lineno, token)
                continue
            if phrase in entries:
                log.warning("%s:%d: duplicate token %r; last occurrence wins", path, lineno, phrase)
            entries[phrase] = vec
    if dim is None:
        raise ParseError("no vector entries found", str(path))
    return VectorTable(dim=dim, entries=entries, source_tag=source_tag, origin=path.name)


def phrase_vector(table: VectorTable, phrase: str) -> np.ndarray | None:
    """Exact entry, else the mean of in-vocabulary token vectors, else None."""
    try:
        key = normalize(phrase)
    except UnusableAnswer:
        return None
    hit = table.entries.get(key)
    if hit is not None:
        return hit
    token_vecs = [table.entries[t] for t in key.split() if t in table.entries]
    if not token_vecs:
        return None
    return np.mean(token_vecs, axis=0)


def knn_candidates(table: VectorTable, label: Label, n: int = DEFAULT_KNN) -> list[str]:
    """Top-n phrases by cosine similarity to the label's vector.

    The label itself is excluded; ties break lexicographically; an absent
    label vector yields an empty list.
    """
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    query = phrase_vector(table, label.normalized)
    if query is None or not len(table):
        return []
    qnorm = np.linalg.norm(query)
    if qnorm == 0:
        return []
    sims = table._matrix @ (query / qnorm)
    sims = np.round(sims, _SIM_DECIMALS)
    ranked = sorted(
        (
            (-sims[i], phrase)
            for i, phrase in enumerate(table._phrases)
            if phrase != label.normalized
        ),
    )
    return [phrase for _, phrase in ranked[:n]]
