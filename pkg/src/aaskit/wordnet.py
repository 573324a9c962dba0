"""WordNet 3.x flat-file parser and synonym/hypernym candidate source.

Reads the standard ``index.*`` / ``data.*`` databases.  The noun pair is
mandatory; any other part of speech present in the directory is indexed
too, but candidate generation only consults the noun and adjective
databases (answer vocabularies are objects and attributes, and verb
senses of words like "batter" inject noise).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .core import Label, normalize
from .errors import MissingResource, ParseError, UnusableAnswer

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
_HYPERNYM_SYMBOLS = {"@", "@i"}
_ADJ_MARKER = re.compile(r"\((a|p|ip)\)$")

DEFAULT_HYPERNYM_DEPTH = 2


@dataclass(frozen=True)
class SynsetEntry:
    """One synset: lemmas (spaces, not underscores) plus hypernym pointers."""

    offset: str
    pos: str
    lemmas: tuple[str, ...]
    hypernym_offsets: tuple[tuple[str, str], ...]  # (pos, offset) pairs


@dataclass(frozen=True)
class WordnetIndex:
    """Immutable lemma and synset index over the parsed databases."""

    synsets: dict[tuple[str, str], SynsetEntry]
    lemma_index: dict[tuple[str, str], tuple[str, ...]]  # (pos, lemma) -> offsets
    version: str = "3.x"

    def synsets_for(self, lemma: str, pos: str) -> list[SynsetEntry]:
        offsets = self.lemma_index.get((pos, lemma), ())
        return [self.synsets[(pos, off)] for off in offsets if (pos, off) in self.synsets]

    def hypernyms(self, entry: SynsetEntry) -> list[SynsetEntry]:
        return [
            self.synsets[key]
            for key in entry.hypernym_offsets
            if key in self.synsets
        ]


def _data_pos_category(ss_type: str) -> str:
    # Adjective satellites live in data.adj alongside head adjectives.
    return "a" if ss_type in ("a", "s") else ss_type


def _parse_data_file(path: Path, synsets) -> None:
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip() or line.startswith("  "):
                continue
            head = line.split(" | ")[0]
            fields = head.split()
            try:
                offset = fields[0]
                ss_type = fields[2]
                w_cnt = int(fields[3], 16)
                words = []
                for i in range(w_cnt):
                    lemma = _ADJ_MARKER.sub("", fields[4 + 2 * i])
                    words.append(lemma.replace("_", " "))
                p_base = 4 + 2 * w_cnt
                p_cnt = int(fields[p_base])
                hypernyms = []
                for j in range(p_cnt):
                    sym = fields[p_base + 1 + 4 * j]
                    tgt_off = fields[p_base + 2 + 4 * j]
                    tgt_pos = fields[p_base + 3 + 4 * j]
                    if sym in _HYPERNYM_SYMBOLS:
                        hypernyms.append((_data_pos_category(tgt_pos), tgt_off))
            except (IndexError, ValueError) as exc:
                raise ParseError(f"malformed synset line: {exc}", str(path), lineno) from exc
            if not words:
                raise ParseError("synset with zero words", str(path), lineno)
            synsets[(_data_pos_category(ss_type), offset)] = SynsetEntry(
                offset=offset,
                pos=ss_type,
                lemmas=tuple(words),
                hypernym_offsets=tuple(hypernyms),
            )


def _parse_index_file(path: Path, pos: str, lemma_index) -> None:
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip() or line.startswith("  "):
                continue
            fields = line.split()
            try:
                lemma = fields[0]
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                offsets = fields[4 + p_cnt + 2 :]
                if len(offsets) != synset_cnt:
                    raise ValueError(
                        f"expected {synset_cnt} offsets, found {len(offsets)}"
                    )
            except (IndexError, ValueError) as exc:
                raise ParseError(f"malformed index line: {exc}", str(path), lineno) from exc
            lemma_index[(pos, lemma)] = tuple(offsets)


def load_wordnet(dir_path: str | Path) -> WordnetIndex:
    """Parse every index/data pair under dir_path; the noun pair is required."""
    base = Path(dir_path)
    if not (base / "index.noun").is_file() or not (base / "data.noun").is_file():
        raise MissingResource(f"{base}: WordNet noun database (index.noun/data.noun) not found")
    synsets: dict[tuple[str, str], SynsetEntry] = {}
    lemma_index: dict[tuple[str, str], tuple[str, ...]] = {}
    for pos, suffix in POS_FILES.items():
        index_path = base / f"index.{suffix}"
        data_path = base / f"data.{suffix}"
        if not index_path.is_file() and not data_path.is_file():
            continue
        if not index_path.is_file() or not data_path.is_file():
            raise MissingResource(f"{base}: index.{suffix}/data.{suffix} must both be present")
        _parse_data_file(data_path, synsets)
        _parse_index_file(index_path, pos, lemma_index)
    return WordnetIndex(synsets=synsets, lemma_index=lemma_index)


def wordnet_candidates(
    index: WordnetIndex, label: Label, hypernym_depth: int = DEFAULT_HYPERNYM_DEPTH
) -> list[str]:
    """Co-lemmas and hypernym lemmas for every sense of the label.

    All senses contribute (the entailment filter downstream is the
    disambiguator).  Hypernym traversal is capped at hypernym_depth.
    Output is deduplicated, excludes the label, and follows synset file
    order then lemma order.
    """
    key = label.normalized.replace(" ", "_")
    entries = index.synsets_for(key, "n") + index.synsets_for(key, "a")
    out: list[str] = []
    seen = {label.normalized}

    def emit(lemmas: tuple[str, ...]) -> None:
        for lemma in lemmas:
            try:
                phrase = normalize(lemma)
            except UnusableAnswer:
                continue
            if phrase not in seen:
                seen.add(phrase)
                out.append(phrase)

    for entry in entries:
        emit(entry.lemmas)
        frontier = [entry]
        for _ in range(hypernym_depth):
            parents = []
            for e in frontier:
                parents.extend(index.hypernyms(e))
            for parent in parents:
                emit(parent.lemmas)
            frontier = parents
    return out
