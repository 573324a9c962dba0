"""Domain types and answer-string normalization.

Every module compares answers only through :func:`normalize`; the raw
strings are kept for diagnostics but never for equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IntegrityError, UnusableAnswer

SOURCE_TAGS = ("wordnet", "conceptnet", "bert-vec", "counterfit-vec")
GROUNDTRUTH_TAG = "groundtruth"
VALID_SOURCES = frozenset(SOURCE_TAGS) | {GROUNDTRUTH_TAG}

_TERMINAL_PUNCT = ".,!?"


def normalize(raw: str) -> str:
    """Lowercase, collapse whitespace, and strip terminal ``. , ! ?``.

    Idempotent: stripping is iterated to a fixpoint so that inputs like
    ``"x. ."`` cannot leave fresh terminal punctuation behind.

    Raises UnusableAnswer when nothing is left.
    """
    s = raw.lower()
    while True:
        t = " ".join(s.split()).strip(_TERMINAL_PUNCT)
        if t == s:
            break
        s = t
    if not s:
        raise UnusableAnswer(f"answer {raw!r} is empty after normalization")
    return s


@dataclass(frozen=True)
class Label:
    """A ground-truth answer, kept in raw and normalized form.

    Identity rests on the normalized form only; the raw string is kept
    for diagnostics.
    """

    raw: str = field(compare=False)
    normalized: str

    @classmethod
    def from_raw(cls, raw: str) -> "Label":
        return cls(raw=raw, normalized=normalize(raw))


@dataclass(frozen=True)
class ScoredCandidate:
    """An alternative phrase with its semantic score and provenance."""

    phrase: str
    score: float
    sources: frozenset[str]

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise IntegrityError(self.phrase, f"score {self.score} outside [0, 1]")
        if not self.sources:
            raise IntegrityError(self.phrase, "empty source set")
        unknown = set(self.sources) - VALID_SOURCES
        if unknown:
            raise IntegrityError(self.phrase, f"unknown sources {sorted(unknown)}")


def member_sort_key(member: ScoredCandidate) -> tuple[float, str]:
    """Score descending, then phrase ascending."""
    return (-member.score, member.phrase)


@dataclass(frozen=True)
class AnswerSet:
    """Ranked alternative answers for one label.

    Construction validates all invariants: descending score order with
    lexicographic tie-break, unique phrases, the label present at exactly
    1.0 with the groundtruth source, and every score at least 0.5.
    """

    label: Label
    members: tuple[ScoredCandidate, ...]
    _index: dict[str, ScoredCandidate] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        name = self.label.normalized
        index: dict[str, ScoredCandidate] = {}
        for m in self.members:
            if m.phrase in index:
                raise IntegrityError(name, f"duplicate phrase {m.phrase!r}")
            if m.score < 0.5:
                raise IntegrityError(name, f"member {m.phrase!r} scores {m.score} < 0.5")
            index[m.phrase] = m
        ordered = sorted(self.members, key=member_sort_key)
        if list(self.members) != ordered:
            raise IntegrityError(name, "members are not sorted by (score desc, phrase asc)")
        own = index.get(name)
        if own is None:
            raise IntegrityError(name, "label is not a member of its own set")
        if own.score != 1.0:
            raise IntegrityError(name, f"label member scores {own.score}, expected 1.0")
        if set(own.sources) != {GROUNDTRUTH_TAG}:
            raise IntegrityError(name, f"label member sources {sorted(own.sources)}")
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, label: Label, members: list[ScoredCandidate]) -> "AnswerSet":
        """Sort members into canonical order and validate."""
        return cls(label=label, members=tuple(sorted(members, key=member_sort_key)))

    def lookup(self, phrase: str) -> ScoredCandidate | None:
        """Member whose phrase equals normalize(phrase), if any."""
        try:
            key = normalize(phrase)
        except UnusableAnswer:
            return None
        return self._index.get(key)

    def truncated(self, k: int) -> "AnswerSet":
        """The top-k prefix of this set."""
        return AnswerSet(label=self.label, members=self.members[:k])

    def alternatives(self) -> list[str]:
        """Member phrases excluding the label itself."""
        return [m.phrase for m in self.members if m.phrase != self.label.normalized]


def groundtruth_member(label: Label) -> ScoredCandidate:
    """The mandatory score-1.0 entry for the label itself."""
    return ScoredCandidate(
        phrase=label.normalized, score=1.0, sources=frozenset({GROUNDTRUTH_TAG})
    )


@dataclass(frozen=True)
class QAItem:
    """One dataset question; the image is carried as an opaque id."""

    question_id: str
    question_text: str
    ground_truth: Label
    image_id: str = ""


@dataclass(frozen=True)
class PredictionRecord:
    """One model prediction, already normalized."""

    question_id: str
    predicted: str
