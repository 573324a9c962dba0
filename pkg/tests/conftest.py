from __future__ import annotations

from pathlib import Path

import pytest

from aaskit.core import AnswerSet, Label, ScoredCandidate, groundtruth_member

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def make_set(label: str, *alternatives: tuple[str, float]) -> AnswerSet:
    """Answer set from (phrase, score) pairs plus the mandatory label member."""
    lab = Label.from_raw(label)
    members = [groundtruth_member(lab)]
    for phrase, score in alternatives:
        members.append(
            ScoredCandidate(phrase=phrase, score=score, sources=frozenset({"wordnet"}))
        )
    return AnswerSet.build(lab, members)
