from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aaskit.core import (
    AnswerSet,
    Label,
    ScoredCandidate,
    groundtruth_member,
    normalize,
)
from aaskit.errors import IntegrityError, UnusableAnswer

from .conftest import make_set


class TestNormalize:
    def test_lowercase_and_trim(self):
        assert normalize("  Teddy Bear ") == "teddy bear"

    def test_identity_on_normal_input(self):
        assert normalize("batter") == "batter"

    def test_terminal_punctuation(self):
        assert normalize("women.") == "women"

    def test_interior_punctuation_survives(self):
        assert normalize("rock 'n' roll") == "rock 'n' roll"
        assert normalize("a, b") == "a, b"

    def test_punctuation_exposed_by_stripping(self):
        assert normalize("x. .") == "x"
        assert normalize("?!hello,!") == "hello"

    @pytest.mark.parametrize("bad", ["", "   ", "...", "?!", " , . "])
    def test_empty_after_normalization(self, bad):
        with pytest.raises(UnusableAnswer):
            normalize(bad)

    @given(st.text(max_size=40))
    def test_idempotent(self, s):
        try:
            once = normalize(s)
        except UnusableAnswer:
            return
        assert normalize(once) == once


class TestScoredCandidate:
    def test_score_bounds(self):
        with pytest.raises(IntegrityError):
            ScoredCandidate(phrase="x", score=1.2, sources=frozenset({"wordnet"}))
        with pytest.raises(IntegrityError):
            ScoredCandidate(phrase="x", score=-0.1, sources=frozenset({"wordnet"}))

    def test_sources_must_be_known_and_nonempty(self):
        with pytest.raises(IntegrityError):
            ScoredCandidate(phrase="x", score=0.5, sources=frozenset())
        with pytest.raises(IntegrityError):
            ScoredCandidate(phrase="x", score=0.5, sources=frozenset({"mystery"}))


class TestAnswerSet:
    def test_build_sorts_by_score_then_phrase(self):
        s = make_set("road", ("street", 0.9), ("avenue", 0.9), ("way", 0.95))
        assert [m.phrase for m in s.members] == ["road", "way", "avenue", "street"]

    def test_label_member_is_required(self):
        lab = Label.from_raw("road")
        with pytest.raises(IntegrityError, match="label is not a member"):
            AnswerSet.build(lab, [ScoredCandidate("street", 0.9, frozenset({"wordnet"}))])

    def test_label_member_score_must_be_one(self):
        lab = Label.from_raw("road")
        wrong = ScoredCandidate("road", 0.9, frozenset({"groundtruth"}))
        with pytest.raises(IntegrityError, match="expected 1.0"):
            AnswerSet.build(lab, [wrong])

    def test_duplicate_phrases_rejected(self):
        lab = Label.from_raw("road")
        members = [
            groundtruth_member(lab),
            ScoredCandidate("street", 0.9, frozenset({"wordnet"})),
            ScoredCandidate("street", 0.8, frozenset({"conceptnet"})),
        ]
        with pytest.raises(IntegrityError, match="duplicate"):
            AnswerSet.build(lab, members)

    def test_low_scores_rejected(self):
        with pytest.raises(IntegrityError, match="< 0.5"):
            make_set("road", ("street", 0.49))

    def test_unsorted_members_rejected(self):
        lab = Label.from_raw("road")
        members = (
            ScoredCandidate("street", 0.9, frozenset({"wordnet"})),
            groundtruth_member(lab),
        )
        with pytest.raises(IntegrityError, match="not sorted"):
            AnswerSet(label=lab, members=members)

    def test_lookup_normalizes(self):
        s = make_set("road", ("street", 0.9))
        assert s.lookup("  Street. ").score == 0.9
        assert s.lookup("road").score == 1.0
        assert s.lookup("zebra") is None
        assert s.lookup("...") is None

    @given(
        st.lists(
            st.tuples(
                st.text(alphabet="abcdef", min_size=1, max_size=6),
                st.floats(min_value=0.5, max_value=1.0),
            ),
            max_size=8,
        )
    )
    def test_lookup_consistent_with_membership(self, pairs):
        seen = {}
        for phrase, score in pairs:
            seen.setdefault(phrase, min(score, 0.999))
        seen.pop("label", None)
        s = make_set("label", *seen.items())
        for phrase in seen:
            assert s.lookup(phrase) is not None
        assert s.lookup("zzzz") is None

    def test_truncated_keeps_prefix(self):
        s = make_set("road", ("street", 0.9), ("way", 0.8), ("path", 0.7))
        t = s.truncated(2)
        assert [m.phrase for m in t.members] == ["road", "street"]

    def test_alternatives_exclude_label(self):
        s = make_set("road", ("street", 0.9))
        assert s.alternatives() == ["street"]

    def test_label_identity_is_normalized_form(self):
        assert Label.from_raw("Teddy Bear ") == Label.from_raw("teddy bear")
