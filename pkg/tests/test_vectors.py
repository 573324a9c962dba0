from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from aaskit.core import Label
from aaskit.errors import ContractViolation, MissingResource, ParseError
from aaskit.vectors import knn_candidates, load_vectors, phrase_vector

from .conftest import FIXTURES


def _write(tmp_path, lines: list[str]):
    path = tmp_path / "vectors.txt"
    path.write_text("".join(f"{l}\n" for l in lines), encoding="utf-8")
    return path


def _brute_force_knn(entries: dict[str, list[float]], query: str, n: int) -> list[str]:
    """Exhaustive cosine scan with pure-python arithmetic."""
    q = entries[query]
    qn = math.sqrt(sum(x * x for x in q))
    ranked = []
    for phrase, vec in entries.items():
        if phrase == query:
            continue
        dot = sum(a * b for a, b in zip(q, vec))
        norm = math.sqrt(sum(x * x for x in vec))
        ranked.append((-round(dot / (qn * norm), 12), phrase))
    ranked.sort()
    return [p for _, p in ranked[:n]]


class TestLoad:
    def test_three_line_fixture(self, tmp_path):
        path = _write(tmp_path, ["a 1 0 0 0", "b 0 1 0 0", "c 0 0 1 0"])
        table = load_vectors(path, "bert-vec")
        assert table.dim == 4
        assert len(table) == 3

    def test_header_detected_and_skipped(self):
        table = load_vectors(FIXTURES / "vectors" / "bert_vectors.txt", "bert-vec")
        assert table.dim == 8
        assert "woman" in table.entries
        assert "teddy bear" in table.entries  # underscore translated

    def test_dimension_mismatch(self, tmp_path):
        path = _write(tmp_path, ["a 1 0 0 0", "b 0 1 0 0 1"])
        with pytest.raises(ParseError) as err:
            load_vectors(path, "bert-vec")
        assert err.value.line == 2

    def test_zero_vector_rejected(self, tmp_path):
        path = _write(tmp_path, ["a 1 0", "b 0 0"])
        with pytest.raises(ParseError) as err:
            load_vectors(path, "bert-vec")
        assert err.value.line == 2

    def test_non_numeric_rejected(self, tmp_path):
        path = _write(tmp_path, ["a 1 oops"])
        with pytest.raises(ParseError):
            load_vectors(path, "bert-vec")

    def test_duplicate_token_last_wins_with_warning(self, tmp_path, caplog):
        path = _write(tmp_path, ["dog 1 0", "Dog 0 1"])
        with caplog.at_level(logging.WARNING):
            table = load_vectors(path, "counterfit-vec")
        assert len(table) == 1
        assert np.allclose(table.entries["dog"], [0, 1])
        assert any("duplicate token" in r.message for r in caplog.records)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingResource):
            load_vectors(tmp_path / "nope.txt", "bert-vec")

    def test_bad_source_tag(self, tmp_path):
        path = _write(tmp_path, ["a 1 0"])
        with pytest.raises(ContractViolation):
            load_vectors(path, "glove")


class TestPhraseVector:
    @pytest.fixture()
    def table(self, tmp_path):
        path = _write(tmp_path, ["batter 1 0 0 0", "teddy 0 2 0 0", "bear 0 0 2 0"])
        return load_vectors(path, "bert-vec")

    def test_exact_entry(self, table):
        assert np.allclose(phrase_vector(table, "batter"), [1, 0, 0, 0])

    def test_token_mean_composition(self, table):
        assert np.allclose(phrase_vector(table, "teddy bear"), [0, 1, 1, 0])

    def test_all_oov_is_absent(self, table):
        assert phrase_vector(table, "qqq zzz") is None

    def test_partial_oov_uses_known_tokens(self, table):
        assert np.allclose(phrase_vector(table, "teddy qqq"), [0, 2, 0, 0])

    def test_unusable_phrase_is_absent(self, table):
        assert phrase_vector(table, "?!") is None


class TestKnn:
    def test_absent_label_is_empty(self, tmp_path):
        table = load_vectors(_write(tmp_path, ["a 1 0"]), "bert-vec")
        assert knn_candidates(table, Label.from_raw("zzz"), 3) == []

    def test_identical_vectors_rank_first(self, tmp_path):
        table = load_vectors(_write(tmp_path, ["a 1 1", "b 1 1", "c 9 1"]), "bert-vec")
        assert knn_candidates(table, Label.from_raw("a"), 1) == ["b"]

    def test_ten_entry_fixture_against_brute_force(self, tmp_path):
        # frozen from _brute_force_knn over this exact table
        entries = {
            "woman": [10.0, 0.0, 0.0, 0.0],
            "lady": [10.0, 0.3, 0.0, 0.0],
            "female": [10.0, 0.0, 0.6, 0.0],
            "girl": [9.0, 1.0, 0.0, 0.5],
            "man": [8.0, 3.0, 0.0, 0.0],
            "person": [7.0, 3.0, 3.0, 0.0],
            "road": [0.0, 10.0, 0.0, 0.0],
            "street": [0.0, 10.0, 0.4, 0.0],
            "dog": [0.0, 0.0, 10.0, 0.3],
            "cat": [0.0, 0.0, 10.0, 0.6],
        }
        lines = [f"{k} {' '.join(str(x) for x in v)}" for k, v in entries.items()]
        table = load_vectors(_write(tmp_path, lines), "bert-vec")
        got = knn_candidates(table, Label.from_raw("woman"), 3)
        assert got == _brute_force_knn(entries, "woman", 3)
        assert got == ["lady", "female", "girl"]

    def test_oracle_equivalence_on_random_tables(self, tmp_path):
        rng = np.random.default_rng(7)
        for trial in range(20):
            size = int(rng.integers(2, 40))
            entries = {}
            for i in range(size):
                vec = rng.integers(-4, 5, size=5).astype(float)
                if not vec.any():
                    vec[0] = 1.0
                entries[f"w{i:03d}"] = list(vec)
            lines = [f"{k} {' '.join(str(x) for x in v)}" for k, v in entries.items()]
            table = load_vectors(_write(tmp_path, lines), "counterfit-vec")
            query = f"w{int(rng.integers(0, size)):03d}"
            n = int(rng.integers(1, 12))
            got = knn_candidates(table, Label.from_raw(query), n)
            assert got == _brute_force_knn(entries, query, n), f"trial {trial}"

    def test_result_size_bound(self, tmp_path):
        table = load_vectors(
            _write(tmp_path, ["a 1 0", "b 1 1", "c 0 1"]), "bert-vec"
        )
        assert len(knn_candidates(table, Label.from_raw("a"), 10)) == 2
        assert len(knn_candidates(table, Label.from_raw("a"), 1)) == 1

    def test_scale_invariance(self, tmp_path):
        base = {"a": [3.0, 1.0], "b": [1.0, 2.0], "c": [2.0, 2.0], "d": [0.5, 3.0]}
        lines = [f"{k} {v[0]} {v[1]}" for k, v in base.items()]
        table = load_vectors(_write(tmp_path, lines), "bert-vec")
        before = knn_candidates(table, Label.from_raw("a"), 3)
        scaled = dict(base)
        scaled["b"] = [2.0, 4.0]
        lines = [f"{k} {v[0]} {v[1]}" for k, v in scaled.items()]
        table2 = load_vectors(_write(tmp_path, lines), "bert-vec")
        assert knn_candidates(table2, Label.from_raw("a"), 3) == before

    def test_n_must_be_positive(self, tmp_path):
        table = load_vectors(_write(tmp_path, ["a 1 0"]), "bert-vec")
        with pytest.raises(ContractViolation):
            knn_candidates(table, Label.from_raw("a"), 0)
