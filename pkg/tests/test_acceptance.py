"""Acceptance suite: one test per release criterion.

Each test prints a single PASS/FAIL line so a plain `pytest -s
tests/test_acceptance.py` reads as a checklist.  Tolerances are pinned
here and nowhere else.
"""

from __future__ import annotations

import functools
import json
import random
import time

import pytest

from aaskit.artifact import index_by_label, read_aas_file
from aaskit.cli import main
from aaskit.core import AnswerSet, Label, PredictionRecord, QAItem, ScoredCandidate, groundtruth_member
from aaskit.dataset import check_unique_ids, load_gqa_questions, load_predictions
from aaskit.entailment import filter_candidates, harvest_premises, semantic_score
from aaskit.metrics import evaluate, iou_agreement, k_sweep

from .conftest import FIXTURES


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE FAIL {name}")
                raise
            print(f"ACCEPTANCE PASS {name}")

        return wrapper

    return decorate


def _make_set(label: str, alternatives) -> AnswerSet:
    lab = Label.from_raw(label)
    members = [groundtruth_member(lab)] + [
        ScoredCandidate(phrase=p, score=s, sources=frozenset({"wordnet"}))
        for p, s in alternatives
    ]
    return AnswerSet.build(lab, members)


def _random_eval_fixture(rng: random.Random, n_questions=200, n_labels=40):
    labels = [f"lab{i:02d}" for i in range(n_labels)]
    sets = {}
    for name in labels:
        alternatives = [
            (f"{name} alt{j}", round(rng.uniform(0.5, 0.999999), 6))
            for j in range(rng.randint(0, 5))
        ]
        sets[name] = _make_set(name, alternatives)
    dataset = {}
    for i in range(n_questions):
        qid = f"q{i:03d}"
        dataset[qid] = QAItem(
            question_id=qid,
            question_text=f"question {i}?",
            ground_truth=Label.from_raw(labels[i % n_labels]),
        )
    return sets, dataset


def _random_predictions(rng, sets, dataset):
    predictions = []
    for qid, item in dataset.items():
        gt = item.ground_truth.normalized
        roll = rng.random()
        if roll < 0.5:
            answer = gt
        elif roll < 0.8:
            alternatives = sets[gt].alternatives()
            answer = rng.choice(alternatives) if alternatives else gt
        elif roll < 0.95:
            answer = rng.choice(sorted(sets))
        else:
            answer = rng.choice(["xyzzy", "?!", "argle"])
        predictions.append(PredictionRecord(question_id=qid, predicted=answer))
    return predictions


@criterion("metric oracle equivalence (200 items, 1e-9, < 1 s)")
def test_metric_oracle_equivalence():
    rng = random.Random(424242)
    sets, dataset = _random_eval_fixture(rng)
    predictions = _random_predictions(rng, sets, dataset)

    # Independent oracle: raw dict lookups and running sums.
    lookup = {
        name: {m.phrase: m.score for m in s.members} for name, s in sets.items()
    }
    total = 0.0
    exact = 0
    for p in predictions:
        gt = dataset[p.question_id].ground_truth.normalized
        answer = " ".join(p.predicted.lower().split()).strip(".,!?")
        total += lookup[gt].get(answer, 0.0)
        if answer == gt:
            exact += 1
    oracle_aas = 100.0 * total / len(predictions)
    oracle_exact = 100.0 * exact / len(predictions)

    started = time.perf_counter()
    report = evaluate(sets, dataset, predictions)
    elapsed = time.perf_counter() - started

    assert abs(report.aas_accuracy_pct - oracle_aas) < 1e-9
    assert abs(report.exact_match_pct - oracle_exact) < 1e-9
    assert elapsed < 1.0, f"evaluation took {elapsed:.3f}s"


@criterion("dominance: aas_accuracy >= exact_match on 55 random prediction files")
def test_dominance_property():
    items = load_gqa_questions(FIXTURES / "gqa" / "questions.json")
    dataset = check_unique_ids(items)
    sets = index_by_label(read_aas_file(FIXTURES / "aas" / "su_aas_k10.jsonl")[0])
    vocabulary = sorted(sets) + ["xyzzy", "?!", "lamp post"]
    rng = random.Random(7171)
    for trial in range(55):
        predictions = [
            PredictionRecord(question_id=qid, predicted=rng.choice(vocabulary))
            for qid in dataset
        ]
        report = evaluate(sets, dataset, predictions)
        assert report.aas_accuracy_pct >= report.exact_match_pct, f"file {trial}"


@criterion("k-sweep monotone on 20 random fixtures; step lands at planted rank")
def test_ksweep_monotonicity_and_step():
    rng = random.Random(1312)
    for trial in range(20):
        sets, dataset = _random_eval_fixture(rng, n_questions=60, n_labels=12)
        # rebuild sets with exactly 9 alternatives so truncation to 10 is legal
        sets = {
            name: _make_set(
                name,
                [
                    (f"{name} alt{j}", round(rng.uniform(0.5, 0.999999), 6))
                    for j in range(9)
                ],
            )
            for name in sets
        }
        predictions = _random_predictions(rng, sets, dataset)
        rows = k_sweep(sets, dataset, predictions, k_range=range(2, 11))
        values = [v for _, v in rows]
        assert values == sorted(values), f"fixture {trial} not monotone"

    # hand-built fixture: prediction hits the rank-4 member, so the curve
    # steps exactly when k reaches 4
    sets = {
        "road": _make_set(
            "road", [("street", 0.9), ("way", 0.8), ("path", 0.7), ("lane", 0.6)]
        )
    }
    dataset = {
        "q1": QAItem(question_id="q1", question_text="?", ground_truth=Label.from_raw("road"))
    }
    predictions = [PredictionRecord(question_id="q1", predicted="path")]
    rows = dict(k_sweep(sets, dataset, predictions, k_range=range(2, 6)))
    assert rows[2] == 0.0 and rows[3] == 0.0
    assert rows[4] == pytest.approx(70.0) and rows[5] == pytest.approx(70.0)


@criterion("offline pipeline on bundled vocabulary: invariants + pinned members, < 30 s")
def test_pipeline_faithfulness(tmp_path):
    out = tmp_path / "aas.jsonl"
    argv = [
        "build",
        "--offline",
        "--backend", "lexical",
        "--dataset", str(FIXTURES / "gqa" / "questions.json"),
        "--wordnet-dir", str(FIXTURES / "wordnet"),
        "--bert-vectors", str(FIXTURES / "vectors" / "bert_vectors.txt"),
        "--counterfit-vectors", str(FIXTURES / "vectors" / "counterfit_vectors.txt"),
        "--conceptnet-cache", str(FIXTURES / "conceptnet" / "cache"),
        "--out", str(out),
    ]
    started = time.perf_counter()
    assert main(argv) == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"offline build took {elapsed:.1f}s"

    sets, meta = read_aas_file(out)
    assert meta["k"] == 6
    assert len(sets) == 20
    for s in sets:
        assert len(s.members) <= 6
        own = s.lookup(s.label.normalized)
        assert own is not None and own.score == 1.0
        scores = [m.score for m in s.members]
        assert scores == sorted(scores, reverse=True)
        assert all(v >= 0.5 for v in scores)
    by_label = index_by_label(sets)
    batter = {m.phrase for m in by_label["batter"].members}
    assert {"batsman", "hitter"} <= batter
    road = {m.phrase for m in by_label["road"].members}
    assert "street" in road


@criterion("entailment means exact; threshold keeps 0.5, drops 0.4999")
def test_entailment_averaging_and_threshold():
    corpus = [
        QAItem(question_id=f"q{i}", question_text=f"Is the dog in frame {i}?", ground_truth=Label.from_raw("dog"))
        for i in range(4)
    ]
    premises = harvest_premises(corpus, Label.from_raw("dog"))

    class Scripted:
        def __init__(self, values):
            self.values = values

        def score_batch(self, pairs):
            return [self.values[i] for i in range(len(pairs))]

    got = semantic_score(Scripted([0.2, 0.4, 0.6, 0.8]), premises, "puppy")
    assert got.mean_score == (0.2 + 0.4 + 0.6 + 0.8) / 4
    got = semantic_score(Scripted([1.0, 0.0, 1.0, 0.0]), premises, "puppy")
    assert got.mean_score == 0.5

    from aaskit.entailment import SemanticScore

    boundary = [
        SemanticScore("keep", 0.5, 4),
        SemanticScore("drop", 0.4999, 4),
        SemanticScore("high", 0.9, 4),
    ]
    kept = filter_candidates(boundary, 0.5)
    assert [s.candidate for s in kept] == ["keep", "high"]


@criterion("IoU oracle: CLI matches set arithmetic; identity 100.0, disjoint 0.0")
def test_iou_oracle(tmp_path):
    # CLI on the shipped 5-label annotation fixture
    out = tmp_path / "iou.json"
    argv = [
        "iou",
        "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
        "--human", str(FIXTURES / "human" / "annotations.jsonl"),
        "--out", str(out),
    ]
    assert main(argv) == 0
    report = json.loads(out.read_text())
    (entry,) = report.values()

    # brute-force recomputation from the same files
    sets = index_by_label(read_aas_file(FIXTURES / "aas" / "su_aas_k10.jsonl")[0])
    votes = {}
    for line in (FIXTURES / "human" / "annotations.jsonl").read_text().splitlines():
        obj = json.loads(line)
        votes.setdefault(obj["label"], {})[obj["phrase"]] = obj["votes"]
    expected = []
    for label in sorted(votes):
        auto = {m.phrase for m in sets[label].members} - {label}
        human = {p for p, b in votes[label].items() if sum(b) >= 2} - {label}
        union = auto | human
        expected.append(len(auto & human) / len(union) if union else 1.0)
    mean_pct = 100.0 * sum(expected) / len(expected)
    assert entry["mean_iou_pct"] == pytest.approx(mean_pct, abs=5e-3)

    # identity and disjoint inputs hit the documented extremes
    identity_sets = {"road": _make_set("road", [("street", 0.9), ("way", 0.8)])}
    identity_votes = {"road": {"street": [True] * 3, "way": [True] * 3}}
    assert iou_agreement(identity_sets, identity_votes).mean_pct == 100.0
    disjoint_votes = {"road": {"boulevard": [True] * 3}}
    assert iou_agreement(identity_sets, disjoint_votes).mean_pct == 0.0


@criterion("determinism: consecutive builds and --jobs 1/8 byte-identical")
def test_build_determinism(tmp_path):
    def build(name, jobs):
        out = tmp_path / name
        argv = [
            "build",
            "--offline",
            "--backend", "lexical",
            "--jobs", str(jobs),
            "--dataset", str(FIXTURES / "gqa" / "questions.json"),
            "--wordnet-dir", str(FIXTURES / "wordnet"),
            "--bert-vectors", str(FIXTURES / "vectors" / "bert_vectors.txt"),
            "--counterfit-vectors", str(FIXTURES / "vectors" / "counterfit_vectors.txt"),
            "--conceptnet-cache", str(FIXTURES / "conceptnet" / "cache"),
            "--out", str(out),
        ]
        assert main(argv) == 0
        return out.read_bytes()

    first = build("run1.jsonl", 1)
    second = build("run2.jsonl", 1)
    eight = build("run8.jsonl", 8)
    assert first == second
    assert first == eight


@criterion("shipped 500-prediction fixture reproduces the golden report (1e-9)")
def test_golden_eval():
    golden = json.loads((FIXTURES / "golden" / "eval_golden.json").read_text())
    items = load_gqa_questions(FIXTURES / "gqa" / "questions.json")
    dataset = check_unique_ids(items)
    sets = index_by_label(read_aas_file(FIXTURES / "aas" / "su_aas_k10.jsonl")[0])
    predictions = load_predictions(FIXTURES / "predictions" / "model_a.jsonl")
    report = evaluate(sets, dataset, predictions)
    assert report.n_questions == golden["n_questions"] == 500
    assert abs(report.exact_match_pct - golden["exact_match_pct"]) < 1e-9
    assert abs(report.aas_accuracy_pct - golden["aas_accuracy_pct"]) < 1e-9
    assert abs(report.aas_membership_pct - golden["aas_membership_pct"]) < 1e-9


@criterion("CLI eval on shipped fixtures matches the golden report at 2 dp")
def test_golden_eval_through_cli(tmp_path):
    golden = json.loads((FIXTURES / "golden" / "eval_golden.json").read_text())
    out = tmp_path / "report.json"
    argv = [
        "eval",
        "--dataset", str(FIXTURES / "gqa" / "questions.json"),
        "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
        "--predictions", str(FIXTURES / "predictions" / "model_a.jsonl"),
        "--out", str(out),
    ]
    assert main(argv) == 0
    report = json.loads(out.read_text())
    assert report["exact_match_pct"] == round(golden["exact_match_pct"], 2)
    assert report["aas_accuracy_pct"] == round(golden["aas_accuracy_pct"], 2)
