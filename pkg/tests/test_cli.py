from __future__ import annotations

import json

import pytest

from aaskit.cli import main
from aaskit.manifest import manifest_path

from .conftest import FIXTURES


def _build_args(tmp_path, out_name="aas.jsonl", **overrides):
    args = {
        "--dataset": str(FIXTURES / "gqa" / "questions.json"),
        "--out": str(tmp_path / out_name),
        "--backend": "lexical",
        "--wordnet-dir": str(FIXTURES / "wordnet"),
        "--bert-vectors": str(FIXTURES / "vectors" / "bert_vectors.txt"),
        "--counterfit-vectors": str(FIXTURES / "vectors" / "counterfit_vectors.txt"),
        "--conceptnet-cache": str(FIXTURES / "conceptnet" / "cache"),
    }
    args.update(overrides)
    argv = ["build", "--offline"]
    for key, value in args.items():
        argv.extend([key, value])
    return argv


def _eval_args(tmp_path, out_name="report.json"):
    return [
        "eval",
        "--dataset", str(FIXTURES / "gqa" / "questions.json"),
        "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
        "--predictions", str(FIXTURES / "predictions" / "model_a.jsonl"),
        "--out", str(tmp_path / out_name),
    ]


class TestExitCodes:
    def test_eval_happy_path(self, tmp_path, capsys):
        assert main(_eval_args(tmp_path)) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["n_questions"] == 500
        assert "aas_accuracy=" in capsys.readouterr().out

    def test_unknown_flag_is_usage_error(self, capsys):
        assert main(["eval", "--frobnicate"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_subcommand_is_usage_error(self):
        assert main([]) == 1

    def test_bad_k_is_usage_error(self, tmp_path, capsys):
        assert main(_build_args(tmp_path) + ["--k", "1"]) == 1
        assert "k must be in [2, 10]" in capsys.readouterr().err

    def test_offline_cold_cache_is_resource_error(self, tmp_path, capsys):
        empty = tmp_path / "empty-cache"
        empty.mkdir()
        code = main(_build_args(tmp_path, **{"--conceptnet-cache": str(empty)}))
        assert code == 3
        assert "offline" in capsys.readouterr().err

    def test_data_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("{not json\n")
        argv = _eval_args(tmp_path)
        argv[argv.index("--predictions") + 1] = str(bad)
        assert main(argv) == 2

    def test_eval_unresolved_question_id(self, tmp_path):
        preds = tmp_path / "p.jsonl"
        preds.write_text('{"question_id": "missing", "answer": "road"}\n')
        argv = _eval_args(tmp_path)
        argv[argv.index("--predictions") + 1] = str(preds)
        assert main(argv) == 2


class TestBuild:
    def test_build_matches_shipped_artifact(self, tmp_path):
        assert main(_build_args(tmp_path) + ["--k", "10"]) == 0
        built = (tmp_path / "aas.jsonl").read_bytes()
        shipped = (FIXTURES / "aas" / "su_aas_k10.jsonl").read_bytes()
        assert built == shipped

    def test_per_source_artifacts(self, tmp_path):
        argv = _build_args(tmp_path) + ["--per-source-dir", str(tmp_path / "per"), "--k", "10"]
        assert main(argv) == 0
        for tag in ("wordnet", "conceptnet", "bert-vec", "counterfit-vec"):
            built = (tmp_path / "per" / f"{tag}.jsonl").read_bytes()
            shipped = (FIXTURES / "aas" / "per_source" / f"{tag}.jsonl").read_bytes()
            assert built == shipped

    def test_manifest_written(self, tmp_path):
        assert main(_build_args(tmp_path)) == 0
        manifest = json.loads(manifest_path(tmp_path / "aas.jsonl").read_text())
        assert manifest["subcommand"] == "build"
        assert str(tmp_path / "aas.jsonl") in manifest["outputs"]
        assert manifest["config"]["k"] == 6


class TestConfigPrecedence:
    CASES = [
        # (config file line, flags, expected k, expected threshold)
        ("", [], 6, 0.5),
        ("k = 8", [], 8, 0.5),
        ("k = 8\nthreshold = 0.7", [], 8, 0.7),
        ("k = 8", ["--k", "9"], 9, 0.5),
        ("threshold = 0.7", ["--k", "4", "--threshold", "0.6"], 4, 0.6),
    ]

    @pytest.mark.parametrize("config_text,flags,expected_k,expected_threshold", CASES)
    def test_flag_beats_config_beats_default(
        self, tmp_path, config_text, flags, expected_k, expected_threshold
    ):
        argv = _build_args(tmp_path)
        if config_text:
            config_file = tmp_path / "aas.cfg"
            config_file.write_text(config_text + "\n")
            argv += ["--config", str(config_file)]
        argv += flags
        assert main(argv) == 0
        meta = json.loads((tmp_path / "aas.jsonl").read_text().splitlines()[0])["meta"]
        assert meta["k"] == expected_k
        assert meta["threshold"] == expected_threshold

    def test_unknown_config_key_is_usage_error(self, tmp_path, capsys):
        config_file = tmp_path / "aas.cfg"
        config_file.write_text("clown_mode = on\n")
        assert main(_build_args(tmp_path) + ["--config", str(config_file)]) == 1
        assert "clown_mode" in capsys.readouterr().err

    def test_env_var_backend_url(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("AAS_BACKEND_URL", "http://127.0.0.1:1")
        argv = _build_args(tmp_path) + ["--backend", "http", "--jobs", "1"]
        code = main(argv)
        # the URL is unreachable: the run must fail as a resource error,
        # proving the env var was honored in place of the absent flag
        assert code == 3


class TestDeterminism:
    def test_rerun_produces_identical_digests(self, tmp_path):
        assert main(_build_args(tmp_path, out_name="a.jsonl")) == 0
        assert main(_build_args(tmp_path, out_name="b.jsonl")) == 0
        a = json.loads(manifest_path(tmp_path / "a.jsonl").read_text())
        b = json.loads(manifest_path(tmp_path / "b.jsonl").read_text())
        digest_a = a["outputs"][str(tmp_path / "a.jsonl")]
        digest_b = b["outputs"][str(tmp_path / "b.jsonl")]
        assert digest_a == digest_b

    def test_jobs_flag_does_not_change_bytes(self, tmp_path):
        assert main(_build_args(tmp_path, out_name="j1.jsonl") + ["--jobs", "1"]) == 0
        assert main(_build_args(tmp_path, out_name="j8.jsonl") + ["--jobs", "8"]) == 0
        assert (tmp_path / "j1.jsonl").read_bytes() == (tmp_path / "j8.jsonl").read_bytes()

    def test_eval_and_ksweep_reruns_are_byte_identical(self, tmp_path):
        assert main(_eval_args(tmp_path, out_name="r1.json")) == 0
        assert main(_eval_args(tmp_path, out_name="r2.json")) == 0
        assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
        sweep_args = [
            "ksweep",
            "--dataset", str(FIXTURES / "gqa" / "questions.json"),
            "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
            "--predictions", str(FIXTURES / "predictions" / "model_a.jsonl"),
        ]
        assert main(sweep_args + ["--out", str(tmp_path / "s1.csv")]) == 0
        assert main(sweep_args + ["--out", str(tmp_path / "s2.csv")]) == 0
        assert (tmp_path / "s1.csv").read_bytes() == (tmp_path / "s2.csv").read_bytes()


class TestOtherSubcommands:
    def test_ksweep_writes_csv(self, tmp_path):
        argv = [
            "ksweep",
            "--dataset", str(FIXTURES / "gqa" / "questions.json"),
            "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
            "--predictions", str(FIXTURES / "predictions" / "model_a.jsonl"),
            "--out", str(tmp_path / "sweep.csv"),
        ]
        assert main(argv) == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "k,aas_accuracy_pct"
        assert len(lines) == 10  # header + k=2..10

    def test_iou_reports_per_artifact(self, tmp_path):
        argv = [
            "iou",
            "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
            "--aas", str(FIXTURES / "aas" / "per_source" / "wordnet.jsonl"),
            "--human", str(FIXTURES / "human" / "annotations.jsonl"),
            "--out", str(tmp_path / "iou.json"),
        ]
        assert main(argv) == 0
        report = json.loads((tmp_path / "iou.json").read_text())
        assert len(report) == 2
        for entry in report.values():
            assert 0.0 <= entry["mean_iou_pct"] <= 100.0

    def test_augment_exports_targets(self, tmp_path):
        argv = [
            "augment",
            "--dataset", str(FIXTURES / "gqa" / "questions.json"),
            "--aas", str(FIXTURES / "aas" / "su_aas_k10.jsonl"),
            "--vocab", str(FIXTURES / "vocab" / "answers.txt"),
            "--mode", "score",
            "--out", str(tmp_path / "targets.jsonl"),
        ]
        assert main(argv) == 0
        lines = (tmp_path / "targets.jsonl").read_text().splitlines()
        assert len(lines) == 500
        first = json.loads(lines[0])
        assert sum(w for _, w in first["targets"]) == pytest.approx(1.0, abs=1e-9)

    def test_premises_dumps_to_stdout(self, capsys):
        argv = [
            "premises",
            "--dataset", str(FIXTURES / "gqa" / "questions.json"),
            "--label", "Teddy Bear",
        ]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["label"] == "teddy bear"
        assert all("teddy bear" in p.lower() for p in payload["premises"])

    def test_ingest_vqa_to_canonical_shape(self, tmp_path):
        ann = tmp_path / "ann.json"
        ann.write_text(
            json.dumps(
                {
                    "annotations": [
                        {"question_id": 5, "image_id": 2, "multiple_choice_answer": "Road "},
                        {"question_id": 6, "image_id": 2, "multiple_choice_answer": "dog"},
                    ]
                }
            )
        )
        out = tmp_path / "questions.json"
        assert main(["ingest", "--vqa-annotations", str(ann), "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["5"]["answer"] == "road"
        assert data["6"]["answer"] == "dog"

    def test_ingest_requires_exactly_one_input(self, tmp_path):
        assert main(["ingest", "--out", str(tmp_path / "x.json")]) == 1
