"""Command-line entry point.

Subcommands: ingest, build, eval, ksweep, iou, augment, premises.
Option precedence is flag > config file > environment > built-in
default; the config file is flat ``key = value`` lines.

Exit codes: 0 success, 1 usage error, 2 data error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .artifact import index_by_label, read_aas_file, write_aas_file
from .builder import (
    UNION_VIEW,
    BuildConfig,
    SourcePool,
    artifact_metadata,
    build_vocabulary_aas,
    pool_provenance,
)
from .conceptnet import ConceptNetClient
from .core import SOURCE_TAGS, Label
from .dataset import (
    check_unique_ids,
    load_gqa_questions,
    load_predictions,
    load_vocabulary,
    load_vqa_annotations,
    write_gqa_questions,
)
from .entailment import HttpBackend, LexicalBackend, TableBackend, harvest_premises
from .errors import AasError, FormatError, UsageError
from .manifest import write_manifest
from .metrics import (
    evaluate,
    iou_agreement,
    k_sweep,
    load_human_annotations,
    write_sweep_csv,
)
from .augment import export_soft_targets
from .wordnet import load_wordnet
from .vectors import load_vectors

BACKEND_URL_ENV = "AAS_BACKEND_URL"

_CONFIG_TYPES = {
    "k": int,
    "threshold": float,
    "knn_n": int,
    "hypernym_depth": int,
    "min_weight": float,
    "jobs": int,
    "offline": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
    "sources": str,
    "backend": str,
    "backend_url": str,
    "wordnet_dir": str,
    "bert_vectors": str,
    "counterfit_vectors": str,
    "conceptnet_cache": str,
    "score_table": str,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _read_config_file(path: str) -> dict:
    values: dict = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_TYPES:
                raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = _CONFIG_TYPES[key](raw.strip())
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


_DEFAULTS = {
    "k": 6,
    "threshold": 0.5,
    "knn_n": 10,
    "hypernym_depth": 2,
    "min_weight": 1.0,
    "jobs": os.cpu_count() or 1,
    "offline": False,
    "sources": ",".join(SOURCE_TAGS),
    "backend": "lexical",
    "backend_url": None,
    "wordnet_dir": None,
    "bert_vectors": None,
    "counterfit_vectors": None,
    "conceptnet_cache": None,
    "score_table": None,
}


def resolve_options(args: argparse.Namespace) -> dict:
    """flag > config file > environment > default."""
    resolved = dict(_DEFAULTS)
    if getattr(args, "config", None):
        resolved.update(_read_config_file(args.config))
    env_url = os.environ.get(BACKEND_URL_ENV)
    if env_url and resolved.get("backend_url") is None:
        resolved["backend_url"] = env_url
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
    return resolved


def _parse_sources(raw: str) -> tuple[str, ...]:
    tags = tuple(t.strip() for t in raw.split(",") if t.strip())
    unknown = set(tags) - set(SOURCE_TAGS)
    if unknown:
        raise UsageError(f"unknown sources: {sorted(unknown)} (valid: {', '.join(SOURCE_TAGS)})")
    if not tags:
        raise UsageError("at least one source is required")
    return tags


def _make_backend(options: dict):
    name = options["backend"]
    if name == "lexical":
        return LexicalBackend(), "lexical"
    if name == "table":
        if not options["score_table"]:
            raise UsageError("--score-table is required with --backend table")
        return TableBackend(options["score_table"]), f"table:{Path(options['score_table']).name}"
    if name == "http":
        if not options["backend_url"]:
            raise UsageError(
                f"--backend-url (or ${BACKEND_URL_ENV}) is required with --backend http"
            )
        return HttpBackend(options["backend_url"]), f"http:{options['backend_url']}"
    raise UsageError(f"unknown backend {name!r} (valid: http, table, lexical)")


def _make_pool(options: dict, sources: tuple[str, ...]) -> SourcePool:
    pool = SourcePool()
    if "wordnet" in sources:
        if not options["wordnet_dir"]:
            raise UsageError("--wordnet-dir is required when the wordnet source is enabled")
        pool.wordnet = load_wordnet(options["wordnet_dir"])
    if "bert-vec" in sources:
        if not options["bert_vectors"]:
            raise UsageError("--bert-vectors is required when the bert-vec source is enabled")
        pool.bert_vectors = load_vectors(options["bert_vectors"], "bert-vec")
    if "counterfit-vec" in sources:
        if not options["counterfit_vectors"]:
            raise UsageError(
                "--counterfit-vectors is required when the counterfit-vec source is enabled"
            )
        pool.counterfit_vectors = load_vectors(options["counterfit_vectors"], "counterfit-vec")
    if "conceptnet" in sources:
        if not options["conceptnet_cache"]:
            raise UsageError("--conceptnet-cache is required when the conceptnet source is enabled")
        pool.conceptnet = ConceptNetClient(
            cache_dir=options["conceptnet_cache"], offline=options["offline"]
        )
    return pool


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value configuration file")


def _add_build_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sources", help=f"comma-separated subset of {','.join(SOURCE_TAGS)}")
    parser.add_argument("--k", type=int)
    parser.add_argument("--threshold", type=float)
    parser.add_argument("--knn-n", dest="knn_n", type=int)
    parser.add_argument("--hypernym-depth", dest="hypernym_depth", type=int)
    parser.add_argument("--min-weight", dest="min_weight", type=float)
    parser.add_argument("--backend", choices=["http", "table", "lexical"])
    parser.add_argument("--backend-url", dest="backend_url")
    parser.add_argument("--score-table", dest="score_table")
    parser.add_argument("--wordnet-dir", dest="wordnet_dir")
    parser.add_argument("--bert-vectors", dest="bert_vectors")
    parser.add_argument("--counterfit-vectors", dest="counterfit_vectors")
    parser.add_argument("--conceptnet-cache", dest="conceptnet_cache")
    parser.add_argument("--offline", action="store_const", const=True, default=None)
    parser.add_argument("--jobs", type=int)


def build_parser() -> _Parser:
    parser = _Parser(prog="aas", description=__doc__)
    parser.add_argument("--version", action="version", version=f"aas {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ingest", help="convert a dataset file to the canonical question shape")
    p.add_argument("--gqa", help="GQA-shaped question file (validated and normalized)")
    p.add_argument("--vqa-annotations", dest="vqa_annotations", help="VQA-v2 annotations JSON")
    p.add_argument("--vqa-questions", dest="vqa_questions", help="VQA-v2 questions JSON")
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sub.add_parser("build", help="build answer sets for a dataset's vocabulary")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--per-source-dir", dest="per_source_dir")
    p.add_argument("--checkpoint", help="journal path (default: <out>.checkpoint)")
    _add_build_options(p)
    _add_common(p)

    p = sub.add_parser("eval", help="score a prediction file against an artifact")
    p.add_argument("--dataset", required=True)
    p.add_argument("--aas", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sub.add_parser("ksweep", help="semantic accuracy as the set size cap varies")
    p.add_argument("--dataset", required=True)
    p.add_argument("--aas", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k-min", dest="k_min", type=int, default=2)
    p.add_argument("--k-max", dest="k_max", type=int, default=10)
    _add_common(p)

    p = sub.add_parser("iou", help="agreement between artifacts and human annotations")
    p.add_argument("--aas", action="append", required=True, help="repeatable")
    p.add_argument("--human", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sub.add_parser("augment", help="export soft training targets")
    p.add_argument("--dataset", required=True)
    p.add_argument("--aas", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--mode", choices=["uniform", "score"], default="score")
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sub.add_parser("premises", help="dump the premise sentences for one label")
    p.add_argument("--dataset", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--out", help="default: stdout")
    _add_common(p)

    return parser


def _cmd_ingest(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    if bool(args.gqa) == bool(args.vqa_annotations):
        raise UsageError("ingest needs exactly one of --gqa or --vqa-annotations")
    if args.gqa:
        items = load_gqa_questions(args.gqa)
        inputs = [Path(args.gqa)]
    else:
        items = load_vqa_annotations(args.vqa_annotations, args.vqa_questions)
        inputs = [Path(args.vqa_annotations)]
        if args.vqa_questions:
            inputs.append(Path(args.vqa_questions))
    check_unique_ids(items)
    write_gqa_questions(items, args.out)
    print(f"ingested {len(items)} questions -> {args.out}")
    return inputs, [Path(args.out)], {"n_questions": len(items)}


def _cmd_build(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    options = resolve_options(args)
    sources = _parse_sources(options["sources"])
    try:
        config = BuildConfig(
            k=options["k"],
            threshold=options["threshold"],
            knn_n=options["knn_n"],
            sources=sources,
            hypernym_depth=options["hypernym_depth"],
            min_weight=options["min_weight"],
        )
    except FormatError as exc:
        raise UsageError(str(exc)) from exc
    backend, backend_name = _make_backend(options)
    pool = _make_pool(options, sources)
    config = replace(config, metadata=pool_provenance(pool, config))
    items = load_gqa_questions(args.dataset)
    check_unique_ids(items)
    checkpoint = args.checkpoint or f"{args.out}.checkpoint"
    views = build_vocabulary_aas(
        items,
        pool,
        config,
        backend,
        jobs=options["jobs"],
        checkpoint_path=checkpoint,
        backend_name=backend_name,
    )
    outputs = [Path(args.out)]
    write_aas_file(
        views[UNION_VIEW], args.out, meta=artifact_metadata(config, UNION_VIEW, backend_name)
    )
    if args.per_source_dir:
        per_dir = Path(args.per_source_dir)
        per_dir.mkdir(parents=True, exist_ok=True)
        for tag in sources:
            out = per_dir / f"{tag}.jsonl"
            write_aas_file(views[tag], out, meta=artifact_metadata(config, tag, backend_name))
            outputs.append(out)
    print(f"built {len(views[UNION_VIEW])} answer sets -> {args.out}")
    config_echo = {**options, "sources": list(sources)}
    return [Path(args.dataset)], outputs, config_echo


def _load_eval_inputs(args: argparse.Namespace):
    items = load_gqa_questions(args.dataset)
    by_id = check_unique_ids(items)
    sets, meta = read_aas_file(args.aas)
    predictions = load_predictions(args.predictions)
    return by_id, index_by_label(sets), meta, predictions


def _cmd_eval(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    by_id, sets, meta, predictions = _load_eval_inputs(args)
    report = evaluate(sets, by_id, predictions, config={"artifact_meta": meta})
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(report.to_json() + "\n")
    print(
        f"n={report.n_questions} exact_match={report.exact_match_pct:.2f}% "
        f"aas_accuracy={report.aas_accuracy_pct:.2f}%"
    )
    return (
        [Path(args.dataset), Path(args.aas), Path(args.predictions)],
        [Path(args.out)],
        {},
    )


def _cmd_ksweep(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    by_id, sets, meta, predictions = _load_eval_inputs(args)
    if args.k_min < 2 or args.k_max < args.k_min:
        raise UsageError("need 2 <= k-min <= k-max")
    rows = k_sweep(
        sets,
        by_id,
        predictions,
        k_range=range(args.k_min, args.k_max + 1),
        artifact_k=meta.get("k"),
    )
    write_sweep_csv(rows, args.out)
    for k, pct in rows:
        print(f"k={k} aas_accuracy={pct:.2f}%")
    return (
        [Path(args.dataset), Path(args.aas), Path(args.predictions)],
        [Path(args.out)],
        {"k_min": args.k_min, "k_max": args.k_max},
    )


def _cmd_iou(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    annotations = load_human_annotations(args.human)
    results = {}
    for aas_path in args.aas:
        sets, meta = read_aas_file(aas_path)
        report = iou_agreement(index_by_label(sets), annotations)
        results[aas_path] = {
            "view": meta.get("view", "?"),
            "mean_iou_pct": round(report.mean_pct, 2),
            "per_label": {label: round(v, 4) for label, v in report.per_label},
        }
        print(f"{aas_path}: iou={report.mean_pct:.2f}%")
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(results, f, indent=1, sort_keys=True)
        f.write("\n")
    return [Path(args.human), *map(Path, args.aas)], [Path(args.out)], {}


def _cmd_augment(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    items = load_gqa_questions(args.dataset)
    check_unique_ids(items)
    sets, _ = read_aas_file(args.aas)
    vocab = load_vocabulary(args.vocab)
    skipped = export_soft_targets(items, index_by_label(sets), vocab, args.mode, args.out)
    print(f"exported {len(items) - skipped} targets ({skipped} skipped) -> {args.out}")
    return (
        [Path(args.dataset), Path(args.aas), Path(args.vocab)],
        [Path(args.out)],
        {"mode": args.mode, "skipped": skipped},
    )


def _cmd_premises(args: argparse.Namespace) -> tuple[list[Path], list[Path], dict]:
    items = load_gqa_questions(args.dataset)
    premises = harvest_premises(items, Label.from_raw(args.label))
    payload = json.dumps(
        {"label": premises.label.normalized, "premises": list(premises.premises)},
        ensure_ascii=False,
        indent=1,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(payload + "\n")
        return [Path(args.dataset)], [Path(args.out)], {}
    print(payload)
    return [Path(args.dataset)], [], {}


_COMMANDS = {
    "ingest": _cmd_ingest,
    "build": _cmd_build,
    "eval": _cmd_eval,
    "ksweep": _cmd_ksweep,
    "iou": _cmd_iou,
    "augment": _cmd_augment,
    "premises": _cmd_premises,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        started = time.monotonic()
        inputs, outputs, extra = _COMMANDS[args.subcommand](args)
        if outputs:
            write_manifest(
                outputs[0],
                args.subcommand,
                extra,
                inputs,
                outputs,
                time.monotonic() - started,
            )
        return 0
    except UsageError as exc:
        print(f"aas: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return exc.exit_code
    except AasError as exc:
        print(f"aas: {type(exc).__name__}: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 2)


if __name__ == "__main__":
    sys.exit(main())
