#!/usr/bin/env python3
"""Compute the golden evaluation numbers for the shipped fixtures.

Deliberately independent of the aaskit package: plain-stdlib parsing, a
local copy of the normalization rules, set lookups, and running sums.
The test suite compares the real evaluator against these frozen values.
"""

from __future__ import annotations

import json
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
FIX = REPO / "fixtures"


def normalize(raw: str) -> str:
    s = raw.lower()
    while True:
        t = " ".join(s.split()).strip(".,!?")
        if t == s:
            break
        s = t
    return s  # empty string means "unusable" here


def main() -> None:
    sets: dict[str, dict[str, float]] = {}
    with open(FIX / "aas" / "su_aas_k10.jsonl", encoding="utf-8") as f:
        for line in f:
            obj = json.loads(line)
            if "label" not in obj:
                continue
            sets[obj["label"]] = {m["phrase"]: m["score"] for m in obj["members"]}

    questions = json.loads((FIX / "gqa" / "questions.json").read_text(encoding="utf-8"))
    gt_by_qid = {qid: normalize(entry["answer"]) for qid, entry in questions.items()}

    n = 0
    exact = 0
    member = 0
    total = 0.0
    with open(FIX / "predictions" / "model_a.jsonl", encoding="utf-8") as f:
        for line in f:
            record = json.loads(line)
            qid, answer = record["question_id"], normalize(record["answer"])
            gt = gt_by_qid[qid]
            n += 1
            if answer == gt:
                exact += 1
            if answer and answer in sets[gt]:
                member += 1
                total += sets[gt][answer]

    golden = {
        "n_questions": n,
        "exact_match_pct": 100.0 * exact / n,
        "aas_accuracy_pct": 100.0 * total / n,
        "aas_membership_pct": 100.0 * member / n,
    }
    out = FIX / "golden"
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "eval_golden.json", "w", encoding="utf-8") as f:
        json.dump(golden, f, indent=1, sort_keys=True)
        f.write("\n")
    print(json.dumps(golden, indent=1))


if __name__ == "__main__":
    main()
