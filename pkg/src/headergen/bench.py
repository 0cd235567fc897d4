"""Soundness/completeness harness over a directory of benchmark cases.

A case is any directory holding ``truth.json`` next to exactly one
``.ipynb``.  An optional ``case.json`` supplies ``{"category": ...}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .callgraph import PrecisionRecall, load_truth, score
from .notebook import load_notebook
from .pipeline import Resources, analyze

TRUTH_FILE = "truth.json"
CASE_FILE = "case.json"


@dataclass
class CaseResult:
    name: str
    category: str
    pr: PrecisionRecall
    missing: list[tuple] = field(default_factory=list)
    extra: list[tuple] = field(default_factory=list)
    error: str | None = None

    @property
    def sound(self) -> bool:
        return self.error is None and self.pr.sound

    @property
    def complete(self) -> bool:
        return self.error is None and self.pr.complete

    def to_json(self) -> dict:
        return {"name": self.name, "category": self.category, "sound": self.sound,
                "complete": self.complete, **self.pr.to_json(),
                "missing": [list(p) for p in self.missing], "extra": [list(p) for p in self.extra],
                "error": self.error}


@dataclass
class BenchResult:
    cases: list[CaseResult]

    @property
    def sound(self) -> int:
        return sum(c.sound for c in self.cases)

    @property
    def complete(self) -> int:
        return sum(c.complete for c in self.cases)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not (c.sound and c.complete)]

    def to_json(self) -> dict:
        return {"total": len(self.cases), "sound": self.sound, "complete": self.complete,
                "cases": [c.to_json() for c in self.cases]}

    def table(self) -> str:
        rows = [f"{'case':<48} {'sound':>5} {'complete':>8}"]
        for c in self.cases:
            rows.append(f"{c.name:<48} {'yes' if c.sound else 'NO':>5} {'yes' if c.complete else 'NO':>8}"
                        + (f"  error: {c.error}" if c.error else ""))
        n = len(self.cases)
        rows.append(f"sound {self.sound}/{n}, complete {self.complete}/{n}")
        return "\n".join(rows)


def find_cases(suite: Path) -> list[Path]:
    return sorted(p.parent for p in Path(suite).rglob(TRUTH_FILE))


def run_case(case: Path, res: Resources, name: str | None = None) -> CaseResult:
    name = name or case.name
    meta = {}
    if (case / CASE_FILE).exists():
        meta = json.loads((case / CASE_FILE).read_text(encoding="utf-8"))
    category = meta.get("category", "")
    notebooks = sorted(case.glob("*.ipynb"))
    try:
        if len(notebooks) != 1:
            raise ValueError(f"expected one notebook, found {len(notebooks)}")
        truth = load_truth(case / TRUTH_FILE)
        analysis = analyze(load_notebook(notebooks[0]), res)
    except Exception as exc:  # one broken case must not stop the run
        return CaseResult(name, category, PrecisionRecall(0, 0, 0), error=f"{type(exc).__name__}: {exc}")
    found = analysis.report.pairs()
    pr = score(found, truth)
    return CaseResult(name, category, pr, sorted(truth - found), sorted(found - truth))


def run_bench(suite: str | Path, res: Resources) -> BenchResult:
    suite = Path(suite)
    return BenchResult([run_case(c, res, str(c.relative_to(suite)) if c != suite else c.name)
                        for c in find_cases(suite)])


# -- header evaluation

HEADER_TRUTH_FILE = "headers.json"


def load_header_truth(path: str | Path) -> set[tuple[int, str]]:
    """``{"cells": {ci: [top, ...]}}`` -> {(code_index, top)}."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return {(int(ci), top) for ci, tops in doc["cells"].items() for top in tops}


def header_pairs(classification) -> set[tuple[int, str]]:
    return {(ci, top) for ci in classification.subs for top in classification.tops(ci)}


def score_headers(classification, truth: set[tuple[int, str]]) -> PrecisionRecall:
    """Headers are matched on high-level categories per cell."""
    got = header_pairs(classification)
    return PrecisionRecall(len(got & truth), len(got - truth), len(truth - got))
