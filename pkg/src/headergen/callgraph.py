"""Per-cell callsites, transitive attribution and precision/recall scoring."""

from __future__ import annotations

import ast
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .eag import UNRESOLVED, ExtendedAssignmentGraph, call_key
from .frontend import ImportTable, ModuleIR, Scope, own_nodes
from .notebook import CellLineMap
from .stubs import TypeStubDB

DIRECT = "direct"
TRANSITIVE = "transitive"

Location = tuple[int, int]


class TruthFormatError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CallSite:
    location: Location
    callee_fqns: tuple[str, ...]
    origin: str = DIRECT
    key: tuple = field(default=(), compare=False, repr=False)
    snippet: str = field(default="", compare=False, repr=False)

    def __post_init__(self):
        if not self.callee_fqns:
            raise ValueError("a callsite needs at least one callee")
        object.__setattr__(self, "callee_fqns", tuple(sorted(set(self.callee_fqns))))


@dataclass
class CallSiteReport:
    cells: dict[int, list[CallSite]] = field(default_factory=dict)

    def sites(self, origin: str | None = None) -> list[CallSite]:
        out = []
        for ci in sorted(self.cells):
            out.extend(s for s in self.cells[ci] if origin is None or s.origin == origin)
        return out

    def fqns_by_cell(self, origin: str | None = None) -> dict[int, set[str]]:
        out: dict[int, set[str]] = defaultdict(set)
        for site in self.sites(origin):
            out[site.location[0]].update(f for f in site.callee_fqns if f != UNRESOLVED)
        return dict(out)

    def pairs(self, origin: str = DIRECT) -> set[tuple[int, int, str]]:
        return {(s.location[0], s.location[1], f) for s in self.sites(origin) for f in s.callee_fqns}

    def normalized(self) -> CallSiteReport:
        out: dict[int, list[CallSite]] = {}
        for ci, sites in self.cells.items():
            uniq = {(s.location, s.callee_fqns, s.origin): s for s in sites}
            out[ci] = [uniq[k] for k in sorted(uniq)]
        return CallSiteReport({ci: out[ci] for ci in sorted(out) if out[ci]})

    def to_json(self) -> dict:
        doc: dict = {"cells": _nest(self.sites(DIRECT))}
        transitive = self.sites(TRANSITIVE)
        if transitive:
            doc["transitive"] = _nest(transitive)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"


def _nest(sites: list[CallSite]) -> dict:
    out: dict[str, dict[str, set[str]]] = {}
    for s in sites:
        ci, line = s.location
        out.setdefault(str(ci), {}).setdefault(str(line), set()).update(s.callee_fqns)
    return {ci: {ln: sorted(v) for ln, v in lines.items()} for ci, lines in out.items()}


def _all_calls(ir: ModuleIR) -> list[ast.Call]:
    return [n for n in ast.walk(ir.tree) if isinstance(n, ast.Call)]


def extract_callsites(ir: ModuleIR, eag: ExtendedAssignmentGraph, imports: ImportTable | None,
                      stubs: TypeStubDB | None, line_map: CellLineMap) -> CallSiteReport:
    """One CallSite per call expression, located by (code cell, cell line)."""
    lines = ir.script.lines
    cells: dict[int, list[CallSite]] = defaultdict(list)
    for node in _all_calls(ir):
        key = call_key(node)
        fqns = eag.call_fqns.get(key) or {UNRESOLVED}
        if len(fqns) > 1:
            fqns = fqns - {UNRESOLVED} or fqns
        ci, cl = line_map.location(node.lineno)
        snippet = lines[node.lineno - 1].strip() if node.lineno <= len(lines) else ""
        cells[ci].append(CallSite((ci, cl), tuple(fqns), DIRECT, key, snippet))
    return CallSiteReport(dict(cells)).normalized()


def _scope_calls(ir: ModuleIR) -> dict[Scope, list[ast.Call]]:
    """Calls executed when a function runs: its own nodes plus nested comprehensions/classes."""
    out: dict[Scope, list[ast.Call]] = defaultdict(list)
    for scope in ir.root.walk():
        owner = scope
        while owner.kind in ("comprehension", "class") and owner.parent is not None:
            owner = owner.parent
        out[owner].extend(n for n in own_nodes(scope) if isinstance(n, ast.Call))
    return out


def attribute_transitive(report: CallSiteReport, eag: ExtendedAssignmentGraph,
                         ir: ModuleIR) -> CallSiteReport:
    """Add the callsites reachable through user functions to the calling cell."""
    graph = eag.function_calls()
    body_calls = _scope_calls(ir)
    cells: dict[int, list[CallSite]] = {ci: list(sites) for ci, sites in report.cells.items()}
    for site in report.sites(DIRECT):
        roots = eag.call_targets.get(site.key, set())
        if not roots:
            continue
        seen: set[Scope] = set()
        stack = sorted(roots, key=lambda s: s.qualname)
        found: set[str] = set()
        while stack:
            scope = stack.pop()
            if scope in seen:
                continue
            seen.add(scope)
            for call in body_calls.get(scope, ()):
                found |= eag.call_fqns.get(call_key(call), set())
            stack.extend(sorted(graph.get(scope, ()), key=lambda s: s.qualname))
        found.discard(UNRESOLVED)
        if found:
            cells.setdefault(site.location[0], []).append(
                CallSite(site.location, tuple(found), TRANSITIVE, site.key, site.snippet))
    return CallSiteReport(cells).normalized()


# -- scoring


@dataclass(frozen=True)
class PrecisionRecall:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return 1.0 if self.tp + self.fp == 0 else self.tp / (self.tp + self.fp)

    @property
    def recall(self) -> float:
        return 1.0 if self.tp + self.fn == 0 else self.tp / (self.tp + self.fn)

    @property
    def sound(self) -> bool:
        return self.fn == 0

    @property
    def complete(self) -> bool:
        return self.fp == 0

    def to_json(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn,
                "precision": round(self.precision, 6), "recall": round(self.recall, 6)}


def pairs_from_json(doc, key: str = "cells") -> set[tuple[int, int, str]]:
    """Validate a report/truth document and flatten it to (cell, line, fqn) triples."""
    if not isinstance(doc, dict) or not isinstance(doc.get(key), dict):
        raise TruthFormatError(f"expected an object with a {key!r} map")
    out = set()
    for ci, lines in doc[key].items():
        if not isinstance(lines, dict):
            raise TruthFormatError(f"cell {ci}: expected a map of line -> fqns")
        for line, fqns in lines.items():
            try:
                loc = (int(ci), int(line))
            except ValueError:
                raise TruthFormatError(f"non-integer location {ci}:{line}") from None
            if not isinstance(fqns, list) or not all(isinstance(f, str) and f for f in fqns):
                raise TruthFormatError(f"cell {ci} line {line}: expected a list of fqn strings")
            out.update((loc[0], loc[1], f) for f in fqns)
    return out


def load_truth(path: str | Path) -> set[tuple[int, int, str]]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise TruthFormatError(f"{path}: invalid JSON ({exc})") from None
    return pairs_from_json(doc)


def score(found: CallSiteReport | dict | set, truth: dict | set) -> PrecisionRecall:
    """Match (location, fqn) pairs exactly; ``<unresolved>`` is never a hit."""
    if isinstance(found, CallSiteReport):
        got = found.pairs(DIRECT)
    elif isinstance(found, dict):
        got = pairs_from_json(found)
    else:
        got = set(found)
    want = pairs_from_json(truth) if isinstance(truth, dict) else set(truth)
    hits = {p for p in got & want if p[2] != UNRESOLVED}
    return PrecisionRecall(len(hits), len(got - hits), len(want - hits))


def average(results: list[PrecisionRecall]) -> tuple[float, float]:
    """Per-notebook mean of precision and recall."""
    if not results:
        return 1.0, 1.0
    return (sum(r.precision for r in results) / len(results),
            sum(r.recall for r in results) / len(results))
