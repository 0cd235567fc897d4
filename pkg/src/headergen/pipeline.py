"""End-to-end analysis of one notebook."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .annotate import AnnotationSet, apply, build_annotations
from .callgraph import CallSiteReport, attribute_transitive, extract_callsites
from .classify import (CellClassification, PatternHit, TaxonomyDB, classify_cell, default_taxonomy_path,
                       import_cells, load_taxonomy, match_patterns)
from .eag import ExtendedAssignmentGraph, build_eag
from .frontend import ImportTable, ModuleIR, build_duc, build_import_table, parse
from .notebook import CompositeScript, NotebookDoc, flatten
from .stubs import TypeStubDB, default_stub_dir, load_docstrings, load_stub_db


@dataclass
class Resources:
    stubs: TypeStubDB
    taxonomy: TaxonomyDB
    docstrings: dict[str, str] = field(default_factory=dict)

    @classmethod
    def load(cls, stubs_dir=None, taxonomy_path=None) -> Resources:
        stubs_dir = stubs_dir or default_stub_dir()
        return cls(load_stub_db(stubs_dir), load_taxonomy(taxonomy_path or default_taxonomy_path()),
                   load_docstrings(stubs_dir))


@dataclass
class Analysis:
    script: CompositeScript
    ir: ModuleIR
    imports: ImportTable
    eag: ExtendedAssignmentGraph
    report: CallSiteReport
    hits: list[PatternHit]
    classification: CellClassification
    seconds: float = 0.0

    def annotations(self, docstrings: dict[str, str] | None = None) -> AnnotationSet:
        return build_annotations(self.classification, docstrings)


def analyze(nb: NotebookDoc, res: Resources) -> Analysis:
    """Raises AnalysisSyntaxError for cells that do not parse."""
    start = time.perf_counter()
    script = flatten(nb)
    ir = parse(script)
    duc = build_duc(ir)
    imports = build_import_table(ir)
    eag = build_eag(ir, duc, imports, res.stubs)
    report = extract_callsites(ir, eag, imports, res.stubs, script.map)
    report = attribute_transitive(report, eag, ir)
    hits = match_patterns(ir, eag, res.stubs, res.taxonomy)
    classification = classify_cell(report, hits, res.taxonomy, import_cells(ir))
    return Analysis(script, ir, imports, eag, report, hits, classification, time.perf_counter() - start)


def annotate(nb: NotebookDoc, res: Resources) -> tuple[NotebookDoc, Analysis]:
    analysis = analyze(nb, res)
    return apply(nb, analysis.annotations(res.docstrings)), analysis
