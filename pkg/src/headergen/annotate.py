"""Index of ML operations, per-cell headers and table of contents.

All three are markdown cells with embedded HTML (``<details>``, named
anchors) so they render in any notebook viewer.  Tool cells carry a
``headergen`` metadata marker and are replaced wholesale on re-annotation.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass, field

from .classify import CellClassification, Taxonomy
from .notebook import MARKER_KEY, NotebookDoc, make_marked_cell, parse_notebook

INDEX_ANCHOR = "headergen-index"
HEADER_LEVEL = "###"


@dataclass
class AnnotationSet:
    index_cell: str | None = None
    header_cells: dict[int, str] = field(default_factory=dict)
    toc_cell: str | None = None
    anchors: dict[int, str] = field(default_factory=dict)
    titles: dict[int, str] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return self.index_cell is None and not self.header_cells and self.toc_cell is None


def slugify(text: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")
    return slug or "cell"


def header_title(classification: CellClassification, code_index: int) -> str:
    return " | ".join(classification.tops(code_index))


def assign_anchors(titles: dict[int, str]) -> dict[int, str]:
    """Unique anchors in cell order; repeats get ``-2``, ``-3``, ..."""
    used: set[str] = {INDEX_ANCHOR}
    out = {}
    for ci in sorted(titles):
        base = slugify(titles[ci])
        anchor, n = base, 1
        while anchor in used:
            n += 1
            anchor = f"{base}-{n}"
        used.add(anchor)
        out[ci] = anchor
    return out


def _code(text: str) -> str:
    return f"<code>{html.escape(text)}</code>"


def _entry(fqn: str, docstrings: dict[str, str] | None) -> str:
    doc = (docstrings or {}).get(fqn)
    if not doc:
        return f"<li>{_code(fqn)}</li>"
    return (f"<li><details><summary>{_code(fqn)}</summary>"
            f"<pre>{html.escape(doc.strip())}</pre></details></li>")


def _library_list(libs: dict[str, set[str]], docstrings) -> list[str]:
    out = ["<ul>"]
    for lib in sorted(libs):
        out.append(f"<li>{html.escape(lib)}<ul>")
        out.extend(_entry(e, docstrings) for e in sorted(libs[lib]))
        out.append("</ul></li>")
    out.append("</ul>")
    return out


def build_index(classification: CellClassification, report=None, taxonomy: Taxonomy | None = None,
                docstrings: dict[str, str] | None = None, anchors: dict[int, str] | None = None) -> str:
    """Nested, collapsible list: top category > sub-category > cell > library > entries."""
    taxonomy = taxonomy or classification.taxonomy
    if anchors is None:
        anchors = assign_anchors({ci: header_title(classification, ci) for ci in classification.subs})
    lines = [f'<a name="{INDEX_ANCHOR}"></a>', "", "## Index of ML operations", ""]
    for top, subs in taxonomy.categories.items():
        if not any(classification.cells_for(s) for s in subs):
            lines.append(f"<p><del>{html.escape(top)}</del></p>")
            continue
        lines.append(f"<details><summary>{html.escape(top)}</summary>")
        lines.append("<ul>")
        for sub in subs:
            cells = classification.cells_for(sub)
            if not cells:
                lines.append(f"<li><del>{html.escape(sub)}</del></li>")
                continue
            lines.append(f"<li><details><summary>{html.escape(sub)}</summary>")
            lines.append("<ul>")
            for ci in cells:
                lines.append(f'<li><details><summary><a href="#{anchors[ci]}">goto cell #{ci}</a>'
                             "</summary>")
                lines.extend(_library_list(classification.evidence[ci][sub], docstrings))
                lines.append("</details></li>")
            lines.append("</ul>")
            lines.append("</details></li>")
        lines.append("</ul>")
        lines.append("</details>")
    return "\n".join(lines) + "\n"


def build_headers(classification: CellClassification, taxonomy: Taxonomy | None = None,
                  docstrings: dict[str, str] | None = None,
                  anchors: dict[int, str] | None = None) -> dict[int, str]:
    """One H3 header per classified cell naming every top-level category it touches."""
    titles = {ci: header_title(classification, ci) for ci in classification.subs}
    if anchors is None:
        anchors = assign_anchors(titles)
    out = {}
    for ci in sorted(titles):
        lines = [f'<a name="{anchors[ci]}"></a>', "", f"{HEADER_LEVEL} {titles[ci]}", ""]
        evidence = classification.evidence.get(ci, {})
        libs: dict[str, set[str]] = {}
        for sub in sorted(evidence):
            for lib, entries in evidence[sub].items():
                libs.setdefault(lib, set()).update(entries)
        subs = ", ".join(s for s in (taxonomy or classification.taxonomy).subs if s in evidence)
        lines.append(f"<details><summary>{html.escape(subs)}</summary>")
        lines.extend(_library_list(libs, docstrings))
        lines.append("</details>")
        lines.append("")
        lines.append(f'<a href="#{INDEX_ANCHOR}">back to top</a>')
        out[ci] = "\n".join(lines) + "\n"
    return out


def build_toc(titles: dict[int, str], anchors: dict[int, str]) -> str | None:
    if not titles:
        return None
    lines = ["## Table of contents", ""]
    for ci in sorted(titles):
        lines.append(f"- [cell #{ci}: {titles[ci]}](#{anchors[ci]})")
    return "\n".join(lines) + "\n"


def build_annotations(classification: CellClassification, docstrings: dict[str, str] | None = None,
                      taxonomy: Taxonomy | None = None) -> AnnotationSet:
    titles = {ci: header_title(classification, ci) for ci in classification.subs}
    anchors = assign_anchors(titles)
    return AnnotationSet(
        index_cell=build_index(classification, None, taxonomy, docstrings, anchors),
        header_cells=build_headers(classification, taxonomy, docstrings, anchors),
        toc_cell=build_toc(titles, anchors),
        anchors=anchors,
        titles=titles,
    )


def strip_annotations(nb: NotebookDoc) -> NotebookDoc:
    kept = [c for c in nb.to_json()["cells"] if MARKER_KEY not in (c.get("metadata") or {})]
    doc = nb.to_json()
    doc["cells"] = kept
    return parse_notebook(doc)


def apply(nb: NotebookDoc, ann: AnnotationSet) -> NotebookDoc:
    """Drop earlier tool cells, then insert index, TOC and headers."""
    base = strip_annotations(nb)
    with_ids = (base.nbformat_major, base.nbformat_minor) >= (4, 5)

    def marked(kind: str, source: str, cell_id: str) -> dict:
        return make_marked_cell(kind, source, cell_id if with_ids else None)

    doc = base.to_json()
    cells = []
    if ann.index_cell is not None:
        cells.append(marked("index", ann.index_cell, "headergen-index"))
    if ann.toc_cell is not None:
        cells.append(marked("toc", ann.toc_cell, "headergen-toc"))
    for cell, raw in zip(base.cells, doc["cells"]):
        if cell.kind == "code" and cell.code_index in ann.header_cells:
            cells.append(marked("header", ann.header_cells[cell.code_index],
                                f"headergen-header-{cell.code_index}"))
        cells.append(raw)
    doc["cells"] = cells
    return parse_notebook(doc)
