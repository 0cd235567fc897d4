"""Reading, flattening and writing nbformat-4 notebooks."""

from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__

MARKER_KEY = "headergen"
PLACEHOLDER = "pass"

# cell magics whose body is still Python source
_PYTHON_CELL_MAGICS = {"time", "timeit", "capture", "prun", "debug"}
_SHELL_ASSIGN = re.compile(r"^\s*[\w.,\s()]+=\s*[!%]")


class NotebookError(ValueError):
    """Base class for notebook input errors."""


class MalformedNotebook(NotebookError):
    pass


class UnsupportedVersion(NotebookError):
    pass


@dataclass
class Cell:
    kind: str
    source: str
    index: int
    code_index: int | None = None
    annotation_marker: dict | None = None
    raw: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def lines(self) -> list[str]:
        return self.source.splitlines()


@dataclass
class NotebookDoc:
    nbformat_major: int
    cells: list[Cell]
    notebook_metadata: dict = field(default_factory=dict)
    nbformat_minor: int = 0

    @property
    def code_cells(self) -> list[Cell]:
        return [c for c in self.cells if c.kind == "code"]

    def to_json(self) -> dict:
        return {
            "cells": [_cell_json(c) for c in self.cells],
            "metadata": self.notebook_metadata,
            "nbformat": self.nbformat_major,
            "nbformat_minor": self.nbformat_minor,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NotebookDoc):
            return NotImplemented
        return _normalized(self.to_json()) == _normalized(other.to_json())


def _normalized(doc: dict) -> str:
    doc = copy.deepcopy(doc)
    for cell in doc["cells"]:
        cell["source"] = _join_source(cell.get("source", ""))
    return json.dumps(doc, sort_keys=True)


def _join_source(source: Any) -> str:
    if isinstance(source, list):
        return "".join(source)
    return source


def _split_source(text: str) -> list[str]:
    # nbformat's multiline-string convention
    return text.splitlines(keepends=True)


def _cell_json(cell: Cell) -> dict:
    raw = dict(cell.raw)
    raw["cell_type"] = cell.kind
    if _join_source(raw.get("source", "")) != cell.source:
        raw["source"] = _split_source(cell.source)
    raw.setdefault("metadata", {})
    if cell.kind == "code":
        raw.setdefault("outputs", [])
        raw.setdefault("execution_count", None)
    return raw


def parse_notebook(data: dict) -> NotebookDoc:
    """Build a :class:`NotebookDoc` from already-decoded notebook JSON."""
    if not isinstance(data, dict):
        raise MalformedNotebook("notebook JSON must be an object")
    if "nbformat" not in data:
        raise MalformedNotebook("missing required field 'nbformat'")
    major = data["nbformat"]
    if not isinstance(major, int):
        raise MalformedNotebook(f"nbformat must be an integer, got {major!r}")
    if major != 4:
        raise UnsupportedVersion(f"nbformat {major} is not supported (only 4)")
    raw_cells = data.get("cells")
    if not isinstance(raw_cells, list):
        raise MalformedNotebook("missing required field 'cells'")

    cells = []
    code_index = 0
    for i, raw in enumerate(raw_cells):
        if not isinstance(raw, dict) or "cell_type" not in raw:
            raise MalformedNotebook(f"cell {i} has no cell_type")
        kind = raw["cell_type"]
        if kind not in ("code", "markdown", "raw"):
            raise MalformedNotebook(f"cell {i} has unknown cell_type {kind!r}")
        source = raw.get("source", "")
        if isinstance(source, list) and all(isinstance(s, str) for s in source):
            source = "".join(source)
        elif not isinstance(source, str):
            raise MalformedNotebook(f"cell {i} has a malformed source")
        ci = None
        if kind == "code":
            code_index += 1
            ci = code_index
        marker = (raw.get("metadata") or {}).get(MARKER_KEY)
        cells.append(Cell(kind, source, i, ci, marker, raw))
    return NotebookDoc(
        nbformat_major=major,
        cells=cells,
        notebook_metadata=data.get("metadata", {}),
        nbformat_minor=data.get("nbformat_minor", 0),
    )


def load_notebook(path: str | Path) -> NotebookDoc:
    blob = Path(path).read_bytes()
    try:
        text = blob.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedNotebook(f"{path}: not valid UTF-8 ({exc})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedNotebook(f"{path}: invalid JSON ({exc})") from None
    return parse_notebook(data)


def dumps_notebook(nb: NotebookDoc) -> str:
    return json.dumps(nb.to_json(), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def write_notebook(nb: NotebookDoc, path: str | Path) -> None:
    """Write *nb* as nbformat-4 JSON. Raises ``OSError`` on I/O failure."""
    Path(path).write_text(dumps_notebook(nb), encoding="utf-8")


def make_marked_cell(kind: str, source: str, cell_id: str | None = None) -> dict:
    """Raw JSON for a markdown cell owned by this tool."""
    raw = {
        "cell_type": "markdown",
        "metadata": {MARKER_KEY: {"kind": kind, "version": __version__}},
        "source": _split_source(source),
    }
    if cell_id is not None:
        raw["id"] = cell_id
    return raw


@dataclass(frozen=True)
class CellLineMap:
    """Bijection between composite-script lines and (code_index, cell_line)."""

    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_fwd", {s: (c, l) for s, c, l in self.entries})
        object.__setattr__(self, "_inv", {(c, l): s for s, c, l in self.entries})

    def location(self, script_line: int) -> tuple[int, int]:
        return self._fwd[script_line]

    def script_line(self, code_index: int, cell_line: int) -> int:
        return self._inv[(code_index, cell_line)]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CompositeScript:
    text: str
    map: CellLineMap
    code_indices: tuple[int, ...] = ()

    @property
    def lines(self) -> list[str]:
        return self.text.splitlines()


def sanitize_cell(source: str) -> list[str]:
    """Replace notebook-shell lines with a placeholder, keeping line count."""
    lines = source.splitlines()
    if not lines:
        return []
    first = lines[0].strip()
    if first.startswith("%%"):
        magic = first[2:].split(maxsplit=1)[0] if len(first) > 2 else ""
        if magic not in _PYTHON_CELL_MAGICS:
            return [PLACEHOLDER] * len(lines)
    out = []
    for line in lines:
        stripped = line.lstrip()
        if stripped[:1] in ("%", "!") or _SHELL_ASSIGN.match(line):
            indent = line[: len(line) - len(stripped)]
            out.append(indent + PLACEHOLDER)
        else:
            out.append(line)
    return out


def flatten(nb: NotebookDoc) -> CompositeScript:
    lines: list[str] = []
    entries = []
    indices = []
    for cell in nb.code_cells:
        indices.append(cell.code_index)
        for n, line in enumerate(sanitize_cell(cell.source), start=1):
            lines.append(line)
            entries.append((len(lines), cell.code_index, n))
    text = "\n".join(lines) + ("\n" if lines else "")
    return CompositeScript(text, CellLineMap(tuple(entries)), tuple(indices))
