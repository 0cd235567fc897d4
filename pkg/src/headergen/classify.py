"""Map callsites and dataframe usage patterns onto the ML-operation taxonomy."""

from __future__ import annotations

import ast
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .callgraph import CallSiteReport
from .eag import UNRESOLVED, ExtendedAssignmentGraph, ExternalInstance
from .frontend import ModuleIR
from .notebook import CellLineMap
from .stubs import TypeStubDB

DATAFRAME = "pandas.core.frame.DataFrame"
LIBRARY_LOADING = "Library Loading"
PATTERN_LIBRARY = "dataframe patterns"

Location = tuple[int, int]


class TaxonomyError(ValueError):
    pass


@dataclass(frozen=True)
class Taxonomy:
    categories: dict[str, tuple[str, ...]]

    def __post_init__(self):
        seen: dict[str, str] = {}
        for top, subs in self.categories.items():
            if not subs:
                raise TaxonomyError(f"category {top!r} has no sub-categories")
            for sub in subs:
                if sub in seen or sub in self.categories:
                    raise TaxonomyError(f"sub-category {sub!r} is not unique")
                seen[sub] = top
        object.__setattr__(self, "_parent", seen)

    @property
    def tops(self) -> list[str]:
        return list(self.categories)

    @property
    def subs(self) -> list[str]:
        return [s for subs in self.categories.values() for s in subs]

    def parent(self, sub: str) -> str:
        try:
            return self._parent[sub]
        except KeyError:
            raise TaxonomyError(f"unknown sub-category {sub!r}") from None


@dataclass
class TaxonomyDB:
    taxonomy: Taxonomy
    rules: dict[str, frozenset[str]]
    table2_mapping: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.exact: dict[str, frozenset[str]] = {}
        self.prefixes: dict[str, frozenset[str]] = {}
        for key, subs in self.rules.items():
            if not subs:
                raise TaxonomyError(f"rule {key!r} maps to no category")
            for sub in subs:
                self.taxonomy.parent(sub)
            if key.endswith(".*"):
                self.prefixes[key[:-1]] = frozenset(subs)
            else:
                self.exact[key] = frozenset(subs)
        for label in ("Feature Engineering", "Data Preparation"):
            if label not in self.table2_mapping:
                raise TaxonomyError(f"table2_mapping lacks {label!r}")
        for sub in self.table2_mapping.values():
            self.taxonomy.parent(sub)

    def classify(self, fqn: str) -> frozenset[str]:
        return classify_callsite(self, fqn)


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise TaxonomyError(f"duplicate key {k!r}")
        out[k] = v
    return out


def parse_taxonomy(data) -> TaxonomyDB:
    if not isinstance(data, dict) or set(data) - {"categories", "rules", "table2_mapping"}:
        raise TaxonomyError("expected keys categories, rules, table2_mapping")
    cats = data.get("categories")
    rules = data.get("rules", {})
    mapping = data.get("table2_mapping", {})
    if not isinstance(cats, dict) or not all(isinstance(v, list) for v in cats.values()):
        raise TaxonomyError("categories must map top-level names to lists")
    if not isinstance(rules, dict) or not all(isinstance(v, list) for v in rules.values()):
        raise TaxonomyError("rules must map fqns or prefixes to lists")
    if not isinstance(mapping, dict):
        raise TaxonomyError("table2_mapping must be an object")
    tax = Taxonomy({k: tuple(v) for k, v in cats.items()})
    return TaxonomyDB(tax, {k: frozenset(v) for k, v in rules.items()}, dict(mapping))


def load_taxonomy(path: str | Path) -> TaxonomyDB:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"), object_pairs_hook=_reject_duplicates)
    except OSError as exc:
        raise TaxonomyError(f"{path}: {exc.strerror}") from None
    except ValueError as exc:
        if isinstance(exc, TaxonomyError):
            raise TaxonomyError(f"{path}: {exc}") from None
        raise TaxonomyError(f"{path}: invalid JSON ({exc})") from None
    return parse_taxonomy(data)


def default_taxonomy_path() -> Path:
    return Path(__file__).parent / "data" / "taxonomy.json"


def classify_callsite(db: TaxonomyDB, fqn: str) -> frozenset[str]:
    """Exact rule, else the longest matching ``prefix.*`` rule, else nothing."""
    if fqn in db.exact:
        return db.exact[fqn]
    best = None
    for prefix in db.prefixes:
        if fqn.startswith(prefix) and (best is None or len(prefix) > len(best)):
            best = prefix
    return db.prefixes[best] if best is not None else frozenset()


# -- dataframe usage patterns


@dataclass(frozen=True, order=True)
class PatternHit:
    location: Location
    pattern_id: int
    categories: frozenset[str] = field(compare=False)
    snippet: str = field(default="", compare=False)


def _is_dataframe(eag: ExtendedAssignmentGraph, name: ast.Name) -> bool:
    return any(isinstance(v, ExternalInstance) and v.fqn == DATAFRAME for v in eag.evaluate(name))


def _column_base(node: ast.AST) -> ast.Name | None:
    """``df.x`` or ``df['x']`` -> the ``df`` Name node."""
    if isinstance(node, ast.Attribute) and isinstance(node.value, ast.Name):
        return node.value
    if isinstance(node, ast.Subscript) and isinstance(node.value, ast.Name) \
            and isinstance(node.slice, ast.Constant) and isinstance(node.slice.value, str):
        return node.value
    return None


def _is_scalar(node: ast.AST) -> bool:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        node = node.operand
    return isinstance(node, ast.Constant)


def _is_mask(node: ast.AST) -> bool:
    if isinstance(node, (ast.Compare, ast.BoolOp)):
        return True
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.Not, ast.Invert)):
        return True
    return isinstance(node, ast.BinOp) and isinstance(node.op, (ast.BitAnd, ast.BitOr))


def _column_list(node: ast.AST) -> bool:
    return isinstance(node, ast.List) and bool(node.elts) and all(
        isinstance(e, ast.Constant) and isinstance(e.value, str) for e in node.elts)


def _list_slice(node: ast.AST, eag) -> bool:
    """A literal column list, or a name bound to a list (e.g. built by a comprehension)."""
    if _column_list(node):
        return True
    if not isinstance(node, ast.Name):
        return False
    values = eag.evaluate(node)
    return bool(values) and all(getattr(v, "type_fqn", getattr(v, "fqn", None)) == "builtins.list"
                                for v in values)


def _frame_or_column(node: ast.AST) -> ast.Name | None:
    return node if isinstance(node, ast.Name) else _column_base(node)


def _match_assign(node: ast.Assign, eag) -> list[tuple[int, ast.Name]]:
    out = []
    value = node.value
    for target in node.targets:
        base = _column_base(target)
        if base is not None and isinstance(value, ast.BinOp):
            operands = [_column_base(value.left), _column_base(value.right)]
            if any(b is not None and _is_dataframe(eag, b) for b in operands):
                out.append((1, base))
                continue
        if base is not None and _is_scalar(value):
            out.append((2, base))
            continue
        if isinstance(target, ast.Subscript) and _is_mask(target.slice):
            base = _column_base(target.value)
            if base is not None:
                out.append((3, base))
    # column selection anywhere in the value, e.g. ``X = df[cols].values``
    for sub in ast.walk(value):
        if isinstance(sub, ast.Subscript) and _list_slice(sub.slice, eag):
            base = _frame_or_column(sub.value)
            if base is not None:
                out.append((4, base))
    return out


def _match_print(node: ast.Call) -> ast.Name | None:
    if not (isinstance(node.func, ast.Name) and node.func.id in ("print", "display")):
        return None
    for arg in node.args:
        if isinstance(arg, ast.Subscript) and isinstance(arg.slice, ast.Slice):
            base = _frame_or_column(arg.value)
            if base is not None:
                return base
    return None


def _pattern_categories(db: TaxonomyDB) -> dict[int, frozenset[str]]:
    fe = db.table2_mapping["Feature Engineering"]
    prep = db.table2_mapping["Data Preparation"]
    return {1: frozenset({fe}), 2: frozenset({fe, prep}), 3: frozenset({fe, prep}),
            4: frozenset({"Feature Selection"}), 5: frozenset({"Exploratory Data Analysis"})}


def match_patterns(ir: ModuleIR, eag: ExtendedAssignmentGraph, stubs: TypeStubDB,
                   taxonomy: TaxonomyDB | None = None) -> list[PatternHit]:
    """Dataframe usage patterns, each guarded by the base variable's inferred type."""
    if not stubs.is_class(DATAFRAME):
        return []
    cats = _pattern_categories(taxonomy or load_taxonomy(default_taxonomy_path()))
    lines = ir.script.lines
    hits = set()
    for node in ast.walk(ir.tree):
        found: list[tuple[int, ast.Name]] = []
        if isinstance(node, ast.Assign):
            found = _match_assign(node, eag)
        elif isinstance(node, ast.Call):
            base = _match_print(node)
            if base is not None:
                found = [(5, base)]
        for pid, base in found:
            if _is_dataframe(eag, base):
                loc = ir.script.map.location(node.lineno)
                hits.add(PatternHit(loc, pid, cats[pid], lines[node.lineno - 1].strip()))
    return sorted(hits)


# -- per-cell classification


@dataclass
class CellClassification:
    taxonomy: Taxonomy
    subs: dict[int, frozenset[str]] = field(default_factory=dict)
    # code_index -> sub-category -> library -> entries (fqns, imported modules or pattern snippets)
    evidence: dict[int, dict[str, dict[str, set[str]]]] = field(default_factory=dict)

    def tops(self, code_index: int) -> list[str]:
        have = {self.taxonomy.parent(s) for s in self.subs.get(code_index, ())}
        return [t for t in self.taxonomy.tops if t in have]

    def cells_for(self, sub: str) -> list[int]:
        return sorted(ci for ci, subs in self.subs.items() if sub in subs)

    def to_json(self) -> dict:
        return {str(ci): {"subs": sorted(self.subs[ci]), "tops": self.tops(ci)}
                for ci in sorted(self.subs)}


def library_of(fqn: str) -> str:
    return fqn.split(".", 1)[0]


def import_cells(ir: ModuleIR, line_map: CellLineMap | None = None) -> dict[int, set[str]]:
    """code_index -> top-level modules imported in that cell."""
    line_map = line_map or ir.script.map
    out: dict[int, set[str]] = defaultdict(set)
    for node in ast.walk(ir.tree):
        if isinstance(node, ast.Import):
            mods = {a.name.split(".")[0] for a in node.names}
        elif isinstance(node, ast.ImportFrom):
            mods = {(node.module or ".").split(".")[0] if node.level == 0 else "."}
        else:
            continue
        out[line_map.location(node.lineno)[0]].update(mods)
    return dict(out)


def classify_cell(report: CallSiteReport, hits: list[PatternHit], db: TaxonomyDB,
                  imports: dict[int, set[str]] | None = None) -> CellClassification:
    evidence: dict[int, dict[str, dict[str, set[str]]]] = defaultdict(
        lambda: defaultdict(lambda: defaultdict(set)))
    for site in report.sites():
        for fqn in site.callee_fqns:
            if fqn == UNRESOLVED:
                continue
            for sub in classify_callsite(db, fqn):
                evidence[site.location[0]][sub][library_of(fqn)].add(fqn)
    for hit in hits:
        for sub in hit.categories:
            evidence[hit.location[0]][sub][PATTERN_LIBRARY].add(hit.snippet)
    for ci, mods in (imports or {}).items():
        if LIBRARY_LOADING not in db.taxonomy.subs:
            break
        for mod in mods:
            evidence[ci][LIBRARY_LOADING][mod].add(mod)
    subs = {ci: frozenset(per) for ci, per in evidence.items() if per}
    plain = {ci: {s: {lib: set(v) for lib, v in libs.items()} for s, libs in per.items()}
             for ci, per in evidence.items()}
    return CellClassification(db.taxonomy, dict(sorted(subs.items())), plain)
