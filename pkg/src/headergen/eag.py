"""The extended assignment graph: flow-sensitive points-to facts.

Program variables are keyed by their definition site (a
:class:`~headergen.frontend.Definition`), so two assignments to ``model`` are
two nodes.  Besides variables the graph has nodes for object fields, function
returns, generator yields and container elements.  Every node maps to a set of
abstract values.  Values for external libraries are produced from the stub
database, so no library source is ever analyzed.

The solver re-walks every scope body until no node gains a value.  Analysis is
context-insensitive: one set of parameter nodes per function.
"""

from __future__ import annotations

import ast
import builtins as _py_builtins
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Union

from .frontend import (MODULE_NAME, Definition, DefUseChains, ImportTable, LocationMap,
                       ModuleIR, Scope, location_map, own_nodes)
from .stubs import FunctionStub, TypeStubDB, split_type

MAX_ROUNDS = 64
MAX_CHAIN_DEPTH = 32
UNRESOLVED = "<unresolved>"

_CONTAINERS = {"builtins.list", "builtins.tuple", "builtins.set", "builtins.frozenset",
               "builtins.dict", "builtins.generator", "builtins.map", "builtins.filter",
               "builtins.dict_keys", "builtins.dict_values", "builtins.list_iterator",
               "builtins.reversed"}
# iterating these yields tuples built from their element slots
_ZIPLIKE = {"builtins.zip", "builtins.enumerate", "builtins.dict_items"}
_SEQ_BUILDERS = {"builtins.list", "builtins.tuple", "builtins.set", "builtins.frozenset",
                 "builtins.sorted", "builtins.reversed"}
_CONTAINER_MUTATORS = {"append", "insert", "add", "extend", "update", "setdefault"}


# -- values ----------------------------------------------------------------


class Value:
    kind = "unknown"
    fqn: str | None = None

    def sort_key(self) -> tuple:
        return (self.kind, self.fqn or "", repr(self))


@dataclass(frozen=True)
class Unknown(Value):
    kind = "unknown"

    def __repr__(self):
        return "<unknown>"


UNKNOWN = Unknown()


@dataclass(frozen=True)
class FunctionValue(Value):
    scope: Scope
    kind = "user_function"

    @property
    def fqn(self) -> str:
        return self.scope.fqn

    def __repr__(self):
        return f"function {self.fqn}"


@dataclass(frozen=True)
class ClassValue(Value):
    scope: Scope
    kind = "user_class"

    @property
    def fqn(self) -> str:
        return self.scope.fqn

    def __repr__(self):
        return f"class {self.fqn}"


@dataclass(frozen=True)
class InstanceValue(Value):
    cls: ClassValue
    kind = "user_instance"

    @property
    def fqn(self) -> str:
        return self.cls.fqn

    def __repr__(self):
        return f"instance {self.fqn}"


@dataclass(frozen=True)
class BoundMethod(Value):
    func: FunctionValue
    receiver: Value
    kind = "user_function"

    @property
    def fqn(self) -> str:
        return self.func.fqn

    def __repr__(self):
        return f"bound {self.fqn}"


@dataclass(frozen=True)
class SuperValue(Value):
    cls: ClassValue
    receiver: Value
    kind = "super"

    def __repr__(self):
        return f"super({self.cls.fqn})"


@dataclass(frozen=True)
class GeneratorValue(Value):
    func: FunctionValue
    kind = "generator"

    @property
    def fqn(self) -> str:
        return "builtins.generator"

    def __repr__(self):
        return f"generator of {self.func.fqn}"


@dataclass(frozen=True)
class ContainerValue(Value):
    """A literal or comprehension built in user code; elements are smashed."""

    type_fqn: str
    site: tuple
    kind = "container"

    @property
    def fqn(self) -> str:
        return self.type_fqn

    def __repr__(self):
        return f"{self.type_fqn}@{self.site[0]}:{self.site[1]}"


@dataclass(frozen=True)
class ExternalRef(Value):
    """An imported module or a dotted path the stub DB does not declare."""

    path: str
    kind = "external_module"

    @property
    def fqn(self) -> str:
        return self.path

    def __repr__(self):
        return f"ref {self.path}"


@dataclass(frozen=True)
class ExternalFunction(Value):
    name: str
    kind = "external_function"

    @property
    def fqn(self) -> str:
        return self.name

    def __repr__(self):
        return f"extfunc {self.name}"


@dataclass(frozen=True)
class ExternalClass(Value):
    name: str
    kind = "external_class"

    @property
    def fqn(self) -> str:
        return self.name

    def __repr__(self):
        return f"extclass {self.name}"


@dataclass(frozen=True)
class ExternalInstance(Value):
    """An object of a library type.

    ``type`` is the declared type string.  For builtin containers the element
    types are carried as value sets in ``elems``.
    """

    type: str
    elems: tuple = ()
    kind = "external_type"

    @property
    def fqn(self) -> str:
        return split_type(self.type)[0]

    def __repr__(self):
        if self.elems:
            inner = ", ".join("|".join(sorted(map(repr, e))) for e in self.elems)
            return f"{self.fqn}[{inner}]"
        return self.type


@dataclass(frozen=True)
class ExternalMethod(Value):
    owner: str
    name: str
    receiver: Value | None = None
    stub_key: str | None = None
    kind = "external_function"

    @property
    def fqn(self) -> str:
        return f"{self.owner}.{self.name}"

    def __repr__(self):
        return f"method {self.fqn}"


# -- nodes -----------------------------------------------------------------


@dataclass(frozen=True)
class FieldNode:
    owner: Value
    attr: str


@dataclass(frozen=True)
class ReturnNode:
    scope: Scope


@dataclass(frozen=True)
class YieldNode:
    scope: Scope


@dataclass(frozen=True)
class ElementNode:
    site: tuple
    part: str = "elts"  # elts | keys | pos<i> for fixed-length tuples


Node = Union[Definition, FieldNode, ReturnNode, YieldNode, ElementNode]
CallKey = tuple[int, int, int, int]


def call_key(node: ast.Call) -> CallKey:
    return (node.lineno, node.col_offset, node.end_lineno, node.end_col_offset)


def sorted_values(values: Iterable[Value]) -> list[Value]:
    return sorted(values, key=lambda v: v.sort_key())


def _decorator_names(node) -> set[str]:
    names = set()
    for dec in getattr(node, "decorator_list", ()):
        if isinstance(dec, ast.Name):
            names.add(dec.id)
        elif isinstance(dec, ast.Attribute):
            names.add(dec.attr)
    return names


def _is_generator(scope: Scope) -> bool:
    if scope.kind != "function":
        return False
    return any(isinstance(n, (ast.Yield, ast.YieldFrom)) for n in own_nodes(scope))


def _params(node) -> list[ast.arg]:
    args = node.args
    return args.posonlyargs + args.args


# -- the graph -------------------------------------------------------------


class ExtendedAssignmentGraph:
    def __init__(self, ir: ModuleIR, duc: DefUseChains, imports: ImportTable, stubs: TypeStubDB):
        self.ir = ir
        self.duc = duc
        self.imports = imports
        self.db = stubs
        self.edges: dict[Node, set[Value]] = defaultdict(set)
        self.call_fqns: dict[CallKey, set[str]] = {}
        self.call_targets: dict[CallKey, set[Scope]] = {}
        self.call_nodes: dict[CallKey, ast.Call] = {}
        self.rounds = 0
        self.converged = False
        self._lmap: LocationMap | None = None
        self._changed = False
        self._scope: Scope = ir.root
        self._bases: dict[ClassValue, list[Value]] = {}
        self._class_of_scope: dict[Scope, ClassValue] = {}
        self._mro_cache: dict[ClassValue, list[Value]] = {}
        self._tuple_len: dict[tuple, int] = {}
        self._functions = [s for s in ir.root.walk() if s.kind == "function"]
        self._lambdas = [s for s in ir.root.walk() if s.kind == "lambda"]
        self._generators = {s for s in self._functions if _is_generator(s)}

    # -- graph primitives

    def add(self, node: Node | None, values: Iterable[Value]):
        if node is None:
            return
        target = self.edges[node]
        before = len(target)
        target.update(values)
        if len(target) != before:
            self._changed = True

    def get(self, node: Node) -> set[Value]:
        return self.edges.get(node, set())

    def values_of(self, definition: Definition) -> set[Value]:
        return set(self.get(definition))

    @property
    def nodes(self) -> list:
        return list(self.edges)

    # -- solving

    def solve(self) -> ExtendedAssignmentGraph:
        self._iterate()
        if self._seed_receivers():
            self._iterate()
        return self

    def _iterate(self):
        while self.rounds < MAX_ROUNDS:
            if not self.propagate():
                self.converged = True
                return
        self.converged = False

    def propagate(self) -> bool:
        """Run one walk over the whole program; return True if anything changed."""
        self._changed = False
        self.rounds += 1
        self.call_fqns = {}
        self.call_targets = {}
        self._mro_cache = {}
        self._scope = self.ir.root
        self.block(self.ir.tree.body)
        for scope in self._functions:
            self._scope = scope
            self.block(scope.node.body)
        for scope in self._lambdas:
            self._scope = scope
            self.add(ReturnNode(scope), self.eval(scope.node.body))
        self._scope = self.ir.root
        return self._changed

    def _seed_receivers(self) -> bool:
        """Bind ``self``/``cls`` of methods that no analyzed call reached."""
        changed = False
        for scope in self._functions:
            parent = scope.parent
            if parent is None or parent.kind != "class":
                continue
            decos = _decorator_names(scope.node)
            params = _params(scope.node)
            if "staticmethod" in decos or not params:
                continue
            d = self._param_def(params[0])
            if d is None or self.get(d):
                continue
            cls = self._class_of_scope.get(parent) or ClassValue(parent)
            self.add(d, {cls if "classmethod" in decos else InstanceValue(cls)})
            changed = True
        return changed

    # -- queries

    def evaluate(self, expr: ast.AST) -> set[Value]:
        saved = self._changed
        out = self.eval(expr)
        self._changed = saved
        return out

    def points_to(self, name: str, line: int) -> set[Value]:
        if self._lmap is None:
            self._lmap = location_map(self.duc)
        defs = self._lmap.governing(name, line)
        if not defs:
            defs = frozenset(d for d in self.duc.chains if d.name == name and d.line == line)
        out: set[Value] = set()
        for d in defs:
            out |= self.get(d)
        return out or {UNKNOWN}

    def function_calls(self) -> dict[Scope, set[Scope]]:
        """User-function call graph: caller scope -> callee function scopes."""
        owner = self._call_owners()
        graph: dict[Scope, set[Scope]] = defaultdict(set)
        for key, targets in self.call_targets.items():
            graph[owner.get(key, self.ir.root)].update(targets)
        return dict(graph)

    def _call_owners(self) -> dict[CallKey, Scope]:
        out = {}
        for scope in self.ir.root.walk():
            for node in own_nodes(scope):
                if isinstance(node, ast.Call):
                    out[call_key(node)] = scope
        # comprehensions and classes run inside their enclosing function
        for key, scope in list(out.items()):
            while scope.kind in ("comprehension", "class") and scope.parent is not None:
                scope = scope.parent
            out[key] = scope
        return out

    def to_dot(self) -> str:
        lines = ["digraph eag {", "  rankdir=LR;"]
        ids: dict[str, str] = {}

        def node_id(label: str) -> str:
            if label not in ids:
                ids[label] = f"n{len(ids)}"
                lines.append(f'  {ids[label]} [label="{_dot_escape(label)}"];')
            return ids[label]

        for node in sorted(self.edges, key=_node_label):
            src = node_id(_node_label(node))
            for value in sorted_values(self.edges[node]):
                lines.append(f"  {src} -> {node_id(repr(value))};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- statements

    def block(self, body: list[ast.stmt]):
        for stmt in body:
            self.stmt(stmt)

    def stmt(self, node: ast.stmt):
        method = getattr(self, "stmt_" + type(node).__name__, None)
        if method is not None:
            method(node)
            return
        for child in ast.iter_child_nodes(node):
            if isinstance(child, ast.expr):
                self.eval(child)
            elif isinstance(child, ast.stmt):
                self.stmt(child)
            elif isinstance(child, ast.excepthandler):
                self.stmt_handler(child)

    def stmt_Expr(self, node: ast.Expr):
        self.eval(node.value)

    def stmt_Assign(self, node: ast.Assign):
        values = self.eval(node.value)
        for target in node.targets:
            self.assign(target, values, node.value)

    def stmt_AnnAssign(self, node: ast.AnnAssign):
        if node.value is not None:
            self.assign(node.target, self.eval(node.value), node.value)

    def stmt_AugAssign(self, node: ast.AugAssign):
        rhs = self.eval(node.value)
        target = node.target
        if isinstance(target, ast.Name):
            current = self._load_name(target)
            self.add(self._def(target), self._binop(current, rhs))
            return
        base = self.eval(target.value)
        if isinstance(target, ast.Subscript):
            self.eval(target.slice)
            for obj in base:
                if isinstance(obj, ContainerValue):
                    self.add(ElementNode(obj.site), rhs)
            return
        for obj in base:
            current = self._attribute(obj, target.attr)
            self._store_attr(obj, target.attr, self._binop(current, rhs))

    def stmt_FunctionDef(self, node):
        for dec in node.decorator_list:
            self.eval(dec)
        scope = self.ir.scope_of[node]
        self._bind_defaults(node)
        self.add(self._def_at(node, node.name), {FunctionValue(scope)})

    stmt_AsyncFunctionDef = stmt_FunctionDef

    def _bind_defaults(self, node):
        args = node.args
        positional = args.posonlyargs + args.args
        for arg, default in zip(positional[len(positional) - len(args.defaults):], args.defaults):
            self.add(self._param_def(arg), self.eval(default))
        for arg, default in zip(args.kwonlyargs, args.kw_defaults):
            if default is not None:
                self.add(self._param_def(arg), self.eval(default))

    def stmt_ClassDef(self, node: ast.ClassDef):
        for dec in node.decorator_list:
            self.eval(dec)
        scope = self.ir.scope_of[node]
        cls = self._class_of_scope.setdefault(scope, ClassValue(scope))
        bases: list[Value] = []
        for base in node.bases:
            bases.extend(sorted_values(self.eval(base)))
        for kw in node.keywords:
            self.eval(kw.value)
        if self._bases.get(cls) != bases:
            self._bases[cls] = bases
            self._mro_cache.pop(cls, None)
            self._changed = True
        outer = self._scope
        self._scope = scope
        self.block(node.body)
        self._scope = outer
        self.add(self._def_at(node, node.name), {cls})

    def stmt_Return(self, node: ast.Return):
        if node.value is None:
            return
        values = self.eval(node.value)
        scope = self._function_scope()
        if scope is not None:
            self.add(ReturnNode(scope), values)

    def stmt_For(self, node: ast.For):
        self.assign(node.target, self.iterate(self.eval(node.iter)))
        self.block(node.body)
        self.block(node.orelse)

    stmt_AsyncFor = stmt_For

    def stmt_With(self, node: ast.With):
        for item in node.items:
            values = self.eval(item.context_expr)
            if item.optional_vars is not None:
                entered = set()
                for v in values:
                    result = self._stub_method_result(v, "__enter__")
                    entered |= result if result is not None else {v}
                self.assign(item.optional_vars, entered)
        self.block(node.body)

    stmt_AsyncWith = stmt_With

    def stmt_Try(self, node: ast.Try):
        self.block(node.body)
        for handler in node.handlers:
            self.stmt_handler(handler)
        self.block(node.orelse)
        self.block(node.finalbody)

    stmt_TryStar = stmt_Try

    def stmt_handler(self, handler: ast.ExceptHandler):
        if handler.type is not None:
            types = self.eval(handler.type)
            if handler.name:
                caught = set()
                for t in self._flatten_types(types):
                    if isinstance(t, ClassValue):
                        caught.add(InstanceValue(t))
                    elif isinstance(t, ExternalClass):
                        caught.add(ExternalInstance(t.name))
                    else:
                        caught.add(UNKNOWN)
                self.add(self._def_at(handler, handler.name), caught or {UNKNOWN})
        self.block(handler.body)

    def _flatten_types(self, values: set[Value]) -> set[Value]:
        out = set()
        for v in values:
            if isinstance(v, ContainerValue):
                out |= self.get(ElementNode(v.site))
            else:
                out.add(v)
        return out

    def stmt_Import(self, node: ast.Import):
        for alias in node.names:
            if alias.asname:
                local, path = alias.asname, alias.name
            else:
                local = path = alias.name.split(".")[0]
            self.add(self._def_at(alias, local), {self._external(path)})

    def stmt_ImportFrom(self, node: ast.ImportFrom):
        base = node.module or ""
        for alias in node.names:
            if alias.name == "*":
                self.add(self._def_at(alias, "*"), {ExternalRef(base)})
                continue
            path = f"{base}.{alias.name}" if base else alias.name
            self.add(self._def_at(alias, alias.asname or alias.name), {self._external(path)})

    def stmt_Delete(self, node: ast.Delete):
        for target in node.targets:
            if not isinstance(target, ast.Name):
                self.eval(target)

    def stmt_Global(self, node):
        pass

    stmt_Nonlocal = stmt_Pass = stmt_Break = stmt_Continue = stmt_Global

    # -- assignment

    def assign(self, target: ast.AST, values: set[Value], value_node: ast.AST | None = None):
        if isinstance(target, ast.Name):
            self.add(self._def(target), values)
        elif isinstance(target, (ast.Tuple, ast.List)):
            elts = target.elts
            starred = any(isinstance(e, ast.Starred) for e in elts)
            if (isinstance(value_node, (ast.Tuple, ast.List)) and not starred
                    and len(value_node.elts) == len(elts)
                    and not any(isinstance(e, ast.Starred) for e in value_node.elts)):
                for t, v in zip(elts, value_node.elts):
                    self.assign(t, self.eval(v), v)
                return
            star = next((i for i, e in enumerate(elts) if isinstance(e, ast.Starred)), None)
            parts, rest = self.unpack(values, len(elts), star)
            for i, t in enumerate(elts):
                if isinstance(t, ast.Starred):
                    site = (t.lineno, t.col_offset)
                    self.add(ElementNode(site), rest)
                    self.assign(t.value, {ContainerValue("builtins.list", site)})
                else:
                    self.assign(t, parts[i])
        elif isinstance(target, ast.Attribute):
            for obj in self.eval(target.value):
                self._store_attr(obj, target.attr, values)
        elif isinstance(target, ast.Subscript):
            keys = self.eval(target.slice)
            for obj in self.eval(target.value):
                if isinstance(obj, ContainerValue):
                    self.add(ElementNode(obj.site), values)
                    if obj.type_fqn == "builtins.dict":
                        self.add(ElementNode(obj.site, "keys"), keys)
        elif isinstance(target, ast.Starred):
            self.assign(target.value, values)

    def _store_attr(self, obj: Value, attr: str, values: set[Value]):
        if isinstance(obj, (InstanceValue, ClassValue, FunctionValue)):
            self.add(FieldNode(obj, attr), values)

    def positions(self, v: Value) -> list[set[Value]] | None:
        """Per-position value sets of a fixed-length sequence, if known."""
        if isinstance(v, ExternalInstance) and v.elems and v.fqn in ("builtins.tuple", "builtins.list"):
            return [set(e) for e in v.elems]
        if isinstance(v, ContainerValue) and v.type_fqn == "builtins.tuple" and v.site in self._tuple_len:
            return [set(self.get(ElementNode(v.site, f"pos{i}"))) for i in range(self._tuple_len[v.site])]
        return None

    def unpack(self, values: set[Value], n: int, star: int | None = None) -> tuple[list[set[Value]], set[Value]]:
        """Split *values* over *n* targets; the target at *star* collects the rest."""
        parts: list[set[Value]] = [set() for _ in range(n)]
        rest: set[Value] = set()
        for v in values:
            pos = self.positions(v)
            if pos is not None and star is None and len(pos) == n:
                for i, e in enumerate(pos):
                    parts[i] |= e
                continue
            if pos is not None and star is not None and len(pos) >= n - 1:
                after = n - 1 - star
                for i in range(star):
                    parts[i] |= pos[i]
                for j in range(after):
                    parts[star + 1 + j] |= pos[len(pos) - after + j]
                for e in pos[star:len(pos) - after]:
                    rest |= e
                continue
            items = self.iterate({v})
            for p in parts:
                p |= items
            rest |= items
        return parts, rest

    def iterate(self, values: set[Value]) -> set[Value]:
        out: set[Value] = set()
        for v in values:
            if isinstance(v, ContainerValue):
                part = "keys" if v.type_fqn == "builtins.dict" else "elts"
                out |= self.get(ElementNode(v.site, part))
            elif isinstance(v, GeneratorValue):
                out |= self.get(YieldNode(v.func.scope))
            elif isinstance(v, ExternalInstance):
                if v.fqn in _ZIPLIKE:
                    out.add(ExternalInstance("builtins.tuple", v.elems))
                elif v.elems:
                    for e in v.elems:
                        out |= e
                else:
                    result = self._stub_method_result(v, "__iter__")
                    out |= result if result is not None else {UNKNOWN}
            elif isinstance(v, InstanceValue):
                it = self._call_method(v, "__iter__")
                nxt = set()
                for obj in it:
                    nxt |= self._call_method(obj, "__next__")
                out |= nxt or {UNKNOWN}
            else:
                out.add(UNKNOWN)
        return out

    def _call_method(self, obj: Value, name: str) -> set[Value]:
        out = set()
        for m in self._attribute(obj, name):
            if isinstance(m, BoundMethod):
                self._bind_call(m.func, [{m.receiver}], {})
                out |= self._result_of(m.func)
        return out

    # -- expressions

    def eval(self, node: ast.AST) -> set[Value]:
        method = getattr(self, "eval_" + type(node).__name__, None)
        if method is not None:
            return method(node)
        for child in ast.iter_child_nodes(node):
            if isinstance(child, ast.expr):
                self.eval(child)
        return {UNKNOWN}

    def eval_Name(self, node: ast.Name) -> set[Value]:
        return self._load_name(node)

    def eval_Constant(self, node: ast.Constant) -> set[Value]:
        return {ExternalInstance("builtins." + type(node.value).__name__)}

    def eval_JoinedStr(self, node: ast.JoinedStr) -> set[Value]:
        for v in node.values:
            self.eval(v)
        return {ExternalInstance("builtins.str")}

    def eval_FormattedValue(self, node: ast.FormattedValue) -> set[Value]:
        self.eval(node.value)
        if node.format_spec is not None:
            self.eval(node.format_spec)
        return {ExternalInstance("builtins.str")}

    def _literal(self, node, type_fqn: str) -> set[Value]:
        site = (node.lineno, node.col_offset)
        fixed = type_fqn == "builtins.tuple" and not any(isinstance(e, ast.Starred) for e in node.elts)
        for i, elt in enumerate(node.elts):
            if isinstance(elt, ast.Starred):
                self.add(ElementNode(site), self.iterate(self.eval(elt.value)))
            else:
                values = self.eval(elt)
                self.add(ElementNode(site), values)
                if fixed:
                    self.add(ElementNode(site, f"pos{i}"), values)
        if fixed:
            self._tuple_len[site] = len(node.elts)
        return {ContainerValue(type_fqn, site)}

    def eval_List(self, node):
        return self._literal(node, "builtins.list")

    def eval_Tuple(self, node):
        return self._literal(node, "builtins.tuple")

    def eval_Set(self, node):
        return self._literal(node, "builtins.set")

    def eval_Dict(self, node: ast.Dict) -> set[Value]:
        site = (node.lineno, node.col_offset)
        for k, v in zip(node.keys, node.values):
            if k is None:
                for obj in self.eval(v):
                    if isinstance(obj, ContainerValue):
                        self.add(ElementNode(site), self.get(ElementNode(obj.site)))
                        self.add(ElementNode(site, "keys"), self.get(ElementNode(obj.site, "keys")))
                continue
            self.add(ElementNode(site, "keys"), self.eval(k))
            self.add(ElementNode(site), self.eval(v))
        return {ContainerValue("builtins.dict", site)}

    def _comprehension(self, node, type_fqn: str) -> set[Value]:
        site = (node.lineno, node.col_offset)
        for gen in node.generators:
            self.assign(gen.target, self.iterate(self.eval(gen.iter)))
            for cond in gen.ifs:
                self.eval(cond)
        if isinstance(node, ast.DictComp):
            self.add(ElementNode(site, "keys"), self.eval(node.key))
            self.add(ElementNode(site), self.eval(node.value))
        else:
            self.add(ElementNode(site), self.eval(node.elt))
        return {ContainerValue(type_fqn, site)}

    def eval_ListComp(self, node):
        return self._comprehension(node, "builtins.list")

    def eval_SetComp(self, node):
        return self._comprehension(node, "builtins.set")

    def eval_DictComp(self, node):
        return self._comprehension(node, "builtins.dict")

    def eval_GeneratorExp(self, node):
        return self._comprehension(node, "builtins.generator")

    def eval_Lambda(self, node: ast.Lambda) -> set[Value]:
        self._bind_defaults(node)
        return {FunctionValue(self.ir.scope_of[node])}

    def eval_NamedExpr(self, node: ast.NamedExpr) -> set[Value]:
        values = self.eval(node.value)
        self.add(self._def(node.target), values)
        return values

    def eval_Starred(self, node: ast.Starred) -> set[Value]:
        return self.eval(node.value)

    def eval_Await(self, node: ast.Await) -> set[Value]:
        return self.eval(node.value)

    def eval_Yield(self, node: ast.Yield) -> set[Value]:
        scope = self._function_scope()
        if node.value is not None:
            values = self.eval(node.value)
            if scope is not None:
                self.add(YieldNode(scope), values)
        return {UNKNOWN}

    def eval_YieldFrom(self, node: ast.YieldFrom) -> set[Value]:
        scope = self._function_scope()
        values = self.iterate(self.eval(node.value))
        if scope is not None:
            self.add(YieldNode(scope), values)
        return {UNKNOWN}

    def eval_IfExp(self, node: ast.IfExp) -> set[Value]:
        self.eval(node.test)
        return self.eval(node.body) | self.eval(node.orelse)

    def eval_BoolOp(self, node: ast.BoolOp) -> set[Value]:
        out = set()
        for v in node.values:
            out |= self.eval(v)
        return out

    def eval_UnaryOp(self, node: ast.UnaryOp) -> set[Value]:
        values = self.eval(node.operand)
        if isinstance(node.op, ast.Not):
            return {ExternalInstance("builtins.bool")}
        return values

    def eval_BinOp(self, node: ast.BinOp) -> set[Value]:
        return self._binop(self.eval(node.left), self.eval(node.right))

    def eval_Compare(self, node: ast.Compare) -> set[Value]:
        operands = [self.eval(node.left)] + [self.eval(c) for c in node.comparators]
        library = set()
        for values in operands:
            library |= {v for v in values if _is_library_value(v)}
        return library or {ExternalInstance("builtins.bool")}

    def _binop(self, left: set[Value], right: set[Value]) -> set[Value]:
        library = {v for v in left | right if _is_library_value(v)}
        if library:
            return library
        for side in (left, right):
            known = {v for v in side if v is not UNKNOWN}
            if known:
                return known
        return {UNKNOWN}

    def eval_Slice(self, node: ast.Slice) -> set[Value]:
        for part in (node.lower, node.upper, node.step):
            if part is not None:
                self.eval(part)
        return {ExternalInstance("builtins.slice")}

    def eval_Attribute(self, node: ast.Attribute) -> set[Value]:
        out = set()
        for obj in self.eval(node.value):
            out |= self._attribute(obj, node.attr)
        return out or {UNKNOWN}

    def eval_Subscript(self, node: ast.Subscript) -> set[Value]:
        objs = self.eval(node.value)
        kinds = self._slice_kinds(node.slice)
        out = set()
        for obj in objs:
            out |= self._subscript(obj, kinds)
        return out or {UNKNOWN}

    # -- names and attributes

    def _load_name(self, node: ast.Name) -> set[Value]:
        defs = self.duc.reaching_at(node)
        out: set[Value] = set()
        for d in defs:
            if d.name == "*" and d.name != node.id:
                for mod in self.get(d):
                    if isinstance(mod, ExternalRef) and node.id in self.db.star_names(mod.path):
                        out |= self._attribute(mod, node.id)
                continue
            out |= self.get(d)
        if not defs:
            out |= self._builtin(node.id)
        return out

    def _builtin(self, name: str) -> set[Value]:
        if not hasattr(_py_builtins, name):
            return {UNKNOWN}
        return {self._external("builtins." + name)}

    def _external(self, path: str) -> Value:
        resolved = self.db.resolve(path)
        if resolved is not None:
            if self.db.is_class(resolved):
                return ExternalClass(resolved)
            return ExternalFunction(resolved)
        return ExternalRef(path)

    def _attribute(self, obj: Value, attr: str, call: bool = False) -> set[Value]:
        if isinstance(obj, ExternalRef):
            if obj.path.count(".") >= MAX_CHAIN_DEPTH:
                return {UNKNOWN}
            return {self._external(f"{obj.path}.{attr}")}
        if isinstance(obj, ExternalInstance):
            return self._external_member(obj, attr, obj.fqn, call)
        if isinstance(obj, ContainerValue):
            return {ExternalMethod(obj.type_fqn, attr, obj,
                                   obj.type_fqn if self.db.is_class(obj.type_fqn) else None)}
        if isinstance(obj, GeneratorValue):
            return {ExternalMethod("builtins.generator", attr, obj)}
        if isinstance(obj, ExternalClass):
            member = self.db.member_type(obj.name, attr)
            if isinstance(member, str):
                return {self._instance_of(member)}
            if member is not None or call:
                return {ExternalMethod(obj.name, attr, None, obj.name if member else None)}
            return {UNKNOWN}
        if isinstance(obj, InstanceValue):
            return self._user_member(obj.cls, attr, obj, call)
        if isinstance(obj, ClassValue):
            return self._user_member(obj, attr, obj, call)
        if isinstance(obj, SuperValue):
            return self._super_member(obj, attr, call)
        if isinstance(obj, FunctionValue):
            return self.get(FieldNode(obj, attr)) or {UNKNOWN}
        return {UNKNOWN}

    def _stub_lookup(self, type_str: str, attr: str):
        for key in (type_str, split_type(type_str)[0]):
            member = self.db.member_type(key, attr)
            if member is not None:
                return key, member
        return None, None

    def _external_member(self, obj: ExternalInstance, attr: str, owner: str, call: bool,
                         receiver: Value | None = None) -> set[Value]:
        key, member = self._stub_lookup(obj.type, attr)
        receiver = obj if receiver is None else receiver
        if isinstance(member, FunctionStub):
            return {ExternalMethod(owner, attr, receiver, key)}
        if isinstance(member, str):
            return {self._instance_of(member)}
        for key in (obj.type, obj.fqn):
            # method aliases are export entries pointing at the real method
            target = self.db.resolve(f"{key}.{attr}")
            if target is not None and self.db.is_method(target):
                cls, _, real = target.rpartition(".")
                return {ExternalMethod(owner, real, receiver, cls)}
        known = self.db.is_class(obj.type) or self.db.is_class(obj.fqn)
        if call and known:
            # receiver type is known: name the method after it
            return {ExternalMethod(owner, attr, receiver, None)}
        fallback = self._stub_method_result(obj, "__getattr__")
        if fallback is not None:
            return fallback
        return {UNKNOWN}

    def _stub_method_result(self, obj: Value, name: str) -> set[Value] | None:
        if not isinstance(obj, (ExternalInstance, ContainerValue)):
            return None
        type_str = obj.type if isinstance(obj, ExternalInstance) else obj.type_fqn
        key, member = self._stub_lookup(type_str, name)
        if isinstance(member, FunctionStub):
            return self._instances(member.returns, [], obj)
        return None

    # user classes

    def mro(self, cls: ClassValue) -> list[Value]:
        cached = self._mro_cache.get(cls)
        if cached is not None:
            return cached
        self._mro_cache[cls] = [cls]  # guards against cyclic bases
        result = _c3(cls, self._bases, set())
        self._mro_cache[cls] = result
        return result

    def _class_attr(self, cls: ClassValue, attr: str) -> set[Value]:
        env = self.duc.final_env.get(cls.scope, {})
        out = set()
        for d in env.get(attr, ()):
            out |= self.get(d)
        return out | self.get(FieldNode(cls, attr))

    def _user_member(self, cls: ClassValue, attr: str, receiver: Value, call: bool,
                     start: int = 0) -> set[Value]:
        out = set()
        if isinstance(receiver, InstanceValue):
            out |= self.get(FieldNode(receiver, attr))
        for klass in self.mro(cls)[start:]:
            if isinstance(klass, ClassValue):
                found = self._class_attr(klass, attr)
                if found:
                    out |= self._properties(found, receiver)
                    out |= {self._bind_member(v, receiver) for v in found}
                    return out
            elif isinstance(klass, ExternalClass):
                probe = ExternalInstance(klass.name)
                found = self._external_member(probe, attr, cls.fqn, call, receiver)
                found.discard(UNKNOWN)
                if found:
                    return out | found
        return out or {UNKNOWN}

    def _bind_member(self, value: Value, receiver: Value) -> Value:
        if not isinstance(value, FunctionValue) or value.scope.kind != "function":
            return value
        if value.scope.parent is None or value.scope.parent.kind != "class":
            return value
        decos = _decorator_names(value.scope.node)
        if "staticmethod" in decos:
            return value
        if "classmethod" in decos:
            if isinstance(receiver, InstanceValue):
                return BoundMethod(value, receiver.cls)
            return BoundMethod(value, receiver)
        if isinstance(receiver, ClassValue):
            return value
        return BoundMethod(value, receiver)

    def _properties(self, found: set[Value], receiver: Value) -> set[Value]:
        out = set()
        for v in found:
            if isinstance(v, FunctionValue) and "property" in _decorator_names(v.scope.node) \
                    and isinstance(receiver, InstanceValue):
                self._bind_call(v, [{receiver}], {})
                out |= self._result_of(v)
        if out:
            # the property object itself is never observable
            found.difference_update({v for v in found if isinstance(v, FunctionValue)})
        return out

    def _super_member(self, sup: SuperValue, attr: str, call: bool) -> set[Value]:
        recv = sup.receiver
        cls = recv.cls if isinstance(recv, InstanceValue) else recv
        if not isinstance(cls, ClassValue):
            return {UNKNOWN}
        order = self.mro(cls)
        try:
            start = order.index(sup.cls) + 1
        except ValueError:
            return {UNKNOWN}
        return self._user_member(cls, attr, recv, call, start)

    # subscripts

    def _slice_kinds(self, node: ast.AST) -> list[str | None]:
        if isinstance(node, ast.Tuple):
            parts = [self._one_kind(e) for e in node.elts]
            if all(parts):
                return [f"tuple:{','.join(parts)}", "tuple"]
            return ["tuple"]
        return [self._one_kind(node)]

    def _one_kind(self, node: ast.AST) -> str | None:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, str):
                return "str"
            if isinstance(node.value, bool):
                return "mask"
            if isinstance(node.value, int):
                return "int"
            return None
        if isinstance(node, ast.Slice):
            self.eval(node)
            return "slice"
        if isinstance(node, (ast.List, ast.ListComp)):
            self.eval(node)
            return "list"
        values = self.eval(node)
        kinds = set()
        for v in values:
            t = v.fqn if isinstance(v, (ExternalInstance, ContainerValue)) else None
            if t == "builtins.str":
                kinds.add("str")
            elif t in ("builtins.int",):
                kinds.add("int")
            elif t in ("builtins.list", "builtins.set"):
                kinds.add("list")
            elif t == "builtins.slice":
                kinds.add("slice")
            elif t == "builtins.bool":
                kinds.add("mask")
            elif t is not None and not t.startswith("builtins."):
                kinds.add("mask")
            else:
                kinds.add(None)
        return kinds.pop() if len(kinds) == 1 else None

    def _subscript(self, obj: Value, kinds: list[str | None]) -> set[Value]:
        if isinstance(obj, ContainerValue):
            return self.get(ElementNode(obj.site)) or {UNKNOWN}
        if isinstance(obj, ExternalInstance):
            if obj.elems:
                out = set()
                for e in obj.elems:
                    out |= e
                return out
            names = [f"__getitem__[{k}]" for k in kinds if k] + ["__getitem__"]
            for name in names:
                key, member = self._stub_lookup(obj.type, name)
                if isinstance(member, FunctionStub):
                    return self._instances(member.returns, [], obj)
            return {UNKNOWN}
        if isinstance(obj, (InstanceValue, ClassValue)):
            out = self._call_method(obj, "__getitem__" if isinstance(obj, InstanceValue)
                                    else "__class_getitem__")
            return out or {UNKNOWN}
        return {UNKNOWN}

    # -- calls

    def eval_Call(self, node: ast.Call) -> set[Value]:
        key = call_key(node)
        self.call_nodes[key] = node
        if isinstance(node.func, ast.Attribute):
            callees = set()
            for obj in self.eval(node.func.value):
                callees |= self._attribute(obj, node.func.attr, call=True)
            if any(isinstance(c, ExternalMethod) and c.stub_key is not None for c in callees):
                # a receiver alternative declares the method: drop names guessed for the others
                callees = {c for c in callees if not (isinstance(c, ExternalMethod) and c.stub_key is None
                                                      and isinstance(c.receiver, ExternalInstance))}
        else:
            callees = self.eval(node.func)
        pos: list[tuple[bool, set[Value]]] = []
        for arg in node.args:
            if isinstance(arg, ast.Starred):
                pos.append((True, self.iterate(self.eval(arg.value))))
            else:
                pos.append((False, self.eval(arg)))
        kw: dict[str | None, set[Value]] = {}
        for k in node.keywords:
            values = self.eval(k.value)
            kw[k.arg] = kw.get(k.arg, set()) | values
        fqns = self.call_fqns.setdefault(key, set())
        targets = self.call_targets.setdefault(key, set())
        result: set[Value] = set()
        for callee in callees:
            result |= self._invoke(callee, pos, kw, node, fqns, targets)
        if not callees:
            fqns.add(UNRESOLVED)
        return result or {UNKNOWN}

    def _invoke(self, callee: Value, pos, kw, node: ast.Call, fqns: set, targets: set) -> set[Value]:
        if isinstance(callee, FunctionValue):
            fqns.add(callee.fqn)
            targets.add(callee.scope)
            self._bind_call(callee, [v for _, v in pos], kw, starred=[s for s, _ in pos])
            return self._result_of(callee)
        if isinstance(callee, BoundMethod):
            fqns.add(callee.fqn)
            targets.add(callee.func.scope)
            self._bind_call(callee.func, [{callee.receiver}] + [v for _, v in pos], kw,
                            starred=[False] + [s for s, _ in pos])
            return self._result_of(callee.func)
        if isinstance(callee, ClassValue):
            fqns.add(callee.fqn)
            instance = InstanceValue(callee)
            for init in self._user_member(callee, "__init__", instance, True):
                if isinstance(init, BoundMethod):
                    targets.add(init.func.scope)
                    self._bind_call(init.func, [{instance}] + [v for _, v in pos], kw,
                                    starred=[False] + [s for s, _ in pos])
            return {instance}
        if isinstance(callee, InstanceValue):
            out = set()
            for m in self._user_member(callee.cls, "__call__", callee, True):
                if isinstance(m, BoundMethod):
                    out |= self._invoke(m, pos, kw, node, fqns, targets)
                elif isinstance(m, ExternalMethod):
                    out |= self._invoke(m, pos, kw, node, fqns, targets)
            if not out:
                fqns.add(UNRESOLVED)
            return out
        if isinstance(callee, ExternalFunction):
            fqns.add(callee.fqn)
            special = self._builtin_call(callee.fqn, pos, kw, node)
            if special is not None:
                return special
            returns = self.db.return_type(callee.fqn)
            return self._instances(returns, pos, None) if returns else {UNKNOWN}
        if isinstance(callee, ExternalClass):
            fqns.add(callee.fqn)
            special = self._builtin_call(callee.fqn, pos, kw, node)
            if special is not None:
                return special
            return {ExternalInstance(callee.fqn)}
        if isinstance(callee, ExternalMethod):
            known = callee.stub_key is not None or self.db.is_class(split_type(callee.owner)[0])
            fqns.add(callee.fqn if known else UNRESOLVED)
            if isinstance(callee.receiver, ContainerValue):
                special = self._container_method(callee.receiver, callee.name, pos, kw)
                if special is not None:
                    return special
            if callee.stub_key is None:
                return {UNKNOWN}
            member = self.db.member_type(callee.stub_key, callee.name)
            if isinstance(member, FunctionStub):
                return self._instances(member.returns, pos, callee.receiver)
            return {UNKNOWN}
        if isinstance(callee, ExternalInstance):
            key, member = self._stub_lookup(callee.type, "__call__")
            if isinstance(member, FunctionStub):
                fqns.add(f"{callee.fqn}.__call__")
                return self._instances(member.returns, pos, callee)
            if not self.db.is_class(callee.fqn):
                fqns.add(UNRESOLVED)
            # a declared class without __call__ cannot be the callee at runtime
            return set()
        if isinstance(callee, SuperValue):
            fqns.add(UNRESOLVED)
            return {UNKNOWN}
        fqns.add(UNRESOLVED)
        return {UNKNOWN}

    def _result_of(self, func: FunctionValue) -> set[Value]:
        if func.scope in self._generators:
            return {GeneratorValue(func)}
        return set(self.get(ReturnNode(func.scope)))

    def _bind_call(self, func: FunctionValue, args: list[set[Value]], kw: dict,
                   starred: list[bool] | None = None):
        node = func.scope.node
        params = _params(node)
        starred = starred or [False] * len(args)
        extra: set[Value] = set()
        for i, values in enumerate(args):
            if starred[i]:
                for p in params[i:]:
                    self.add(self._param_def(p), values)
                extra |= values
                continue
            if i < len(params):
                self.add(self._param_def(params[i]), values)
            else:
                extra |= values
        if node.args.vararg is not None:
            site = (node.args.vararg.lineno, node.args.vararg.col_offset)
            self.add(ElementNode(site), extra)
            self.add(self._param_def(node.args.vararg), {ContainerValue("builtins.tuple", site)})
        by_name = {p.arg: p for p in params + node.args.kwonlyargs}
        leftover: set[Value] = set()
        for name, values in kw.items():
            if name is not None and name in by_name:
                self.add(self._param_def(by_name[name]), values)
            else:
                leftover |= values
        if node.args.kwarg is not None:
            site = (node.args.kwarg.lineno, node.args.kwarg.col_offset)
            self.add(ElementNode(site), leftover)
            self.add(self._param_def(node.args.kwarg), {ContainerValue("builtins.dict", site)})

    def _builtin_call(self, fqn: str, pos, kw, node: ast.Call) -> set[Value] | None:
        if not fqn.startswith("builtins."):
            return None
        args = [v for _, v in pos]
        site = (node.lineno, node.col_offset)
        if fqn in _SEQ_BUILDERS and len(args) == 1:
            type_fqn = "builtins.list" if fqn in ("builtins.sorted", "builtins.reversed") else fqn
            self.add(ElementNode(site), self.iterate(args[0]))
            return {ContainerValue(type_fqn, site)}
        if fqn == "builtins.iter" and len(args) == 1:
            return set(args[0])
        if fqn == "builtins.next" and args:
            out = self.iterate(args[0])
            if len(args) > 1:
                out |= args[1]
            return out
        if fqn in ("builtins.enumerate", "builtins.zip"):
            elems = [frozenset(self.iterate(a)) for a in args]
            if fqn == "builtins.enumerate":
                elems = [frozenset({ExternalInstance("builtins.int")})] + elems[:1]
            return {ExternalInstance(fqn, tuple(elems))}
        if fqn in ("builtins.map", "builtins.filter") and len(args) >= 2:
            items = [self.iterate(a) for a in args[1:]]
            results: set[Value] = set()
            for f in args[0]:
                if isinstance(f, FunctionValue):
                    self._bind_call(f, items, {})
                    results |= self._result_of(f)
            elems = results if fqn == "builtins.map" else items[0]
            return {ExternalInstance(fqn, (frozenset(elems or {UNKNOWN}),))}
        if fqn == "builtins.getattr" and len(node.args) >= 2 and isinstance(node.args[1], ast.Constant) \
                and isinstance(node.args[1].value, str):
            out = set()
            for obj in args[0]:
                out |= self._attribute(obj, node.args[1].value)
            if len(args) > 2:
                out |= args[2]
            return out
        if fqn == "builtins.super":
            return self._super_call(args)
        if fqn == "builtins.type" and len(args) == 1:
            out = set()
            for v in args[0]:
                if isinstance(v, InstanceValue):
                    out.add(v.cls)
                elif isinstance(v, ExternalInstance):
                    out.add(ExternalClass(v.fqn))
                else:
                    out.add(UNKNOWN)
            return out
        return None

    def _super_call(self, args: list[set[Value]]) -> set[Value]:
        out = set()
        if len(args) >= 2:
            for cls in args[0]:
                if isinstance(cls, ClassValue):
                    for recv in args[1]:
                        out.add(SuperValue(cls, recv))
            return out or {UNKNOWN}
        func = self._function_scope()
        if func is None or func.parent is None or func.parent.kind != "class":
            return {UNKNOWN}
        params = _params(func.node)
        if not params:
            return {UNKNOWN}
        cls = self._class_of_scope.get(func.parent) or ClassValue(func.parent)
        for recv in self.get(self._param_def(params[0])):
            out.add(SuperValue(cls, recv))
        return out or {UNKNOWN}

    def _container_method(self, obj: ContainerValue, name: str, pos, kw) -> set[Value] | None:
        args = [v for _, v in pos]
        elts = ElementNode(obj.site)
        keys = ElementNode(obj.site, "keys")
        if name in _CONTAINER_MUTATORS:
            if name in ("append", "add") and args:
                self.add(elts, args[0])
            elif name == "insert" and len(args) >= 2:
                self.add(elts, args[1])
            elif name == "extend" and args:
                self.add(elts, self.iterate(args[0]))
            elif name == "update":
                for a in args:
                    for src in a:
                        if isinstance(src, ContainerValue):
                            self.add(elts, self.get(ElementNode(src.site)))
                            self.add(keys, self.get(ElementNode(src.site, "keys")))
                for values in kw.values():
                    self.add(elts, values)
            elif name == "setdefault" and args:
                self.add(keys, args[0])
                if len(args) > 1:
                    self.add(elts, args[1])
                return set(self.get(elts)) or {UNKNOWN}
            return {ExternalInstance("builtins.NoneType")}
        if name in ("get", "pop", "__getitem__"):
            out = set(self.get(elts))
            if name == "get" and len(args) > 1:
                out |= args[1]
            return out or {UNKNOWN}
        if name == "copy":
            return {obj}
        if name == "keys":
            return {ExternalInstance("builtins.dict_keys", (frozenset(self.get(keys)),))}
        if name == "values":
            return {ExternalInstance("builtins.dict_values", (frozenset(self.get(elts)),))}
        if name == "items":
            return {ExternalInstance("builtins.dict_items",
                                     (frozenset(self.get(keys)), frozenset(self.get(elts))))}
        return None

    # -- type strings

    def _instances(self, types: Iterable[str], pos, receiver: Value | None) -> set[Value]:
        out: set[Value] = set()
        args = [v for _, v in pos] if pos and isinstance(pos[0], tuple) else list(pos)
        for t in types:
            out |= self._materialize(t, args, receiver)
        return out or {UNKNOWN}

    def _materialize(self, type_str: str, args: list[set[Value]], receiver) -> set[Value]:
        if type_str.startswith("$"):
            ref = type_str[1:]
            if ref == "self":
                return {receiver} if receiver is not None else set()
            if ref.isdigit() and int(ref) < len(args):
                return set(args[int(ref)])
            return set()
        base, elems = split_type(type_str)
        if elems and base in _CONTAINERS | _ZIPLIKE:
            parts = []
            for e in elems:
                values = self._materialize(e, args, receiver)
                if values:
                    parts.append(frozenset(values))
            return {ExternalInstance(base, tuple(parts))}
        return {ExternalInstance(type_str)}

    def _instance_of(self, type_str: str) -> Value:
        values = self._materialize(type_str, [], None)
        return next(iter(values)) if len(values) == 1 else UNKNOWN

    # -- helpers

    def _function_scope(self) -> Scope | None:
        scope = self._scope
        while scope is not None and scope.kind not in ("function", "lambda", "module"):
            scope = scope.parent
        if scope is None or scope.kind == "module":
            return None
        return scope

    def _def(self, name_node: ast.Name) -> Definition | None:
        return self.duc.defined_at(name_node.lineno, name_node.col_offset, name_node.id)

    def _def_at(self, node: ast.AST, name: str) -> Definition | None:
        return self.duc.defined_at(node.lineno, node.col_offset, name)

    def _param_def(self, arg: ast.arg) -> Definition | None:
        return self.duc.defined_at(arg.lineno, arg.col_offset, arg.arg)


def _is_library_value(v: Value) -> bool:
    if isinstance(v, ExternalInstance):
        return not v.fqn.startswith("builtins.")
    return False


def _c3(cls: ClassValue, bases: dict, visiting: set) -> list[Value]:
    if cls in visiting:
        return [cls]
    visiting = visiting | {cls}
    direct = [b for b in bases.get(cls, []) if isinstance(b, (ClassValue, ExternalClass))]
    seqs = []
    for b in direct:
        seqs.append(_c3(b, bases, visiting) if isinstance(b, ClassValue) else [b])
    seqs.append(list(direct))
    out = [cls]
    seqs = [list(s) for s in seqs if s]
    while seqs:
        for seq in seqs:
            head = seq[0]
            if not any(head in s[1:] for s in seqs):
                break
        else:
            # inconsistent hierarchy: fall back to depth-first order
            for seq in seqs:
                for c in seq:
                    if c not in out:
                        out.append(c)
            return out
        out.append(head)
        seqs = [[c for c in s if c != head] for s in seqs]
        seqs = [s for s in seqs if s]
    return out


def _node_label(node: Node) -> str:
    if isinstance(node, Definition):
        scope = node.scope.qualname or MODULE_NAME
        return f"{scope}:{node.name}@{node.line}:{node.col}"
    if isinstance(node, FieldNode):
        return f"{node.owner!r}.{node.attr}"
    if isinstance(node, ReturnNode):
        return f"return {node.scope.fqn}"
    if isinstance(node, YieldNode):
        return f"yield {node.scope.fqn}"
    return f"{node.part}@{node.site[0]}:{node.site[1]}"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def build_eag(ir: ModuleIR, duc: DefUseChains, imports: ImportTable, stubs: TypeStubDB) -> ExtendedAssignmentGraph:
    return ExtendedAssignmentGraph(ir, duc, imports, stubs).solve()


def points_to(eag: ExtendedAssignmentGraph, name: str, line: int) -> set[Value]:
    return eag.points_to(name, line)
