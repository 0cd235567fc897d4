"""Parsing the composite script, scope trees, imports and def-use chains.

Def-use chains are computed by a single abstract walk over the module in
program order.  Each binding occurrence becomes a :class:`Definition` keyed by
``(scope, name, line, col)``; each name load records the set of definitions
that may reach it.  Branches merge, loops iterate to a fixed point, and
function bodies are processed after their enclosing scope has been walked so
that free variables see every definition that could be live when the
function runs.
"""

from __future__ import annotations

import ast
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .notebook import CompositeScript

MODULE_NAME = "__main__"

Position = tuple[int, int]

_SCOPE_NODES = (ast.FunctionDef, ast.AsyncFunctionDef, ast.Lambda, ast.ClassDef,
                ast.ListComp, ast.SetComp, ast.DictComp, ast.GeneratorExp)
_COMP_NAMES = {ast.ListComp: "<listcomp>", ast.SetComp: "<setcomp>",
               ast.DictComp: "<dictcomp>", ast.GeneratorExp: "<genexpr>"}


class AnalysisSyntaxError(SyntaxError):
    """A syntax error located in notebook coordinates."""

    def __init__(self, msg: str, cell: int | None, cell_line: int | None, script_line: int | None):
        where = f"cell {cell}, line {cell_line}" if cell is not None else "unknown location"
        super().__init__(f"{msg} ({where})")
        self.cell = cell
        self.cell_line = cell_line
        self.script_line = script_line


@dataclass(eq=False)
class Scope:
    kind: str  # module | function | class | lambda | comprehension
    name: str
    qualname: str
    node: ast.AST
    parent: Scope | None = None
    bindings: set[str] = field(default_factory=set)
    globals: set[str] = field(default_factory=set)
    nonlocals: set[str] = field(default_factory=set)
    children: list[Scope] = field(default_factory=list)

    @property
    def fqn(self) -> str:
        if self.kind == "module":
            return MODULE_NAME
        return f"{MODULE_NAME}.{self.qualname}"

    @property
    def line(self) -> int:
        return getattr(self.node, "lineno", 0)

    def __repr__(self) -> str:
        return f"Scope({self.kind} {self.qualname or MODULE_NAME})"

    def walk(self) -> Iterator[Scope]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class ModuleIR:
    tree: ast.Module
    script: CompositeScript
    root: Scope
    scope_of: dict[ast.AST, Scope]

    @property
    def scopes(self) -> Scope:
        return self.root

    def location(self, line: int) -> tuple[int, int]:
        return self.script.map.location(line)

    def statements(self) -> Iterator[ast.stmt]:
        for node in ast.walk(self.tree):
            if isinstance(node, ast.stmt):
                yield node

    def calls(self) -> Iterator[ast.Call]:
        for node in ast.walk(self.tree):
            if isinstance(node, ast.Call):
                yield node


# -- parsing ---------------------------------------------------------------


def _qualname(parent: Scope, name: str) -> str:
    if parent.kind == "module":
        return name
    if parent.kind == "class":
        return f"{parent.qualname}.{name}"
    return f"{parent.qualname}.<locals>.{name}"


def _target_names(target: ast.AST) -> Iterator[str]:
    for node in ast.walk(target):
        if isinstance(node, ast.Name) and isinstance(node.ctx, ast.Store):
            yield node.id


class _BindingScanner(ast.NodeVisitor):
    """Collects the names bound directly in one scope."""

    def __init__(self, scope: Scope):
        self.scope = scope

    def scan(self, body: Iterable[ast.AST]):
        for node in body:
            self.visit(node)

    def visit_Name(self, node: ast.Name):
        if isinstance(node.ctx, (ast.Store, ast.Del)):
            self.scope.bindings.add(node.id)

    def visit_FunctionDef(self, node):
        self.scope.bindings.add(node.name)
        for expr in node.decorator_list + node.args.defaults + [d for d in node.args.kw_defaults if d]:
            self.visit(expr)

    visit_AsyncFunctionDef = visit_FunctionDef

    def visit_ClassDef(self, node: ast.ClassDef):
        self.scope.bindings.add(node.name)
        for expr in node.decorator_list + node.bases + [k.value for k in node.keywords]:
            self.visit(expr)

    def visit_Lambda(self, node: ast.Lambda):
        for expr in node.args.defaults + [d for d in node.args.kw_defaults if d]:
            self.visit(expr)

    def _comprehension(self, node):
        # walrus targets inside a comprehension bind in the enclosing scope
        for sub in ast.walk(node):
            if isinstance(sub, ast.NamedExpr) and isinstance(sub.target, ast.Name):
                self.scope.bindings.add(sub.target.id)
        self.visit(node.generators[0].iter)

    visit_ListComp = visit_SetComp = visit_DictComp = visit_GeneratorExp = _comprehension

    def visit_Import(self, node: ast.Import):
        for alias in node.names:
            self.scope.bindings.add((alias.asname or alias.name).split(".")[0])

    def visit_ImportFrom(self, node: ast.ImportFrom):
        for alias in node.names:
            if alias.name != "*":
                self.scope.bindings.add(alias.asname or alias.name)

    def visit_ExceptHandler(self, node: ast.ExceptHandler):
        if node.name:
            self.scope.bindings.add(node.name)
        self.generic_visit(node)

    def visit_Global(self, node: ast.Global):
        self.scope.globals.update(node.names)

    def visit_Nonlocal(self, node: ast.Nonlocal):
        self.scope.nonlocals.update(node.names)

    def visit_MatchAs(self, node):
        if node.name:
            self.scope.bindings.add(node.name)
        self.generic_visit(node)

    def visit_MatchStar(self, node):
        if node.name:
            self.scope.bindings.add(node.name)

    def visit_MatchMapping(self, node):
        if node.rest:
            self.scope.bindings.add(node.rest)
        self.generic_visit(node)


def _build_scopes(tree: ast.Module) -> tuple[Scope, dict[ast.AST, Scope]]:
    root = Scope("module", MODULE_NAME, "", tree)
    scope_of: dict[ast.AST, Scope] = {tree: root}

    def make(node: ast.AST, parent: Scope) -> Scope:
        if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            scope = Scope("function", node.name, _qualname(parent, node.name), node, parent)
            args = node.args
        elif isinstance(node, ast.Lambda):
            scope = Scope("lambda", "<lambda>", _qualname(parent, "<lambda>"), node, parent)
            args = node.args
        elif isinstance(node, ast.ClassDef):
            scope = Scope("class", node.name, _qualname(parent, node.name), node, parent)
            args = None
        else:
            name = _COMP_NAMES[type(node)]
            scope = Scope("comprehension", name, _qualname(parent, name), node, parent)
            args = None
        parent.children.append(scope)
        scope_of[node] = scope
        if args is not None:
            for a in args.posonlyargs + args.args + args.kwonlyargs:
                scope.bindings.add(a.arg)
            if args.vararg:
                scope.bindings.add(args.vararg.arg)
            if args.kwarg:
                scope.bindings.add(args.kwarg.arg)
        scanner = _BindingScanner(scope)
        if isinstance(node, ast.Lambda):
            scanner.visit(node.body)
        elif isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
            scanner.scan(node.body)
        else:
            for gen in node.generators:
                for name in _target_names(gen.target):
                    scope.bindings.add(name)
        scope.bindings -= scope.globals | scope.nonlocals
        return scope

    def descend(node: ast.AST, scope: Scope):
        for child in ast.iter_child_nodes(node):
            if isinstance(child, _SCOPE_NODES):
                descend(child, make(child, scope))
            else:
                descend(child, scope)

    _BindingScanner(root).scan(tree.body)
    descend(tree, root)
    # names declared global anywhere are module bindings
    for scope in root.walk():
        root.bindings |= scope.globals
    return root, scope_of


def parse(script: CompositeScript) -> ModuleIR:
    try:
        tree = ast.parse(script.text)
    except SyntaxError as exc:
        line = exc.lineno
        cell = cell_line = None
        if line is not None:
            try:
                cell, cell_line = script.map.location(line)
            except KeyError:
                pass
        raise AnalysisSyntaxError(exc.msg, cell, cell_line, line) from None
    root, scope_of = _build_scopes(tree)
    return ModuleIR(tree, script, root, scope_of)


# -- imports ---------------------------------------------------------------


@dataclass(frozen=True)
class ImportEntry:
    scope: Scope
    local: str  # "*" for star imports
    path: str
    line: int
    col: int
    star: bool = False


@dataclass
class ImportTable:
    entries: list[ImportEntry] = field(default_factory=list)

    @property
    def aliases(self) -> dict[str, str]:
        """Module-scope local name -> imported path (last definition wins)."""
        out = {}
        for e in self.entries:
            if e.scope.kind == "module" and not e.star:
                out[e.local] = e.path
        return out

    @property
    def star_modules(self) -> list[str]:
        return [e.path for e in self.entries if e.star]

    def at(self, line: int, col: int, local: str) -> ImportEntry | None:
        return self._by_site.get((line, col, local))

    def __post_init__(self):
        self._by_site = {(e.line, e.col, e.local): e for e in self.entries}


def _resolve_relative(module: str | None, level: int) -> str:
    # a notebook has no package; relative imports keep their dotted tail
    return module or ""


def build_import_table(ir: ModuleIR) -> ImportTable:
    entries = []
    for node, scope in walk_scoped(ir):
        if isinstance(node, ast.Import):
            for alias in node.names:
                if alias.asname:
                    entries.append(ImportEntry(scope, alias.asname, alias.name,
                                               alias.lineno, alias.col_offset))
                else:
                    head = alias.name.split(".")[0]
                    entries.append(ImportEntry(scope, head, head, alias.lineno, alias.col_offset))
        elif isinstance(node, ast.ImportFrom):
            base = _resolve_relative(node.module, node.level)
            for alias in node.names:
                if alias.name == "*":
                    entries.append(ImportEntry(scope, "*", base, alias.lineno, alias.col_offset, True))
                else:
                    path = f"{base}.{alias.name}" if base else alias.name
                    entries.append(ImportEntry(scope, alias.asname or alias.name, path,
                                               alias.lineno, alias.col_offset))
    entries.sort(key=lambda e: (e.line, e.col))
    return ImportTable(entries)


def walk_scoped(ir: ModuleIR) -> Iterator[tuple[ast.AST, Scope]]:
    """Yield every node with the scope it is evaluated in."""
    stack = [(ir.tree, ir.root)]
    while stack:
        node, scope = stack.pop()
        yield node, scope
        inner = ir.scope_of.get(node, scope) if node is not ir.tree else scope
        children = list(ast.iter_child_nodes(node))
        for child in reversed(children):
            stack.append((child, inner))


def own_nodes(scope: Scope) -> Iterator[ast.AST]:
    """Nodes belonging to *scope* itself, not to nested scopes."""
    stack = list(ast.iter_child_nodes(scope.node))
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, _SCOPE_NODES):
            continue
        stack.extend(ast.iter_child_nodes(node))


# -- def-use chains --------------------------------------------------------


@dataclass(frozen=True)
class Definition:
    """One binding occurrence of a name: the flow-sensitive variable node."""

    scope: Scope = field(compare=True, hash=True, repr=False)
    name: str
    line: int
    col: int
    kind: str = field(default="assign", compare=False)

    @property
    def position(self) -> Position:
        return (self.line, self.col)

    def __repr__(self) -> str:
        return f"Definition({self.name}@{self.line}:{self.col} in {self.scope.qualname or MODULE_NAME})"


@dataclass(frozen=True)
class Use:
    name: str
    line: int
    col: int


Env = dict[str, frozenset]


@dataclass
class DefUseChains:
    chains: dict[Definition, set[Use]]
    reaching: dict[tuple[int, int, str], frozenset[Definition]]
    defined: dict[tuple[int, int, str], Definition]
    final_env: dict[Scope, Env]

    def definitions(self, name: str | None = None) -> list[Definition]:
        defs = [d for d in self.chains if name is None or d.name == name]
        return sorted(defs, key=lambda d: (d.line, d.col, d.name))

    def uses(self, definition: Definition) -> set[Use]:
        return self.chains.get(definition, set())

    def reaching_at(self, node: ast.Name) -> frozenset[Definition]:
        return self.reaching.get((node.lineno, node.col_offset, node.id), frozenset())

    def defined_at(self, line: int, col: int, name: str) -> Definition | None:
        return self.defined.get((line, col, name))


def _merge(a: Env, b: Env) -> Env:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, frozenset()) | v
    return out


@dataclass
class _Activation:
    scope: Scope
    env: Env
    parent: _Activation | None = None
    # for deferred bodies: (scope, env snapshot, position) per enclosing scope, inner first
    closure: list = field(default_factory=list)


class _DefUseBuilder:
    def __init__(self, ir: ModuleIR):
        self.ir = ir
        self.defs: dict[tuple, Definition] = {}
        self.scope_defs: dict[Scope, list[Definition]] = defaultdict(list)
        self.chains: dict[Definition, set[Use]] = {}
        self.reaching: dict[tuple[int, int, str], frozenset[Definition]] = {}
        self.final_env: dict[Scope, Env] = {}
        self.pending: dict[Scope, dict[ast.AST, list]] = defaultdict(dict)
        self.act: _Activation | None = None
        self.loops: list[dict] = []
        self.try_states: list[list[Env]] = []

    # definitions

    def define(self, scope: Scope, name: str, node: ast.AST, kind: str, weak: bool = False,
               act: _Activation | None = None) -> Definition:
        line, col = node.lineno, node.col_offset
        key = (scope, name, line, col)
        d = self.defs.get(key)
        if d is None:
            d = Definition(scope, name, line, col, kind)
            self.defs[key] = d
            self.scope_defs[scope].append(d)
            self.chains[d] = set()
        target = act or self._activation_for(scope)
        if target is not None:
            if weak or name == "*":
                target.env[name] = target.env.get(name, frozenset()) | {d}
            else:
                target.env[name] = frozenset({d})
        return d

    def _activation_for(self, scope: Scope) -> _Activation | None:
        act = self.act
        while act is not None:
            if act.scope is scope:
                return act
            act = act.parent
        return None

    def bind(self, name: str, node: ast.AST, kind: str):
        """Bind *name* in the current scope, honouring global/nonlocal."""
        scope = self.act.scope
        if scope.kind == "comprehension" and name not in scope.bindings:
            # walrus inside a comprehension
            act = self.act
            while act.scope.kind == "comprehension":
                act = act.parent
            scope = act.scope
        if name in scope.globals:
            self.define(self.ir.root, name, node, kind, weak=True)
            return
        if name in scope.nonlocals:
            owner = self._owner_of(scope.parent, name)
            if owner is not None:
                self.define(owner, name, node, kind, weak=True)
            return
        self.define(scope, name, node, kind)

    def _owner_of(self, scope: Scope | None, name: str) -> Scope | None:
        while scope is not None:
            if scope.kind in ("function", "lambda") and name in scope.bindings:
                return scope
            scope = scope.parent
        return None

    # lookups

    def use(self, node: ast.Name):
        defs = self.resolve(node.id)
        key = (node.lineno, node.col_offset, node.id)
        self.reaching[key] = self.reaching.get(key, frozenset()) | defs
        u = Use(node.id, node.lineno, node.col_offset)
        for d in defs:
            self.chains[d].add(u)

    def resolve(self, name: str) -> frozenset[Definition]:
        act = self.act
        while act is not None:
            scope = act.scope
            if scope.kind in ("function", "lambda"):
                if name in scope.bindings:
                    return act.env.get(name, frozenset())
                if name in scope.globals:
                    return self._closure_lookup(name, act.closure[-1:], module_only=True)
                return self._closure_lookup(name, act.closure)
            if scope.kind == "class":
                if act.env.get(name):
                    return act.env[name]
            elif scope.kind == "comprehension":
                if name in scope.bindings:
                    return act.env.get(name, frozenset())
            else:
                found = act.env.get(name)
                if found:
                    return found
                return act.env.get("*", frozenset())
            act = act.parent
        return frozenset()

    def _later(self, scope: Scope, name: str, pos: Position) -> frozenset[Definition]:
        return frozenset(d for d in self.scope_defs.get(scope, ())
                         if d.name == name and d.position > pos)

    def _closure_lookup(self, name: str, closure: list, module_only: bool = False) -> frozenset:
        for scope, snap, pos in closure:
            if module_only and scope.kind != "module":
                continue
            if name in scope.bindings:
                return snap.get(name, frozenset()) | self._later(scope, name, pos)
            if scope.kind == "module":
                return snap.get("*", frozenset()) | self._later(scope, "*", pos)
        return frozenset()

    def _closure_here(self, pos: Position) -> list:
        chain = []
        act = self.act
        while act is not None:
            if act.scope.kind != "class":
                chain.append((act.scope, dict(act.env), pos))
            if act.parent is None:
                chain.extend(act.closure)
                break
            act = act.parent
        return chain

    # driving

    def run(self) -> DefUseChains:
        root = self.ir.root
        self.act = _Activation(root, {})
        self.block(self.ir.tree.body)
        self.final_env[root] = dict(self.act.env)
        self.act = None
        self.flush(root)
        defined = {(d.line, d.col, d.name): d for d in self.chains}
        return DefUseChains(self.chains, self.reaching, defined, self.final_env)

    def flush(self, scope: Scope):
        """Process deferred function bodies whose enclosing scope is done."""
        pending = self.pending.pop(scope, {})
        for node, closure in pending.items():
            self.function_body(node, closure)

    def function_body(self, node: ast.AST, closure: list):
        scope = self.ir.scope_of[node]
        saved, saved_loops = self.act, self.loops
        self.act = _Activation(scope, {}, None, closure)
        self.loops = []
        args = node.args
        for a in args.posonlyargs + args.args + args.kwonlyargs:
            self.define(scope, a.arg, a, "param")
        for a in (args.vararg, args.kwarg):
            if a is not None:
                self.define(scope, a.arg, a, "param")
        if isinstance(node, ast.Lambda):
            self.expr(node.body)
        else:
            self.block(node.body)
        self.final_env[scope] = dict(self.act.env)
        self.act, self.loops = saved, saved_loops
        self.flush(scope)

    def defer(self, node: ast.AST):
        scope = self.ir.scope_of[node]
        owner = self.act.scope
        while owner.kind in ("class", "comprehension"):
            owner = owner.parent
        self.pending[owner][node] = self._closure_here((node.lineno, node.col_offset))
        # global/nonlocal assignments inside the body become weak definitions now
        for sub in scope.walk():
            for inner in own_nodes(sub):
                if isinstance(inner, ast.Name) and isinstance(inner.ctx, ast.Store):
                    if inner.id in sub.globals:
                        self.define(self.ir.root, inner.id, inner, "global", weak=True)
                    elif inner.id in sub.nonlocals:
                        target = self._owner_of(sub.parent, inner.id)
                        if target is not None and self._activation_for(target) is not None:
                            self.define(target, inner.id, inner, "nonlocal", weak=True)

    # statements

    def block(self, body: list[ast.stmt]):
        for stmt in body:
            self.stmt(stmt)
            if self.try_states:
                self.try_states[-1].append(dict(self.act.env))

    def stmt(self, node: ast.stmt):
        method = getattr(self, "stmt_" + type(node).__name__, None)
        if method is not None:
            method(node)
        else:
            for child in ast.iter_child_nodes(node):
                if isinstance(child, ast.expr):
                    self.expr(child)
                elif isinstance(child, ast.stmt):
                    self.stmt(child)

    def stmt_FunctionDef(self, node):
        for expr in node.decorator_list:
            self.expr(expr)
        args = node.args
        for expr in args.defaults + [d for d in args.kw_defaults if d]:
            self.expr(expr)
        self.bind(node.name, node, "function")
        self.defer(node)

    stmt_AsyncFunctionDef = stmt_FunctionDef

    def stmt_ClassDef(self, node: ast.ClassDef):
        for expr in node.decorator_list + node.bases + [k.value for k in node.keywords]:
            self.expr(expr)
        scope = self.ir.scope_of[node]
        outer = self.act
        self.act = _Activation(scope, {}, outer)
        self.block(node.body)
        self.final_env[scope] = dict(self.act.env)
        self.act = outer
        self.bind(node.name, node, "class")

    def stmt_Assign(self, node: ast.Assign):
        self.expr(node.value)
        for target in node.targets:
            self.target(target, "assign")

    def stmt_AnnAssign(self, node: ast.AnnAssign):
        if node.value is not None:
            self.expr(node.value)
            self.target(node.target, "assign")
        elif not isinstance(node.target, ast.Name):
            self.expr(node.target)

    def stmt_AugAssign(self, node: ast.AugAssign):
        self.expr(node.value)
        if isinstance(node.target, ast.Name):
            self.use(node.target)
            self.bind(node.target.id, node.target, "augassign")
        else:
            self.expr(node.target)

    def stmt_Delete(self, node: ast.Delete):
        for target in node.targets:
            if isinstance(target, ast.Name):
                self.act.env[target.id] = frozenset()
            else:
                self.expr(target)

    def stmt_Import(self, node: ast.Import):
        for alias in node.names:
            name = alias.asname or alias.name.split(".")[0]
            self.bind(name, alias, "import")

    def stmt_ImportFrom(self, node: ast.ImportFrom):
        for alias in node.names:
            if alias.name == "*":
                self.define(self.act.scope, "*", alias, "import", act=self.act)
            else:
                self.bind(alias.asname or alias.name, alias, "import")

    def stmt_If(self, node: ast.If):
        self.expr(node.test)
        before = dict(self.act.env)
        self.block(node.body)
        after_body = self.act.env
        self.act.env = before
        self.block(node.orelse)
        self.act.env = _merge(after_body, self.act.env)

    def _loop(self, node, head_hook):
        before = dict(self.act.env)
        frame = {"breaks": [], "continues": []}
        self.loops.append(frame)
        head = before
        while True:
            self.act.env = dict(head)
            head_hook()
            self.block(node.body)
            end = self.act.env
            for state in frame["continues"]:
                end = _merge(end, state)
            new_head = _merge(head, end)
            if new_head == head:
                break
            head = new_head
        self.loops.pop()
        self.act.env = dict(head)
        if isinstance(node, ast.While):
            self.expr(node.test)
        self.block(node.orelse)
        for state in frame["breaks"]:
            self.act.env = _merge(self.act.env, state)

    def stmt_For(self, node: ast.For):
        self.expr(node.iter)
        self._loop(node, lambda: self.target(node.target, "loop"))

    stmt_AsyncFor = stmt_For

    def stmt_While(self, node: ast.While):
        self._loop(node, lambda: self.expr(node.test))

    def stmt_Break(self, node):
        if self.loops:
            self.loops[-1]["breaks"].append(dict(self.act.env))

    def stmt_Continue(self, node):
        if self.loops:
            self.loops[-1]["continues"].append(dict(self.act.env))

    def stmt_With(self, node: ast.With):
        for item in node.items:
            self.expr(item.context_expr)
            if item.optional_vars is not None:
                self.target(item.optional_vars, "with")
        self.block(node.body)

    stmt_AsyncWith = stmt_With

    def stmt_Try(self, node: ast.Try):
        before = dict(self.act.env)
        self.try_states.append([before])
        self.block(node.body)
        states = self.try_states.pop()
        after_body = self.act.env
        anywhere = before
        for state in states:
            anywhere = _merge(anywhere, state)
        ends = []
        for handler in node.handlers:
            self.act.env = dict(anywhere)
            if handler.type is not None:
                self.expr(handler.type)
            if handler.name:
                self.bind(handler.name, handler, "except")
            self.block(handler.body)
            ends.append(self.act.env)
        self.act.env = after_body
        self.block(node.orelse)
        merged = self.act.env
        for end in ends:
            merged = _merge(merged, end)
        self.act.env = merged
        self.block(node.finalbody)

    stmt_TryStar = stmt_Try

    def stmt_Global(self, node):
        pass

    stmt_Nonlocal = stmt_Global

    def stmt_Match(self, node):
        self.expr(node.subject)
        before = dict(self.act.env)
        merged = dict(before)
        for case in node.cases:
            self.act.env = dict(before)
            for sub in ast.walk(case.pattern):
                name = getattr(sub, "name", None) or getattr(sub, "rest", None)
                if isinstance(name, str):
                    self.bind(name, sub, "match")
            if case.guard is not None:
                self.expr(case.guard)
            self.block(case.body)
            merged = _merge(merged, self.act.env)
        self.act.env = merged

    # targets and expressions

    def target(self, node: ast.AST, kind: str):
        if isinstance(node, ast.Name):
            self.bind(node.id, node, kind)
        elif isinstance(node, (ast.Tuple, ast.List)):
            for elt in node.elts:
                self.target(elt, kind)
        elif isinstance(node, ast.Starred):
            self.target(node.value, kind)
        else:
            # attribute / subscript stores read their base
            self.expr(node)

    def expr(self, node: ast.AST):
        if isinstance(node, ast.Name):
            if isinstance(node.ctx, ast.Load):
                self.use(node)
            elif isinstance(node.ctx, ast.Store):
                self.bind(node.id, node, "assign")
            return
        if isinstance(node, ast.NamedExpr):
            self.expr(node.value)
            self.bind(node.target.id, node.target, "walrus")
            return
        if isinstance(node, ast.Lambda):
            args = node.args
            for expr in args.defaults + [d for d in args.kw_defaults if d]:
                self.expr(expr)
            self.defer(node)
            return
        if isinstance(node, (ast.ListComp, ast.SetComp, ast.GeneratorExp, ast.DictComp)):
            self.comprehension(node)
            return
        for child in ast.iter_child_nodes(node):
            self.expr(child)

    def comprehension(self, node):
        scope = self.ir.scope_of[node]
        outer = self.act
        self.expr(node.generators[0].iter)
        self.act = _Activation(scope, {}, outer)
        for i, gen in enumerate(node.generators):
            if i:
                self.expr(gen.iter)
            self.target(gen.target, "comprehension")
            for cond in gen.ifs:
                self.expr(cond)
        if isinstance(node, ast.DictComp):
            self.expr(node.key)
            self.expr(node.value)
        else:
            self.expr(node.elt)
        self.final_env[scope] = dict(self.act.env)
        self.act = outer


def build_duc(ir: ModuleIR) -> DefUseChains:
    return _DefUseBuilder(ir).run()


# -- location map ----------------------------------------------------------


@dataclass
class LocationMap:
    at: dict[int, frozenset[tuple[str, Definition]]]

    def __getitem__(self, line: int) -> frozenset[tuple[str, Definition]]:
        return self.at.get(line, frozenset())

    def governing(self, name: str, line: int) -> frozenset[Definition]:
        return frozenset(d for n, d in self[line] if n == name)


def location_map(duc: DefUseChains) -> LocationMap:
    at: dict[int, set] = defaultdict(set)
    for (line, _col, name), defs in duc.reaching.items():
        for d in defs:
            at[line].add((name, d))
    return LocationMap({line: frozenset(v) for line, v in sorted(at.items())})
