"""Dynamic oracle: execute a notebook and record the callee of every call.

Each call expression ``f(a)`` in the flattened script is rewritten to
``__hg_trace__(key, f)(a)``; the hook names the runtime callable and returns
it unchanged.  The recorded (line, fqn) pairs are the ground truth that the
static analysis is scored against.  Only used to author fixtures.
"""

from __future__ import annotations

import ast
import inspect
import os
import sys
import types
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .frontend import MODULE_NAME
from .notebook import NotebookDoc, flatten

HOOK = "__hg_trace__"


def _type_name(cls: type) -> str:
    return f"{cls.__module__}.{cls.__qualname__}"


def runtime_fqn(obj) -> str:
    """Name a callable with the same conventions the static analysis uses."""
    if isinstance(obj, type):
        return _type_name(obj)
    if inspect.ismethod(obj):
        func, owner = obj.__func__, obj.__self__
        if getattr(func, "__module__", None) == MODULE_NAME:
            return f"{MODULE_NAME}.{func.__qualname__}"
        cls = owner if isinstance(owner, type) else type(owner)
        return f"{_type_name(cls)}.{func.__name__}"
    if isinstance(obj, types.BuiltinFunctionType):
        owner = obj.__self__
        if owner is None or isinstance(owner, types.ModuleType):
            module = obj.__module__ or getattr(owner, "__name__", "builtins")
            return f"{module}.{obj.__name__}"
        cls = owner if isinstance(owner, type) else type(owner)
        return f"{_type_name(cls)}.{obj.__name__}"
    if isinstance(obj, types.FunctionType):
        return f"{obj.__module__}.{obj.__qualname__}"
    if isinstance(obj, (types.MethodWrapperType, types.MethodDescriptorType,
                        types.WrapperDescriptorType, types.ClassMethodDescriptorType)):
        owner = getattr(obj, "__self__", None) or getattr(obj, "__objclass__", None)
        cls = owner if isinstance(owner, type) else type(owner)
        return f"{_type_name(cls)}.{obj.__name__}"
    if type(obj).__name__ == "ufunc":
        return f"numpy.{obj.__name__}"
    # function-like objects (e.g. array-function dispatchers) carry their own names
    name = obj.__dict__.get("__qualname__") if hasattr(obj, "__dict__") else None
    module = getattr(obj, "__module__", None)
    if name is None and not isinstance(getattr(type(obj), "__qualname__", None), str):
        name = None
    if name is None:
        try:
            name = object.__getattribute__(obj, "__qualname__")
        except AttributeError:
            name = None
    if isinstance(name, str) and isinstance(module, str) and not isinstance(obj, type):
        if getattr(type(obj), "__qualname__", None) != name:
            return f"{module}.{name}"
    return f"{_type_name(type(obj))}.__call__"


class _Rewriter(ast.NodeTransformer):
    def visit_Call(self, node: ast.Call):
        self.generic_visit(node)
        key = ast.Tuple([ast.Constant(node.lineno), ast.Constant(node.col_offset),
                         ast.Constant(node.end_lineno), ast.Constant(node.end_col_offset)], ast.Load())
        hooked = ast.Call(ast.Name(HOOK, ast.Load()), [key, node.func], [])
        new = ast.Call(hooked, node.args, node.keywords)
        return ast.copy_location(new, node)


def instrument(source: str) -> ast.Module:
    tree = ast.parse(source)
    tree = _Rewriter().visit(tree)
    return ast.fix_missing_locations(tree)


@dataclass
class TraceResult:
    calls: dict[tuple, set[str]] = field(default_factory=lambda: defaultdict(set))
    error: str | None = None

    def by_line(self) -> dict[int, set[str]]:
        out: dict[int, set[str]] = defaultdict(set)
        for key, names in self.calls.items():
            out[key[0]] |= names
        return dict(out)


def trace_source(source: str, cwd: str | Path | None = None) -> TraceResult:
    result = TraceResult()

    def hook(key, func):
        try:
            result.calls[key].add(runtime_fqn(func))
        except Exception:  # naming must never break the traced program
            result.calls[key].add(f"{_type_name(type(func))}.__call__")
        return func

    code = compile(instrument(source), "<notebook>", "exec")
    module = types.ModuleType(MODULE_NAME)
    module.__dict__[HOOK] = hook
    module.__dict__["__builtins__"] = __builtins__
    old_main = sys.modules.get(MODULE_NAME)
    old_cwd = os.getcwd()
    os.environ.setdefault("MPLBACKEND", "Agg")
    sys.modules[MODULE_NAME] = module
    try:
        if cwd is not None:
            os.chdir(cwd)
        exec(code, module.__dict__)
    except BaseException as exc:  # noqa: BLE001 - record and keep partial trace
        result.error = f"{type(exc).__name__}: {exc}"
    finally:
        os.chdir(old_cwd)
        if old_main is not None:
            sys.modules[MODULE_NAME] = old_main
    return result


def trace_notebook(nb: NotebookDoc, cwd: str | Path | None = None) -> tuple[dict, TraceResult]:
    """Trace *nb*; return truth in report JSON shape plus the raw result."""
    script = flatten(nb)
    result = trace_source(script.text, cwd)
    cells: dict[str, dict[str, list[str]]] = {}
    for line, names in sorted(result.by_line().items()):
        code_index, cell_line = script.map.location(line)
        cells.setdefault(str(code_index), {})[str(cell_line)] = sorted(names)
    return {"cells": cells}, result
