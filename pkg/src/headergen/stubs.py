"""Declarative type stubs for external libraries.

A stub file describes one package::

    {"package": "seaborn",
     "exports": {"seaborn.load_dataset": "seaborn.utils.load_dataset"},
     "functions": {"seaborn.utils.load_dataset": {"returns": ["pandas.core.frame.DataFrame"]}},
     "classes": {"...": {"attributes": {"name": "type"}, "methods": {"name": {"returns": [...]}}}}}

Export tables map public (importable) names to the fqn that defines them and
replace runtime reflection.  A target may also be a method
(``Class.member``), which covers method aliases such as ``agg`` for
``aggregate`` and module functions that are bound methods of a hidden object.
The return type ``typing.Any`` marks a callable whose result is not modelled.  A type string may carry element types for
sequences, e.g. ``builtins.list[numpy.ndarray, pandas.core.series.Series]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .frontend import ImportTable

STUB_SUFFIX = ".stub.json"
DOCSTRING_FILE = "docstrings.json"

_TOP_KEYS = {"package", "exports", "functions", "classes"}
_FUNC_KEYS = {"returns"}
_CLASS_KEYS = {"attributes", "methods"}


class StubError(ValueError):
    pass


class StubFormatError(StubError):
    def __init__(self, file: str, path: str, msg: str):
        super().__init__(f"{file}: {path}: {msg}")
        self.file = file
        self.path = path


class DuplicateFqn(StubError):
    pass


@dataclass(frozen=True)
class FunctionStub:
    fqn: str
    returns: tuple[str, ...]


@dataclass(frozen=True)
class ClassStub:
    fqn: str
    attributes: dict[str, str] = field(default_factory=dict, hash=False)
    methods: dict[str, FunctionStub] = field(default_factory=dict, hash=False)


@dataclass
class PackageStub:
    package_name: str
    exports: dict[str, str] = field(default_factory=dict)
    functions: dict[str, FunctionStub] = field(default_factory=dict)
    classes: dict[str, ClassStub] = field(default_factory=dict)
    source: str = ""


Member = Union[str, FunctionStub]


def split_type(type_str: str) -> tuple[str, tuple[str, ...]]:
    """``"a.list[b, c]"`` -> ``("a.list", ("b", "c"))``."""
    if not type_str.endswith("]") or "[" not in type_str:
        return type_str, ()
    base, _, rest = type_str.partition("[")
    inner = rest[:-1]
    parts, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return base, tuple(parts)


class TypeStubDB:
    def __init__(self, packages: list[PackageStub] = ()):
        self.packages: list[PackageStub] = []
        self.exports: dict[str, str] = {}
        self.functions: dict[str, FunctionStub] = {}
        self.classes: dict[str, ClassStub] = {}
        self._origin: dict[str, str] = {}
        for pkg in packages:
            self.add(pkg)
        self.validate()

    def add(self, pkg: PackageStub):
        for table, kind in ((pkg.exports, "export"), (pkg.functions, "function"), (pkg.classes, "class")):
            for fqn in table:
                key = (kind == "export", fqn)
                if key in self._origin:
                    raise DuplicateFqn(f"{fqn} declared in both {self._origin[key]} and {pkg.source or pkg.package_name}")
                self._origin[key] = pkg.source or pkg.package_name
        for fqn in pkg.functions:
            if fqn in pkg.classes or fqn in self.classes:
                raise DuplicateFqn(f"{fqn} declared as both function and class")
        for fqn in pkg.classes:
            if fqn in self.functions:
                raise DuplicateFqn(f"{fqn} declared as both function and class")
        self.packages.append(pkg)
        self.exports.update(pkg.exports)
        self.functions.update(pkg.functions)
        self.classes.update(pkg.classes)

    def validate(self):
        for public in self.exports:
            self._follow(public, strict=True)

    def is_method(self, fqn: str) -> bool:
        owner, _, name = fqn.rpartition(".")
        cls = self.classes.get(owner)
        return cls is not None and name in cls.methods

    def _declared(self, fqn: str) -> bool:
        return fqn in self.functions or fqn in self.classes or self.is_method(fqn)

    def _follow(self, path: str, strict: bool = False) -> str | None:
        seen = [path]
        while not self._declared(path):
            nxt = self.exports.get(path)
            if nxt is None:
                if strict:
                    raise StubFormatError(self._origin.get((True, seen[0]), "?"), f"exports.{seen[0]}",
                                          f"target {path!r} is not a declared function or class")
                return None
            if nxt in seen:
                cycle = " -> ".join(seen + [nxt])
                raise StubFormatError(self._origin.get((True, seen[0]), "?"), f"exports.{seen[0]}",
                                      f"cyclic export table: {cycle}")
            seen.append(nxt)
            path = nxt
        return path

    def __len__(self) -> int:
        return len(self.functions) + len(self.classes)

    # lookups

    def resolve(self, path: str) -> str | None:
        """Follow export tables from a dotted path to the defining fqn."""
        return self._follow(path)

    def is_function(self, fqn: str) -> bool:
        return fqn in self.functions or self.is_method(fqn)

    def is_class(self, fqn: str) -> bool:
        return fqn in self.classes

    def return_type(self, fqn: str) -> list[str] | None:
        stub = self.functions.get(fqn)
        if stub is None:
            owner, _, name = fqn.rpartition(".")
            cls = self.classes.get(owner)
            if cls is not None:
                stub = cls.methods.get(name)
        if stub is None:
            return None
        return list(stub.returns)

    def member_type(self, class_fqn: str, member: str) -> Member | None:
        cls = self.classes.get(class_fqn)
        if cls is None:
            return None
        if member in cls.attributes:
            return cls.attributes[member]
        return cls.methods.get(member)

    def star_names(self, module: str) -> set[str]:
        prefix = module + "."
        names = set()
        for public in list(self.exports) + list(self.functions) + list(self.classes):
            if public.startswith(prefix) and "." not in public[len(prefix):]:
                names.add(public[len(prefix):])
        return names


def _check_returns(file: str, where: str, entry) -> tuple[str, ...]:
    if not isinstance(entry, dict):
        raise StubFormatError(file, where, "expected an object")
    unknown = set(entry) - _FUNC_KEYS
    if unknown:
        raise StubFormatError(file, where, f"unknown keys {sorted(unknown)}")
    returns = entry.get("returns")
    if not isinstance(returns, list) or not returns or not all(isinstance(r, str) and r for r in returns):
        raise StubFormatError(file, f"{where}.returns", "must be a non-empty list of type names")
    return tuple(sorted(set(returns)))


def _check_map(file: str, where: str, value) -> dict:
    if not isinstance(value, dict):
        raise StubFormatError(file, where, "expected an object")
    return value


def parse_stub(data, file: str = "<memory>") -> PackageStub:
    if not isinstance(data, dict):
        raise StubFormatError(file, "$", "expected an object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise StubFormatError(file, "$", f"unknown keys {sorted(unknown)}")
    name = data.get("package")
    if not isinstance(name, str) or not name:
        raise StubFormatError(file, "package", "must be a non-empty string")
    pkg = PackageStub(name, source=file)
    for public, target in _check_map(file, "exports", data.get("exports", {})).items():
        if not isinstance(target, str) or not target:
            raise StubFormatError(file, f"exports.{public}", "target must be a string")
        pkg.exports[public] = target
    for fqn, entry in _check_map(file, "functions", data.get("functions", {})).items():
        pkg.functions[fqn] = FunctionStub(fqn, _check_returns(file, f"functions.{fqn}", entry))
    for fqn, entry in _check_map(file, "classes", data.get("classes", {})).items():
        where = f"classes.{fqn}"
        entry = _check_map(file, where, entry)
        unknown = set(entry) - _CLASS_KEYS
        if unknown:
            raise StubFormatError(file, where, f"unknown keys {sorted(unknown)}")
        attrs = _check_map(file, f"{where}.attributes", entry.get("attributes", {}))
        for attr, typ in attrs.items():
            if not isinstance(typ, str) or not typ:
                raise StubFormatError(file, f"{where}.attributes.{attr}", "must be a type name")
        methods = {}
        for mname, mentry in _check_map(file, f"{where}.methods", entry.get("methods", {})).items():
            methods[mname] = FunctionStub(f"{fqn}.{mname}",
                                          _check_returns(file, f"{where}.methods.{mname}", mentry))
        pkg.classes[fqn] = ClassStub(fqn, dict(attrs), methods)
    return pkg


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def load_stub_file(path: str | Path) -> PackageStub:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"), object_pairs_hook=_reject_duplicate_keys)
    except (ValueError, UnicodeDecodeError) as exc:
        raise StubFormatError(str(path), "$", f"invalid JSON ({exc})") from None
    return parse_stub(data, str(path))


def load_stub_db(directory: str | Path) -> TypeStubDB:
    directory = Path(directory)
    if not directory.is_dir():
        raise StubError(f"stub directory {directory} does not exist")
    files = sorted(directory.glob("*" + STUB_SUFFIX))
    return TypeStubDB([load_stub_file(f) for f in files])


def load_docstrings(directory: str | Path) -> dict[str, str]:
    path = Path(directory) / DOCSTRING_FILE
    if not path.exists():
        return {}
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
        raise StubFormatError(str(path), "$", "expected a map of fqn to text")
    return data


def default_stub_dir() -> Path:
    return Path(__file__).parent / "data" / "stubs"


def resolve_fqn(imports: ImportTable, dotted_call: str, db: TypeStubDB) -> str | None:
    """Expand the import alias at the head of *dotted_call* and resolve it."""
    head, _, rest = dotted_call.partition(".")
    aliases = imports.aliases
    if head in aliases:
        path = aliases[head] + ("." + rest if rest else "")
    else:
        path = dotted_call
    return db.resolve(path)
