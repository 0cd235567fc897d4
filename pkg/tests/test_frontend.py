import ast

import pytest

from headergen.frontend import AnalysisSyntaxError, build_duc, build_import_table, location_map, parse
from headergen.notebook import flatten

from conftest import notebook


def ir_of(*cells):
    return parse(flatten(notebook(*cells)))


def test_syntax_error_located_in_cell():
    with pytest.raises(AnalysisSyntaxError) as err:
        ir_of("a = 1", "b = 2\nc = (")
    assert (err.value.cell, err.value.cell_line) == (2, 2)


def test_scope_qualnames():
    ir = ir_of("class A:\n    def f(self):\n        g = lambda: 1\n        return [x for x in ()]")
    names = sorted(s.fqn for s in ir.root.walk())
    assert names == ["__main__", "__main__.A", "__main__.A.f", "__main__.A.f.<locals>.<lambda>",
                     "__main__.A.f.<locals>.<listcomp>"]


def test_import_table_aliases():
    ir = ir_of("import numpy as np\nfrom sklearn.model_selection import train_test_split as tts\nimport os.path")
    aliases = build_import_table(ir).aliases
    assert aliases["np"] == "numpy"
    assert aliases["tts"] == "sklearn.model_selection.train_test_split"
    assert aliases["os"] == "os"


def _uses(ir, duc, name):
    return [(n.lineno, sorted(d.line for d in duc.reaching_at(n)))
            for n in ast.walk(ir.tree) if isinstance(n, ast.Name) and n.id == name and isinstance(n.ctx, ast.Load)]


def test_redefinition_kills_earlier_def():
    ir = ir_of("x = 1", "print(x)\nx = 2\nprint(x)")
    assert _uses(ir, build_duc(ir), "x") == [(2, [1]), (4, [3])]


def test_branch_merges_defs():
    ir = ir_of("if c:\n    x = 1\nelse:\n    x = 2\nprint(x)")
    assert _uses(ir, build_duc(ir), "x") == [(5, [2, 4])]


def test_loop_carried_def_reaches_head():
    ir = ir_of("f = 1\nwhile c:\n    f()\n    f = 2")
    assert _uses(ir, build_duc(ir), "f") == [(3, [1, 4])]


def test_comprehension_variable_does_not_leak():
    ir = ir_of("x = 1\ny = [x for x in z]\nprint(x)")
    uses = _uses(ir, build_duc(ir), "x")
    assert (3, [1]) in uses


def test_location_map_governing():
    # keyed on uses: the defs that reach each read of the name
    ir = ir_of("m = 1\nm = 2\nprint(m)\nm = 3\nprint(m)")
    lm = location_map(build_duc(ir))
    assert [d.line for d in lm.governing("m", 3)] == [2]
    assert [d.line for d in lm.governing("m", 5)] == [4]
    assert lm.governing("m", 1) == frozenset()
