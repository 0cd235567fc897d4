import json

import pytest

from headergen.notebook import (PLACEHOLDER, MalformedNotebook, UnsupportedVersion, dumps_notebook, flatten,
                                load_notebook, parse_notebook, sanitize_cell)

from conftest import FIXTURES, notebook


def test_roundtrip_preserves_unknown_fields():
    raw = {"cells": [{"cell_type": "code", "id": "x1", "metadata": {"tags": ["a"]}, "outputs": [],
                      "execution_count": 3, "source": ["a = 1\n", "b = 2"], "extra": True}],
           "metadata": {"kernelspec": {"name": "python3"}}, "nbformat": 4, "nbformat_minor": 5}
    nb = parse_notebook(raw)
    assert nb.to_json() == raw
    assert parse_notebook(json.loads(dumps_notebook(nb))) == nb


def test_code_index_skips_markdown():
    nb = notebook("a = 1", "b = 2", markdown={1: "# title"})
    assert [c.code_index for c in nb.cells] == [1, None, 2]


@pytest.mark.parametrize("doc, err", [
    ({"cells": []}, MalformedNotebook),
    ({"nbformat": 3, "cells": []}, UnsupportedVersion),
    ({"nbformat": 4}, MalformedNotebook),
    ({"nbformat": 4, "cells": [{"source": "x"}]}, MalformedNotebook),
    ({"nbformat": 4, "cells": [{"cell_type": "code", "source": 3}]}, MalformedNotebook),
])
def test_malformed(doc, err):
    with pytest.raises(err):
        parse_notebook(doc)


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.ipynb"
    p.write_text("{nope", encoding="utf-8")
    with pytest.raises(MalformedNotebook):
        load_notebook(p)


def test_sanitize_keeps_line_count():
    src = "%matplotlib inline\nx = 1\n  !ls\nfiles = !ls\ny = 2"
    out = sanitize_cell(src)
    assert out == [PLACEHOLDER, "x = 1", "  " + PLACEHOLDER, PLACEHOLDER, "y = 2"]
    assert sanitize_cell("%%bash\necho hi\nls") == [PLACEHOLDER] * 3
    assert sanitize_cell("%%time\nx = 1") == [PLACEHOLDER, "x = 1"]


def test_flatten_line_map():
    nb = notebook("a = 1\nb = 2", "", "c = 3", markdown={0: "intro"})
    script = flatten(nb)
    assert script.lines == ["a = 1", "b = 2", "c = 3"]
    assert script.map.location(3) == (3, 1)
    assert script.map.script_line(1, 2) == 2
    assert script.code_indices == (1, 2, 3)


def test_fixture_loads():
    nb = load_notebook(FIXTURES / "motivating" / "iris_models.ipynb")
    assert len(nb.code_cells) == 5
