"""Property tests over generated notebooks."""

import json
import os
import subprocess
import sys

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from headergen.annotate import strip_annotations
from headergen.notebook import dumps_notebook, flatten, parse_notebook
from headergen.pipeline import analyze, annotate

from conftest import FIXTURES, notebook

# statement templates; every name used is bound by the prelude
STATEMENTS = [
    "x = np.zeros(3)",
    "x = x.reshape(3, 1)",
    "df = pd.DataFrame({'a': [1, 2]})",
    "df = df.dropna()",
    "df['b'] = df.a * df.a",
    "print(df[0:2])",
    "m = LinearRegression()",
    "m.fit(x, x)",
    "f = helper",
    "f()",
    "plt.plot([1, 2])",
    "if x is None:\n    f = other\nf()",
    "for i in range(2):\n    x = np.ones(i)",
    "y = [helper() for _ in range(2)]",
    "%matplotlib inline",
    "!ls",
]
PRELUDE = ("import numpy as np\nimport pandas as pd\nimport matplotlib.pyplot as plt\n"
           "from sklearn.linear_model import LinearRegression\n"
           "def helper():\n    return np.ones(1)\ndef other():\n    pass\nx = None\ndf = None\nm = None\nf = helper")

cells_st = st.lists(st.lists(st.sampled_from(STATEMENTS), min_size=0, max_size=4).map("\n".join),
                    min_size=0, max_size=5)
text_st = st.text(st.characters(blacklist_categories=("Cs",)), max_size=40)
FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])


@given(st.lists(st.tuples(st.sampled_from(["code", "markdown", "raw"]), text_st), max_size=6))
@FAST
def test_notebook_roundtrip(cells):
    raw = {"cells": [{"cell_type": k, "metadata": {}, "source": s} for k, s in cells],
           "metadata": {}, "nbformat": 4, "nbformat_minor": 4}
    nb = parse_notebook(raw)
    assert parse_notebook(json.loads(dumps_notebook(nb))) == nb


@given(cells_st)
@FAST
def test_line_map_bijection(cells):
    script = flatten(notebook(*cells))
    n = len(script.lines)
    assert len(script.map) == n
    locations = [script.map.location(i) for i in range(1, n + 1)]
    assert len(set(locations)) == n
    for i, (ci, cl) in enumerate(locations, start=1):
        assert script.map.script_line(ci, cl) == i
        assert script.lines[i - 1].strip() in (notebook(*cells).code_cells[ci - 1].lines[cl - 1].strip(), "pass")


@given(cells_st)
@FAST
def test_annotation_idempotent(res, cells):
    nb = notebook(PRELUDE, *cells)
    once, _ = annotate(nb, res)
    twice, _ = annotate(once, res)
    assert dumps_notebook(once) == dumps_notebook(twice)
    assert strip_annotations(once) == nb


@given(cells_st)
@FAST
def test_analysis_total_and_located(res, cells):
    nb = notebook(PRELUDE, *cells)
    a = analyze(nb, res)
    n_cells = len(nb.code_cells)
    for ci, line, fqn in a.report.pairs():
        assert 1 <= ci <= n_cells
        assert 1 <= line <= len(nb.code_cells[ci - 1].lines)
        assert fqn
    for ci in a.classification.subs:
        assert a.classification.tops(ci)


def _cli_outputs(tmp, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    out = {}
    for case in ("motivating/iris_models.ipynb", "corpus/churn/churn.ipynb", "listing1/listing1.ipynb"):
        dst = tmp / f"{seed}-{case.replace('/', '_')}"
        subprocess.run([sys.executable, "-m", "headergen", "annotate", str(FIXTURES / case), "--out", str(dst),
                        "--report", str(dst) + ".json"], check=True, env=env)
        out[case] = (dst.read_bytes(), (tmp / (dst.name + ".json")).read_bytes())
    return out


def test_deterministic_across_hash_seeds(tmp_path):
    assert _cli_outputs(tmp_path, 1) == _cli_outputs(tmp_path, 2)
