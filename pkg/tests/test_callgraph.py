import json

import pytest

from headergen.callgraph import (TRANSITIVE, UNRESOLVED, CallSite, CallSiteReport, PrecisionRecall,
                                 TruthFormatError, average, load_truth, pairs_from_json, score)
from headergen.pipeline import analyze

from conftest import load_fixture


def transitive(analysis, cell):
    return analysis.report.fqns_by_cell(TRANSITIVE).get(cell, set())


def test_motivating_load_dataset(res):
    a = analyze(load_fixture("motivating/iris_models.ipynb"), res)
    assert (2, 2, "seaborn.utils.load_dataset") in a.report.pairs()


def test_chained_call_line(res):
    a = analyze(load_fixture("motivating/iris_models.ipynb"), res)
    assert {f for c, ln, f in a.report.pairs() if (c, ln) == (2, 4)} == {"numpy.ndarray.astype"}


def test_flow_sensitive_fit(res):
    a = analyze(load_fixture("motivating/iris_models.ipynb"), res)
    fits = {c: f for c, ln, f in a.report.pairs() if f.endswith(".fit")}
    assert fits[4] == "sklearn.linear_model._logistic.LogisticRegressionCV.fit"
    assert fits[5] == "keras.src.models.sequential.Sequential.fit"


def test_undefined_name(run):
    assert run("ghost()").report.pairs() == {(1, 1, UNRESOLVED)}


def test_transitive_across_cells(run):
    a = run("import pandas as pd\ndef prep():\n    return pd.read_csv('x.csv')", "df = prep()")
    assert transitive(a, 2) == {"pandas.io.parsers.readers.read_csv"}
    assert (2, 1, "__main__.prep") in a.report.pairs()


def test_empty_body_adds_nothing(run):
    a = run("def f():\n    pass", "f()")
    assert transitive(a, 2) == set()


def test_mutual_recursion_terminates(run):
    a = run("import numpy as np\nimport pandas as pd\n"
            "def f(n):\n    np.zeros(1)\n    return g(n - 1) if n else 0\n"
            "def g(n):\n    pd.isna(n)\n    return f(n - 1) if n else 0", "f(3)")
    # hand closure of {f, g}: both externals plus the user edges
    assert transitive(a, 2) == {"numpy.zeros", "pandas.core.dtypes.missing.isna", "__main__.f", "__main__.g"}


def test_report_json_shape(run):
    doc = run("def f():\n    len([])", "f()").report.to_json()
    assert doc["cells"] == {"1": {"2": ["builtins.len"]}, "2": {"1": ["__main__.f"]}}
    assert doc["transitive"] == {"2": {"1": ["builtins.len"]}}


def test_callsite_needs_callee():
    with pytest.raises(ValueError):
        CallSite((1, 1), ())


def test_score_examples():
    found = {(1, 1, "a"), (1, 1, "b"), (1, 1, "c")}
    truth = {(1, 1, "a"), (1, 1, "b"), (1, 1, "d")}
    pr = score(found, truth)
    assert (pr.precision, pr.recall) == (pytest.approx(2 / 3), pytest.approx(2 / 3))
    assert score(truth, truth) == PrecisionRecall(3, 0, 0)
    empty = score(set(), set())
    assert (empty.precision, empty.recall) == (1.0, 1.0)


def test_unresolved_never_counts():
    pr = score({(1, 1, UNRESOLVED)}, {(1, 1, UNRESOLVED)})
    assert (pr.tp, pr.fp, pr.fn) == (0, 1, 1)


def test_score_accepts_report_json():
    report = CallSiteReport({1: [CallSite((1, 2), ("x.y",))]})
    assert score(report.to_json(), {(1, 2, "x.y")}).tp == 1


def test_average_per_notebook():
    p, r = average([PrecisionRecall(1, 0, 1), PrecisionRecall(1, 1, 0)])
    assert (p, r) == (0.75, 0.75)
    assert average([]) == (1.0, 1.0)


@pytest.mark.parametrize("doc", [[], {"cells": []}, {"cells": {"1": []}}, {"cells": {"a": {"1": ["f"]}}},
                                 {"cells": {"1": {"1": "f"}}}, {"cells": {"1": {"1": [""]}}}])
def test_truth_format_errors(doc):
    with pytest.raises(TruthFormatError):
        pairs_from_json(doc)


def test_load_truth_bad_json(tmp_path):
    p = tmp_path / "t.json"
    p.write_text("{", encoding="utf-8")
    with pytest.raises(TruthFormatError):
        load_truth(p)


def test_dumps_is_sorted(run):
    text = run("print(1)\nlen([])").report.dumps()
    assert json.loads(text) == {"cells": {"1": {"1": ["builtins.print"], "2": ["builtins.len"]}}}
