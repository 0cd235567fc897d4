import json

from headergen.bench import header_pairs, load_header_truth, run_bench, score_headers
from headergen.notebook import dumps_notebook
from headergen.tracer import trace_notebook, trace_source

from conftest import notebook


def make_case(root, name, cells, truth):
    case = root / name
    case.mkdir(parents=True)
    (case / "case.ipynb").write_text(dumps_notebook(notebook(*cells)), encoding="utf-8")
    (case / "truth.json").write_text(json.dumps(truth), encoding="utf-8")
    (case / "case.json").write_text(json.dumps({"category": "demo"}), encoding="utf-8")
    return case


def test_bench_sound_complete_and_errors(res, tmp_path):
    make_case(tmp_path, "good", ["def f():\n    pass\nf()"], {"cells": {"1": {"3": ["__main__.f"]}}})
    make_case(tmp_path, "missing", ["def f():\n    pass\nf()"],
              {"cells": {"1": {"3": ["__main__.f", "__main__.g"]}}})
    bad = make_case(tmp_path, "broken", ["x = 1"], {"cells": {}})
    (bad / "truth.json").write_text("{", encoding="utf-8")
    result = run_bench(tmp_path, res)
    by = {c.name: c for c in result.cases}
    assert by["good"].sound and by["good"].complete
    assert not by["missing"].sound and by["missing"].complete
    assert by["missing"].missing == [(1, 3, "__main__.g")]
    assert by["broken"].error and not by["broken"].sound
    assert result.table().splitlines()[-1] == "sound 1/3, complete 2/3"
    assert result.to_json()["total"] == 3


def test_header_scoring(run, tmp_path):
    c = run("import numpy as np", "x = np.reshape(np.zeros(4), (2, 2))").classification
    assert header_pairs(c) == {(1, "Generic Operations"), (2, "Data Preparation and Exploration"),
                               (2, "Feature Engineering")}
    p = tmp_path / "h.json"
    p.write_text(json.dumps({"cells": {"1": ["Generic Operations"], "2": ["Model Building and Training"]}}))
    pr = score_headers(c, load_header_truth(p))
    assert (pr.tp, pr.fp, pr.fn) == (1, 2, 1)


def test_oracle_names_runtime_callees():
    result = trace_source("class A:\n    def f(self):\n        return len([])\nA().f()\nsorted([2, 1])")
    assert result.error is None
    assert result.by_line() == {3: {"builtins.len"}, 4: {"__main__.A", "__main__.A.f"},
                                5: {"builtins.sorted"}}


def test_oracle_notebook_coordinates():
    truth, result = trace_notebook(notebook("def g():\n    pass", "%time x = 1\ng()"))
    assert truth == {"cells": {"2": {"2": ["__main__.g"]}}}


def test_oracle_records_error():
    assert trace_source("1 / 0").error.startswith("ZeroDivisionError")
