import json
import shutil
import subprocess
import sys

import pytest

from headergen.cli import EXIT_INPUT, EXIT_OK, main
from headergen.notebook import dumps_notebook, load_notebook

from conftest import FIXTURES, notebook

MOTIVATING = FIXTURES / "motivating" / "iris_models.ipynb"


def write_nb(path, *cells):
    path.write_text(dumps_notebook(notebook(*cells)), encoding="utf-8")
    return path


def test_analyze_to_stdout(capsys):
    assert main(["analyze", str(MOTIVATING)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["cells"]["2"]["2"] == ["seaborn.utils.load_dataset"]


def test_analyze_dump_eag(tmp_path):
    dot = tmp_path / "g.dot"
    assert main(["analyze", str(MOTIVATING), "--out", str(tmp_path / "r.json"), "--dump-eag", str(dot)]) == 0
    assert dot.read_text().startswith("digraph")


def test_annotate_default_output(tmp_path):
    src = tmp_path / "nb.ipynb"
    shutil.copy(MOTIVATING, src)
    assert main(["annotate", str(src)]) == EXIT_OK
    out = load_notebook(tmp_path / "nb.annotated.ipynb")
    assert out.cells[0].annotation_marker["kind"] == "index"
    assert load_notebook(src) == load_notebook(MOTIVATING)


def test_annotate_inplace_twice_is_stable(tmp_path):
    src = tmp_path / "nb.ipynb"
    shutil.copy(MOTIVATING, src)
    assert main(["annotate", str(src), "--inplace"]) == 0
    first = src.read_bytes()
    assert main(["annotate", str(src), "--inplace"]) == 0
    assert src.read_bytes() == first


def test_report_only(tmp_path):
    src = write_nb(tmp_path / "a.ipynb", "import numpy as np\nnp.zeros(1)")
    report = tmp_path / "r.json"
    assert main(["annotate", str(src), "--report-only", "--report", str(report)]) == 0
    assert json.loads(report.read_text())["cells"] == {"1": {"2": ["numpy.zeros"]}}
    assert not (tmp_path / "a.annotated.ipynb").exists()


def test_conflicting_modes(tmp_path, capsys):
    src = write_nb(tmp_path / "a.ipynb", "x = 1")
    assert main(["annotate", str(src), "--inplace", "--report-only"]) == EXIT_INPUT
    assert "one output mode" in capsys.readouterr().err


@pytest.mark.parametrize("content, needle", [
    ("{not json", "invalid JSON"),
    ('{"nbformat": 3, "cells": []}', "not supported"),
])
def test_bad_notebook_exit_2(tmp_path, capsys, content, needle):
    p = tmp_path / "bad.ipynb"
    p.write_text(content, encoding="utf-8")
    assert main(["analyze", str(p)]) == EXIT_INPUT
    assert needle in capsys.readouterr().err


def test_syntax_error_reports_cell(tmp_path, capsys):
    src = write_nb(tmp_path / "s.ipynb", "x = 1", "y = (")
    assert main(["analyze", str(src)]) == EXIT_INPUT
    assert "cell 2, line 1" in capsys.readouterr().err


def test_missing_file_exit_2(tmp_path):
    assert main(["analyze", str(tmp_path / "none.ipynb")]) == EXIT_INPUT


def test_bad_stub_dir_exit_2(tmp_path):
    (tmp_path / "x.stub.json").write_text('{"package": 1}', encoding="utf-8")
    assert main(["analyze", str(MOTIVATING), "--stubs", str(tmp_path)]) == EXIT_INPUT


def test_bad_taxonomy_exit_2(tmp_path):
    tax = tmp_path / "t.json"
    tax.write_text("[]", encoding="utf-8")
    assert main(["analyze", str(MOTIVATING), "--taxonomy", str(tax)]) == EXIT_INPUT


def test_batch_continues_past_failures(tmp_path, capsys):
    write_nb(tmp_path / "a.ipynb", "import numpy as np")
    (tmp_path / "b.ipynb").write_text("{broken", encoding="utf-8")
    write_nb(tmp_path / "c.ipynb", "print(1)")
    outdir = tmp_path / "out"
    assert main(["annotate", str(tmp_path), "--out", str(outdir)]) == EXIT_INPUT
    assert sorted(p.name for p in outdir.iterdir()) == ["a.ipynb", "c.ipynb"]
    assert "failed" in capsys.readouterr().err


def test_eval(tmp_path, capsys):
    rep, truth = tmp_path / "r.json", tmp_path / "t.json"
    rep.write_text(json.dumps({"cells": {"1": {"1": ["a", "b", "c"]}}}))
    truth.write_text(json.dumps({"cells": {"1": {"1": ["a", "b", "d"]}}}))
    assert main(["eval", "--report", str(rep), "--truth", str(truth)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["precision"] == doc["recall"] == round(2 / 3, 6)


def test_eval_bad_truth(tmp_path):
    rep, truth = tmp_path / "r.json", tmp_path / "t.json"
    rep.write_text(json.dumps({"cells": {}}))
    truth.write_text(json.dumps({"cells": {"1": "x"}}))
    assert main(["eval", "--report", str(rep), "--truth", str(truth)]) == EXIT_INPUT


def test_bench_json(capsys):
    assert main(["bench", str(FIXTURES / "micro" / "flow_sensitive"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total"] == doc["sound"] == doc["complete"] == 8


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "headergen", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "annotate" in out.stdout
