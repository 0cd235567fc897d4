"""Write the test fixtures and freeze their ground truth with the tracing oracle.

Every ``truth.json`` written here comes from executing the notebook with
``headergen.tracer`` (each call's runtime callee), never from the static
analysis.  Run from the repository root::

    python3 tools/make_fixtures.py [micro|motivating|listing1|table2|corpus|perf|all]
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import shutil
import sys
from pathlib import Path

os.environ.setdefault("MPLBACKEND", "Agg")
os.environ.setdefault("KERAS_BACKEND", "jax")
os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "3")

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tools"))

from headergen.notebook import parse_notebook  # noqa: E402
from headergen.tracer import trace_notebook  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
CELL_SEP = "# %%\n"


def split_cells(source: str) -> list[str]:
    return [c.strip("\n") for c in source.strip("\n").split(CELL_SEP)]


def notebook_json(cells: list, markdown: dict[int, str] | None = None) -> dict:
    """*cells* are code sources; *markdown* maps a position to a markdown cell inserted before it."""
    out = []
    markdown = markdown or {}
    for i, src in enumerate(cells):
        if i in markdown:
            out.append({"cell_type": "markdown", "id": f"m{i + 1}", "metadata": {},
                        "source": markdown[i].splitlines(keepends=True)})
        out.append({"cell_type": "code", "execution_count": None, "id": f"c{i + 1}", "metadata": {},
                    "outputs": [], "source": src.splitlines(keepends=True)})
    return {"cells": out, "metadata": {"kernelspec": {"display_name": "Python 3", "language": "python",
                                                      "name": "python3"}},
            "nbformat": 4, "nbformat_minor": 5}


def dump(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def write_case(case_dir: Path, cells: list[str], name: str = "notebook", meta: dict | None = None,
               markdown: dict[int, str] | None = None, trace: bool = True, env: dict | None = None):
    case_dir.mkdir(parents=True, exist_ok=True)
    doc = notebook_json(cells, markdown)
    dump(case_dir / f"{name}.ipynb", doc)
    if meta is not None:
        dump(case_dir / "case.json", meta)
    if not trace:
        return None
    saved = {k: os.environ.get(k) for k in (env or {})}
    os.environ.update(env or {})
    try:
        truth, result = trace_notebook(parse_notebook(doc), cwd=case_dir)
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    if result.error:
        raise RuntimeError(f"{case_dir}: oracle run failed: {result.error}")
    dump(case_dir / "truth.json", truth)
    return truth


# -- suites


def make_micro():
    from cases import flow, micro_a, micro_b

    root = FIXTURES / "micro"
    shutil.rmtree(root, ignore_errors=True)
    n = 0
    for module in (micro_a, micro_b, flow):
        for group, cases in vars(module).items():
            if not group.isupper():
                continue
            category = group.lower()
            for name, src in cases.items():
                write_case(root / category / name, split_cells(src), "case", {"category": category})
                n += 1
    print(f"micro: {n} cases")


MOTIVATING = [
    """import numpy as np
import seaborn as sns
import matplotlib.pyplot as plt
from sklearn.linear_model import LogisticRegressionCV
from sklearn.model_selection import train_test_split
from keras.models import Sequential
from keras.layers import Dense""",
    """%matplotlib inline
iris_dataset = sns.load_dataset("iris")
iris_dataset = iris_dataset[["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]]
X = iris_dataset.values[:, :4].astype(np.float64)
y = iris_dataset.species.map({"setosa": 0, "versicolor": 1, "virginica": 2}).values
iris_dataset.isnull().sum()
print(X.shape, y.shape)""",
    """X_train, X_test, y_train, y_test = train_test_split(X, y, test_size=0.3, random_state=0)""",
    """model = LogisticRegressionCV(max_iter=1000)
model.fit(X_train, y_train)
print("accuracy:", model.score(X_test, y_test))""",
    """model = Sequential()
model.add(Dense(16, activation="relu"))
model.add(Dense(3, activation="softmax"))
model.compile(optimizer="adam", loss="sparse_categorical_crossentropy", metrics=["accuracy"])
model.fit(X_train, y_train, epochs=5, verbose=0)
loss, accuracy = model.evaluate(X_test, y_test, verbose=0)
print("accuracy:", accuracy)""",
]


def write_iris(path: Path):
    from sklearn.datasets import load_iris

    data = load_iris()
    names = ["setosa", "versicolor", "virginica"]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for row, target in zip(data.data, data.target):
            w.writerow([f"{v:.1f}" for v in row] + [names[target]])


def make_motivating():
    case = FIXTURES / "motivating"
    case.mkdir(parents=True, exist_ok=True)
    write_iris(case / "iris.csv")
    write_case(case, MOTIVATING, "iris_models", env={"SEABORN_DATA": str(case)})
    print("motivating: ok")


LISTING1 = """import pandas as pd

df = pd.read_csv("./input.csv")
x1 = df["a"].map(lambda x: x + 1.0)
x2 = df.iloc[[False]].reset_index().copy()
x3 = df.a.fillna(0)
x4 = df.groupby(["a"])[["b"]].agg({"b": ["min"]})
x5 = df[["b", "c"]]
x6 = df.c.values.astype(int)"""


def make_listing1():
    case = FIXTURES / "listing1"
    case.mkdir(parents=True, exist_ok=True)
    (case / "input.csv").write_text("a,b,c\n1.0,2,3\n", encoding="utf-8")  # iloc[[False]] needs one row
    write_case(case, [LISTING1], "listing1")
    print("listing1: ok")


TABLE2_SETUP = """import pandas as pd

df = pd.DataFrame({"x": [1, 2, 3], "y": [4, 5, 6]})"""
# the five rows verbatim, one per cell
TABLE2_ROWS = [
    "df['xy'] = df.x * df.y",
    "df.x = 1",
    "df.x[df.x == 1] = 1",
    "x = df.x[['f1', 'f2']]",
    "print(df[0:20])",
]
TABLE2_USER = """class Frame:
    def __init__(self):
        self.x = 1
        self.y = 2

df = Frame()"""


def make_table2():
    case = FIXTURES / "table2"
    case.mkdir(parents=True, exist_ok=True)
    # row 4 indexes a Series by labels it does not have, so these are not executed
    write_case(case / "dataframe", [TABLE2_SETUP] + TABLE2_ROWS, "patterns", trace=False)
    write_case(case / "user_class", [TABLE2_USER] + TABLE2_ROWS, "patterns", trace=False)
    print("table2: ok")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("suite", nargs="?", default="all",
                        choices=["micro", "motivating", "listing1", "table2", "corpus", "perf", "all"])
    args = parser.parse_args()
    suites = {"micro": make_micro, "motivating": make_motivating, "listing1": make_listing1,
              "table2": make_table2}
    try:
        from corpus import make_corpus, make_perf
        suites.update(corpus=make_corpus, perf=make_perf)
    except ImportError:
        pass
    for name, fn in suites.items():
        if args.suite in (name, "all"):
            fn()


if __name__ == "__main__":
    main()
