from headergen.callgraph import UNRESOLVED
from headergen.pipeline import Resources, analyze
from headergen.stubs import TypeStubDB, parse_stub

from conftest import load_fixture, notebook


def fqns(analysis, cell, line):
    return sorted(f for c, ln, f in analysis.report.pairs() if (c, ln) == (cell, line))


def type_names(values):
    return sorted(getattr(v, "fqn", None) or type(v).__name__ for v in values)


def test_strong_update(run):
    a = run("class A:\n    def f(self): pass\nclass B:\n    def f(self): pass\nm = A()\nm = B()\nm.f()")
    assert fqns(a, 1, 7) == ["__main__.B.f"]


def test_weak_update_under_branch(run):
    a = run("class A:\n    def f(self): pass\nclass B:\n    def f(self): pass\n"
            "m = A()\nif c:\n    m = B()\nm.f()")
    assert fqns(a, 1, 8) == ["__main__.A.f", "__main__.B.f"]


def test_chained_external_calls(run):
    a = run("import pandas as pd\ndf = pd.read_csv('x.csv')", "y = df.c.values.astype(int)")
    assert fqns(a, 2, 1) == ["numpy.ndarray.astype"]


def test_listing1_types(res):
    a = analyze(load_fixture("listing1/listing1.ipynb"), res)
    expected = {"df": "pandas.core.frame.DataFrame", "x1": "pandas.core.series.Series",
                "x2": "pandas.core.frame.DataFrame", "x3": "pandas.core.series.Series",
                "x4": "pandas.core.frame.DataFrame", "x5": "pandas.core.frame.DataFrame",
                "x6": "numpy.ndarray"}
    for line, (name, want) in enumerate(expected.items(), start=3):
        assert type_names(a.eag.points_to(name, line)) == [want], name
    # use site of df on the next line
    assert type_names(a.eag.points_to("df", 4)) == ["pandas.core.frame.DataFrame"]


def test_declared_member_beats_guess_on_union(run):
    a = run("import matplotlib.pyplot as plt\nfig, axes = plt.subplots(2, 2)\nflat = axes.ravel()")
    assert fqns(a, 1, 3) == ["numpy.ndarray.ravel"]


def test_unknown_library_is_unresolved(run):
    a = run("import nosuchlib\nnosuchlib.go()")
    assert fqns(a, 1, 2) == [UNRESOLVED]


def test_fixed_point_is_stable(res):
    nb = load_fixture("motivating/iris_models.ipynb")
    assert analyze(nb, res).report.pairs() == analyze(nb, res).report.pairs()


def test_zero_stub_db_degrades(res):
    empty = Resources(TypeStubDB([]), res.taxonomy)
    a = analyze(notebook("import pandas as pd\ndf = pd.read_csv('x')\ndf.head()"), empty)
    assert fqns(a, 1, 3) == [UNRESOLVED]


def test_more_stubs_never_remove_facts(res):
    src = ("def f():\n    pass\ng = f\ng()\nimport numpy as np\nz = np.zeros(2)")
    small = TypeStubDB([parse_stub({"package": "numpy", "functions": {"numpy.zeros": {"returns":
                                                                                  ["numpy.ndarray"]}}})])
    a_small = analyze(notebook(src), Resources(small, res.taxonomy))
    a_full = analyze(notebook(src), res)
    user = {p for p in a_small.report.pairs() if p[2].startswith("__main__")}
    assert user <= a_full.report.pairs()
    assert fqns(a_small, 1, 6) == fqns(a_full, 1, 6) == ["numpy.zeros"]


def test_dot_dump(run):
    dot = run("def f():\n    pass\nf()").eag.to_dot()
    assert dot.startswith("digraph")
