import json

import pytest

from headergen.classify import (TaxonomyError, classify_callsite, default_taxonomy_path, load_taxonomy,
                                parse_taxonomy)
from headergen.pipeline import analyze

from conftest import load_fixture

DPE = "Data Preparation and Exploration"
MBT = "Model Building and Training"
GEN = "Generic Operations"
FE = "Feature Engineering"

SMALL = {"categories": {"T": ["a", "b"], "U": ["c"]}, "rules": {"x.*": ["a"], "x.y.*": ["b"], "x.y.z": ["c"]},
         "table2_mapping": {"Feature Engineering": "a", "Data Preparation": "b"}}


@pytest.fixture(scope="module")
def tax():
    return load_taxonomy(default_taxonomy_path())


def test_shipped_taxonomy_has_four_tops(tax):
    assert tax.taxonomy.tops == [GEN, DPE, FE, MBT]
    assert tax.taxonomy.parent("Data Sub-sampling and Train-test Splitting") == DPE


def test_exact_beats_longest_prefix():
    db = parse_taxonomy(SMALL)
    assert classify_callsite(db, "x.y.z") == {"c"}
    assert classify_callsite(db, "x.y.w") == {"b"}
    assert classify_callsite(db, "x.q") == {"a"}
    assert classify_callsite(db, "other") == frozenset()


def test_multi_category_rule(tax):
    subs = classify_callsite(tax, "numpy.reshape")
    assert subs == {"Data Cleaning Filtering", "Feature Transformation"}


def test_plot_rule(tax):
    assert classify_callsite(tax, "matplotlib.pyplot.plot") == {"Visualization"}


@pytest.mark.parametrize("mutate, msg", [
    (lambda d: d["categories"].update(V=["a"]), "not unique"),
    (lambda d: d["rules"].update({"q": ["nope"]}), "unknown sub-category"),
    (lambda d: d["rules"].update({"q": []}), "no category"),
    (lambda d: d["categories"].update(W=[]), "no sub-categories"),
    (lambda d: d.pop("table2_mapping"), "table2_mapping"),
    (lambda d: d.update(extra=1), "expected keys"),
])
def test_taxonomy_errors(mutate, msg):
    data = json.loads(json.dumps(SMALL))
    mutate(data)
    with pytest.raises(TaxonomyError, match=msg):
        parse_taxonomy(data)


def test_duplicate_rule_key(tmp_path):
    p = tmp_path / "t.json"
    p.write_text('{"categories": {"T": ["a"]}, "rules": {"x": ["a"], "x": ["a"]}, "table2_mapping": {}}')
    with pytest.raises(TaxonomyError, match="duplicate"):
        load_taxonomy(p)


def test_missing_taxonomy_file(tmp_path):
    with pytest.raises(TaxonomyError):
        load_taxonomy(tmp_path / "none.json")


def test_table2_patterns(res):
    a = analyze(load_fixture("table2/dataframe/patterns.ipynb"), res)
    got = {h.location[0]: (h.pattern_id, set(h.categories)) for h in a.hits}
    assert got == {2: (1, {"Feature Transformation"}),
                   3: (2, {"Feature Transformation", "Data Cleaning Filtering"}),
                   4: (3, {"Feature Transformation", "Data Cleaning Filtering"}),
                   5: (4, {"Feature Selection"}),
                   6: (5, {"Exploratory Data Analysis"})}


def test_type_guard(res):
    assert analyze(load_fixture("table2/user_class/patterns.ipynb"), res).hits == []


def test_column_list_variable(run):
    a = run("import pandas as pd\ndf = pd.read_csv('x')\ncols = [c for c in df.columns]\nX = df[cols].values")
    assert [h.pattern_id for h in a.hits] == [4]


def test_motivating_cells(res):
    c = analyze(load_fixture("motivating/iris_models.ipynb"), res).classification
    assert c.tops(1) == [GEN]
    assert c.tops(3) == [DPE]
    assert c.tops(5) == [MBT]
    assert 5 in c.cells_for("Model Training")


def test_top_sub_consistency(res):
    c = analyze(load_fixture("corpus/titanic/titanic.ipynb"), res).classification
    for ci, subs in c.subs.items():
        assert set(c.tops(ci)) == {c.taxonomy.parent(s) for s in subs}
        assert set(c.evidence[ci]) == set(subs)


def test_unresolved_not_classified(run):
    assert run("ghost()").classification.subs == {}
