from headergen.annotate import (INDEX_ANCHOR, apply, assign_anchors, build_annotations, build_headers,
                                build_index, build_toc, strip_annotations)
from headergen.notebook import MARKER_KEY, dumps_notebook
from headergen.pipeline import analyze, annotate

from conftest import load_fixture, notebook


def test_anchor_suffixes():
    titles = {1: "Model Building and Training", 2: "Generic Operations", 3: "Model Building and Training",
              4: "Model Building and Training"}
    anchors = assign_anchors(titles)
    assert anchors[1] == "model-building-and-training"
    assert anchors[3] == "model-building-and-training-2"
    assert anchors[4] == "model-building-and-training-3"
    assert len(set(anchors.values())) == 4
    assert assign_anchors({1: "headergen index"})[1] == "headergen-index-2"


def test_toc():
    assert build_toc({}, {}) is None
    toc = build_toc({1: "A", 3: "B", 2: "A"}, {1: "a", 2: "a-2", 3: "b"})
    assert [ln for ln in toc.splitlines() if ln.startswith("- ")] == [
        "- [cell #1: A](#a)", "- [cell #2: A](#a-2)", "- [cell #3: B](#b)"]


def test_multi_category_header(run):
    a = run("import numpy as np\nx = np.reshape(np.zeros(4), (2, 2))")
    header = build_headers(a.classification)[1]
    assert "### Generic Operations | Data Preparation and Exploration | Feature Engineering" in header
    assert f'href="#{INDEX_ANCHOR}"' in header


def test_index_strikes_empty_categories(run):
    index = build_index(run("import numpy as np\nnp.zeros(2)").classification)
    assert "<del>Model Building and Training</del>" in index
    assert "<del>Model Training</del>" not in index  # the whole top is struck, not each sub
    assert "<summary>Generic Operations</summary>" in index
    assert "<li><del>Visualization</del></li>" in index


def test_unclassified_cells_get_no_header(run):
    a = run("x = 1", "import numpy as np")
    assert set(build_headers(a.classification)) == {2}


def test_motivating_index(res):
    a = analyze(load_fixture("motivating/iris_models.ipynb"), res)
    index = build_index(a.classification)
    blocks = {}
    for line in index.splitlines():
        if line.startswith("<details><summary>") or line.startswith("<p><del>"):
            top = line.split(">")[2].split("<")[0]
            blocks[top] = []
        elif blocks:
            blocks[top].append(line)
    mbt = "\n".join(blocks["Model Building and Training"])
    assert "goto cell #5" in mbt and "goto cell #4" in mbt
    assert "goto cell #5" not in "\n".join(blocks["Generic Operations"])
    assert "seaborn.utils.load_dataset" in index


def test_apply_layout_and_idempotence(res):
    nb = load_fixture("motivating/iris_models.ipynb")
    once, _ = annotate(nb, res)
    twice, _ = annotate(once, res)
    assert dumps_notebook(once) == dumps_notebook(twice)
    kinds = [(c.annotation_marker or {}).get("kind", c.kind) for c in once.cells]
    assert kinds[:2] == ["index", "toc"]
    # each header sits right before its code cell
    for prev, cell in zip(once.cells, once.cells[1:]):
        if cell.kind == "code" and cell.code_index in {1, 2, 3, 4, 5}:
            assert prev.annotation_marker["kind"] == "header"
    assert [c.source for c in once.code_cells] == [c.source for c in nb.code_cells]
    assert strip_annotations(once) == nb


def test_cell_ids_only_for_45(res):
    src = "import numpy as np"
    new = annotate(notebook(src, minor=5), res)[0]
    old = annotate(notebook(src, minor=4), res)[0]
    assert new.cells[0].raw["id"] == "headergen-index"
    assert "id" not in old.cells[0].raw
    assert old.cells[0].raw["metadata"][MARKER_KEY]["kind"] == "index"


def test_empty_notebook(res):
    nb = notebook()
    out, a = annotate(nb, res)
    ann = build_annotations(a.classification)
    assert ann.toc_cell is None and ann.header_cells == {}
    assert [c.annotation_marker["kind"] for c in out.cells] == ["index"]


def test_apply_preserves_user_markdown(res):
    nb = notebook("import numpy as np", markdown={0: "# My notes"})
    out = apply(nb, build_annotations(analyze(nb, res).classification))
    assert "# My notes" in [c.source for c in out.cells]
