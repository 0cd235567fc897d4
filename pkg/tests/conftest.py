import json
from pathlib import Path

import pytest

from headergen.notebook import parse_notebook
from headergen.pipeline import Resources, analyze

FIXTURES = Path(__file__).parent / "fixtures"


def notebook(*cells, markdown=None, minor=5):
    """Notebook from code-cell sources; *markdown* maps a position to a markdown cell before it."""
    out = []
    markdown = markdown or {}
    for i, src in enumerate(cells):
        if i in markdown:
            out.append({"cell_type": "markdown", "metadata": {}, "source": markdown[i]})
        out.append({"cell_type": "code", "metadata": {}, "outputs": [], "execution_count": None,
                    "source": src})
    return parse_notebook({"cells": out, "metadata": {}, "nbformat": 4, "nbformat_minor": minor})


def load_fixture(rel):
    path = FIXTURES / rel
    return parse_notebook(json.loads(path.read_text(encoding="utf-8")))


@pytest.fixture(scope="session")
def res():
    return Resources.load()


@pytest.fixture(scope="session")
def run(res):
    def go(*cells):
        return analyze(notebook(*cells), res)
    return go


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
