"""Callsite precision/recall and header recall over the mini corpus.

Callsite truth was recorded by running each notebook under the tracing
oracle; header truth was written by hand per cell.

    python3 demos/corpus_report.py
"""

from pathlib import Path

from headergen.bench import load_header_truth, score_headers
from headergen.callgraph import average, load_truth, score
from headergen.notebook import load_notebook
from headergen.pipeline import Resources, analyze

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "corpus"

res = Resources.load()
calls, headers = [], []
print(f"{'notebook':10} {'cells':>5} {'P':>6} {'R':>6} {'hdr R':>6} {'ms':>6}")
for case in sorted(p for p in CORPUS.iterdir() if p.is_dir()):
    nb = load_notebook(next(case.glob("*.ipynb")))
    a = analyze(nb, res)
    pr = score(a.report, load_truth(case / "truth.json"))
    hr = score_headers(a.classification, load_header_truth(case / "headers.json"))
    calls.append(pr)
    headers.append(hr.recall)
    print(f"{case.name:10} {len(nb.code_cells):5} {pr.precision:6.3f} {pr.recall:6.3f} {hr.recall:6.3f} "
          f"{a.seconds * 1000:6.1f}")

p, r = average(calls)
print(f"{'average':10} {'':5} {p:6.3f} {r:6.3f} {sum(headers) / len(headers):6.3f}")
