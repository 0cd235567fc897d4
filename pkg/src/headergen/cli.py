"""Command-line driver: analyze, annotate, eval, bench.

Exit codes: 0 ok, 2 input error (bad notebook, stubs, taxonomy or truth
file), 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

from .bench import run_bench
from .callgraph import TruthFormatError, average, pairs_from_json, score
from .classify import TaxonomyError
from .frontend import AnalysisSyntaxError
from .notebook import NotebookError, dumps_notebook, load_notebook
from .pipeline import Resources, analyze, annotate
from .stubs import StubError

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (NotebookError, StubError, TaxonomyError, TruthFormatError, AnalysisSyntaxError, OSError)


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    stubs_dir: Path | None = None
    taxonomy_path: Path | None = None
    mode: str = "out"  # one of inplace, out, report-only
    out_path: Path | None = None
    report_path: Path | None = None
    dump_eag: Path | None = None


def _dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _resources(cfg: RunConfig) -> Resources:
    return Resources.load(cfg.stubs_dir, cfg.taxonomy_path)


def _config(args) -> RunConfig:
    modes = [m for m, on in (("inplace", getattr(args, "inplace", False)),
                             ("report-only", getattr(args, "report_only", False)),
                             ("out", getattr(args, "out", None) is not None)) if on]
    if len(modes) > 1:
        raise InputError(f"choose one output mode, got {', '.join(modes)}")
    return RunConfig(args.stubs, args.taxonomy, modes[0] if modes else "out", getattr(args, "out", None),
                     getattr(args, "report", None), getattr(args, "dump_eag", None))


def cmd_analyze(args) -> int:
    cfg = _config(args)
    res = _resources(cfg)
    analysis = analyze(load_notebook(args.notebook), res)
    if cfg.dump_eag is not None:
        Path(cfg.dump_eag).write_text(analysis.eag.to_dot(), encoding="utf-8")
    _emit(analysis.report.dumps(), cfg.out_path)
    return EXIT_OK


def _default_out(path: Path) -> Path:
    return path.with_name(path.stem + ".annotated.ipynb")


def _annotate_one(path: Path, cfg: RunConfig, res: Resources, out: Path | None) -> None:
    nb = load_notebook(path)
    annotated, analysis = annotate(nb, res)
    if cfg.report_path is not None:
        report = cfg.report_path
        if report.is_dir():
            report = report / (path.stem + ".report.json")
        report.write_text(analysis.report.dumps(), encoding="utf-8")
    if cfg.mode == "report-only":
        return
    target = path if cfg.mode == "inplace" else (out or _default_out(path))
    target.write_text(dumps_notebook(annotated), encoding="utf-8")


def cmd_annotate(args) -> int:
    cfg = _config(args)
    res = _resources(cfg)
    src = Path(args.notebook)
    if not src.is_dir():
        _annotate_one(src, cfg, res, cfg.out_path)
        return EXIT_OK
    outdir = cfg.out_path
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    status = EXIT_OK
    for path in sorted(p for p in src.glob("*.ipynb") if not p.name.endswith(".annotated.ipynb")):
        out = outdir / path.name if outdir is not None else None
        try:
            _annotate_one(path, cfg, res, out)
            print(f"ok     {path}", file=sys.stderr)
        except INPUT_ERRORS as exc:
            print(f"failed {path}: {exc}", file=sys.stderr)
            status = max(status, EXIT_INPUT)
        except Exception as exc:  # keep going; report at the end
            print(f"failed {path}: internal error: {exc}", file=sys.stderr)
            status = EXIT_INTERNAL if status == EXIT_OK else status
    return status


def _read_json(path: Path, what: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise TruthFormatError(f"{path}: invalid {what} JSON ({exc})") from None


def cmd_eval(args) -> int:
    pairs = list(zip(args.reports, args.truths))
    if len(args.reports) != len(args.truths):
        raise InputError("eval needs as many truth files as reports")
    results = []
    for rep, truth in pairs:
        found = pairs_from_json(_read_json(rep, "report"))
        results.append(score(found, pairs_from_json(_read_json(truth, "truth"))))
    p, r = average(results)
    doc = {"notebooks": [dict(r.to_json(), report=str(rp)) for r, (rp, _) in zip(results, pairs)],
           "average": {"precision": round(p, 6), "recall": round(r, 6)}}
    if len(results) == 1:
        doc.update(results[0].to_json())
    _emit(_dumps(doc), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    if not Path(args.suite).is_dir():
        raise InputError(f"{args.suite} is not a directory")
    result = run_bench(args.suite, _resources(cfg))
    if args.json:
        _emit(_dumps(result.to_json()), cfg.out_path)
    else:
        _emit(result.table() + "\n", cfg.out_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="headergen", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stubs", type=Path, metavar="DIR", help="stub directory (default: shipped stubs)")
    common.add_argument("--taxonomy", type=Path, metavar="FILE", help="taxonomy JSON (default: shipped)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="print the per-cell callsite report")
    p.add_argument("notebook", type=Path)
    p.add_argument("--out", type=Path, metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--dump-eag", type=Path, metavar="PATH", help="write the assignment graph as DOT")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("annotate", parents=[common], help="add index, headers and TOC to a notebook")
    p.add_argument("notebook", type=Path, help="notebook file or a directory of notebooks")
    p.add_argument("--out", type=Path, metavar="PATH", help="output notebook (or directory in batch mode)")
    p.add_argument("--inplace", action="store_true", help="overwrite the input notebook")
    p.add_argument("--report-only", action="store_true", help="write no notebook")
    p.add_argument("--report", type=Path, metavar="PATH", help="also write the callsite report")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("eval", help="precision/recall of reports against truth files")
    p.add_argument("--report", dest="reports", type=Path, action="append", required=True, metavar="PATH")
    p.add_argument("--truth", dest="truths", type=Path, action="append", required=True, metavar="PATH")
    p.add_argument("--out", type=Path, metavar="PATH")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", parents=[common], help="sound/complete table over a case directory")
    p.add_argument("suite", type=Path)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", type=Path, metavar="PATH")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AnalysisSyntaxError as exc:
        where = f"cell {exc.cell}, line {exc.cell_line}" if exc.cell is not None else "unknown location"
        print(f"error: syntax error at {where}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
