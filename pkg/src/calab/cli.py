"""Command-line front end: ``calab run | corpus | compute``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .dsl import SessionError, build_report, compute, evaluate, parse_session
from .report import jsonable


class _Parser(argparse.ArgumentParser):
    # usage errors exit with 2 (argparse default) but never print a traceback
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read_session(path: str) -> str:
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    # fall back to the packaged example sessions by file name
    from importlib import resources

    packaged = resources.files("calab").joinpath("sessions", p.name)
    if packaged.is_file():
        print(f"calab: {path} not found, using packaged session {p.name}", file=sys.stderr)
        return packaged.read_text(encoding="utf-8")
    raise FileNotFoundError(path)


def _write_json(report: dict, out: str | None):
    if out is None:
        return
    text = json.dumps(report, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _print_text(report: dict, stream):
    for e in report["entries"]:
        mark = "ok " if e["as_expected"] else "BAD"
        extra = "" if e["expected"] == "verified" else f" (expected {e['expected']})"
        print(f"{mark} {e['verdict']:<15} {e['id']}{extra}", file=stream)
    s = report["summary"]
    print(f"{s['as_expected']}/{s['total']} as expected", file=stream)


def _show(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, (list, dict)):
        return json.dumps(jsonable(v))
    return str(v)


def _cmd_run(args) -> int:
    text = _read_session(args.file)
    entries = evaluate(parse_session(text), Path(args.file).stem)
    report = build_report(entries, text)
    _write_json(report, args.json)
    if args.text or args.json is None:
        _print_text(report, sys.stdout if args.json != "-" else sys.stderr)
    return 0 if report["summary"]["ok"] else 1


def _cmd_corpus(args) -> int:
    from .corpus import corpus_text, run_corpus

    only = [s.strip() for s in args.only.split(",") if s.strip()] if args.only else None
    entries = run_corpus(only)
    report = build_report(entries, corpus_text(only), kind="corpus")
    _write_json(report, args.json)
    if args.text or args.json is None:
        _print_text(report, sys.stdout if args.json != "-" else sys.stderr)
    return 0 if report["summary"]["ok"] else 1


def _cmd_compute(args) -> int:
    text = _read_session(args.input)
    print(_show(compute(text, args.invariant, args.target)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="calab", description="Commutative algebra checks over graded quotient rings.")
    ap.add_argument("--version", action="version", version=f"calab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="evaluate a session file")
    r.add_argument("file")
    r.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")
    r.add_argument("--text", action="store_true", help="print one line per entry")
    r.set_defaults(func=_cmd_run)

    c = sub.add_parser("corpus", help="run the built-in example corpus")
    c.add_argument("--only", metavar="IDS", help="comma-separated entry ids")
    c.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")
    c.add_argument("--text", action="store_true", help="print one line per entry")
    c.set_defaults(func=_cmd_corpus)

    k = sub.add_parser("compute", help="evaluate one invariant against a session's definitions")
    k.add_argument("invariant")
    k.add_argument("--in", dest="input", required=True, metavar="FILE")
    k.add_argument("--target", required=True, help="arguments separated by '|', e.g. \"(y,z,w)|M\"")
    k.set_defaults(func=_cmd_compute)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SessionError as exc:
        print(f"calab: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"calab: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
