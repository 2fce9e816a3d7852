"""Command-line front end.

Exit codes: 0 success, 1 semantic or runtime failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .coherence import CoherenceError, apply_gaprog, explain, format_chain
from .diagnostics import DiagnosticError, has_errors
from .dsl import LinkedModel, format_unit, link, load_files, parse_unit
from .runtime import (
    FeatureRegistry,
    Runtime,
    Session,
    Trace,
    parse_command,
    parse_script,
    parse_stub_file,
    run_script,
)
from .runtime.script import REPL_VERBS

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit status but never exit from library code
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Usage(f"cannot read {path}: {exc}") from None


def _print_diagnostics(diagnostics, err: TextIO) -> None:
    for d in diagnostics:
        print(d.render(), file=err)


def _load_model(files, err: TextIO) -> LinkedModel | None:
    """Parse and link ``files``; prints diagnostics, returns None on errors."""
    try:
        units, diagnostics = load_files(files)
    except (OSError, UnicodeDecodeError) as exc:
        raise _Usage(f"cannot read input: {exc}") from None
    if diagnostics:
        _print_diagnostics(diagnostics, err)
        return None
    try:
        model = link(units)
    except DiagnosticError as exc:
        _print_diagnostics(exc.diagnostics, err)
        return None
    _print_diagnostics(model.warnings, err)
    return model


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    try:
        units, diagnostics = load_files(args.files)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=err)
        return EXIT_USAGE
    if not diagnostics:
        try:
            model = link(units)
            diagnostics = list(model.warnings)
        except DiagnosticError as exc:
            diagnostics = exc.diagnostics
    _print_diagnostics(diagnostics, err)
    return EXIT_FAIL if has_errors(diagnostics) else EXIT_OK


def _registry(stub_path: str | None) -> FeatureRegistry:
    if stub_path is None:
        return FeatureRegistry()
    stubs = parse_stub_file(_read(stub_path), stub_path)
    registry = FeatureRegistry.with_stubs(stubs)
    return registry


def cmd_run(args, out: TextIO, err: TextIO) -> int:
    model = _load_model(args.files, err)
    script_text = _read(args.script)
    if model is None:
        return EXIT_FAIL
    try:
        commands = parse_script(script_text, args.script)
        features = _registry(args.stub)
    except DiagnosticError as exc:
        _print_diagnostics(exc.diagnostics, err)
        return EXIT_FAIL
    trace = Trace()
    status = run_script(Runtime(model, features, trace=trace), commands)
    rendered = trace.render()
    if args.trace is None or args.trace == "-":
        out.write(rendered)
    else:
        try:
            with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(rendered)
        except OSError as exc:
            print(f"error: cannot write {args.trace}: {exc}", file=err)
            return EXIT_USAGE
    return status


def cmd_fmt(args, out: TextIO, err: TextIO) -> int:
    text = _read(args.file)
    try:
        unit = parse_unit(text, args.file)
    except DiagnosticError as exc:
        _print_diagnostics(exc.diagnostics, err)
        return EXIT_FAIL
    formatted = format_unit(unit)
    if args.stdout:
        out.write(formatted)
    elif formatted != text:
        try:
            with open(args.file, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(formatted)
        except OSError as exc:
            print(f"error: cannot write {args.file}: {exc}", file=err)
            return EXIT_USAGE
    return EXIT_OK


def cmd_explain(args, out: TextIO, err: TextIO) -> int:
    model = _load_model(args.files, err)
    if model is None:
        return EXIT_FAIL
    cfg = model.configurations.get(args.config)
    if cfg is None:
        print(f"error: unknown configuration {args.config}", file=err)
        return EXIT_USAGE
    gaprog = cfg.gaprog(args.gaprog)
    if gaprog is None:
        print(f"error: {args.gaprog} is not a GAProg of {cfg.name}", file=err)
        return EXIT_USAGE
    try:
        _, closure = apply_gaprog({f: False for f in cfg.features}, gaprog, cfg.relations)
    except CoherenceError as exc:
        print(f"ERROR {exc.code} {exc.detail}", file=out)
        return EXIT_FAIL
    for _, feature in closure.order:
        status = "enabled" if feature in closure.enabled else "disabled"
        chain = format_chain(explain(closure, feature), include_head=False)
        print(f"{feature}: {status} because {chain}", file=out)
    return EXIT_OK


def cmd_repl(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    model = _load_model(args.files, err)
    if model is None:
        return EXIT_FAIL
    cfg = model.configurations.get(args.config)
    if cfg is None or cfg.gaproc(args.proc) is None:
        print(f"error: no GAProc {args.proc} in configuration {args.config}", file=err)
        return EXIT_USAGE

    def echo(record):
        print(record, file=out)
        out.flush()

    session = Session(Runtime(model, FeatureRegistry(), trace=Trace(sink=echo)))
    session.execute(parse_command(f"create repl {cfg.database} {cfg.name} {args.proc}"))
    interactive = stdin.isatty()
    while True:
        if interactive:
            out.write("> ")
            out.flush()
        line = stdin.readline()
        if not line:
            return EXIT_OK
        try:
            cmd = parse_command(line, "<repl>", verbs=REPL_VERBS)
        except DiagnosticError as exc:
            _print_diagnostics(exc.diagnostics, err)
            continue
        if cmd is None:
            continue
        if cmd.verb == "quit":
            return EXIT_OK
        session.execute(cmd)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genadapt", description="Genetic adaptation framework tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="parse, link and validate sources")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("run", help="run an event script and write its trace")
    p.add_argument("files", nargs="+")
    p.add_argument("--script", required=True)
    p.add_argument("--trace", help="trace output path (default: stdout)")
    p.add_argument("--stub", help="scripted feature outputs")

    p = sub.add_parser("fmt", help="rewrite a source file in canonical form")
    p.add_argument("file")
    p.add_argument("--stdout", action="store_true", help="print instead of rewriting")

    p = sub.add_parser("explain", help="show why each feature lands in a GAProg closure")
    p.add_argument("files", nargs="+")
    p.add_argument("--config", required=True)
    p.add_argument("--gaprog", required=True)

    p = sub.add_parser("repl", help="interactive event session")
    p.add_argument("files", nargs="+")
    p.add_argument("--config", required=True)
    p.add_argument("--proc", required=True)
    return parser


def main(
    argv: Sequence[str] | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
    stdin: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "check":
            return cmd_check(args, out, err)
        if args.command == "run":
            return cmd_run(args, out, err)
        if args.command == "fmt":
            return cmd_fmt(args, out, err)
        if args.command == "explain":
            return cmd_explain(args, out, err)
        return cmd_repl(args, out, err, stdin)
    except _Usage as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
