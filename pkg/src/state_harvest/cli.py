"""Command line: ``state-harvest {extract,gen,check,stats}``.

Exit codes: 0 success/equal, 1 check mismatch, 2 parse error,
3 extraction error, 4 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .corpus import GOLDEN_FILE, CorpusSpec, generate
from .extraction import ExtractionError, Tasks, build_state_machine
from .parser import LENIENT, STRICT, ProjectParseError, parse_project, read_sources, thread_count
from .statemachine import ModelError, canonicalize, compare, from_json, to_dot, to_json
from .syntax_graph import EXPRESSION_TYPES, STATEMENT_TYPES, ClassDecl, EnumDecl, MethodDecl, Project

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_EXTRACT = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_project(paths, mode) -> Project:
    try:
        files = read_sources(paths)
    except FileNotFoundError as e:
        raise UsageError(f"no such file or directory: {e}") from None
    return parse_project(files, mode=mode, workers=thread_count())


def run_extract(args) -> int:
    mode = LENIENT if args.lenient else STRICT
    try:
        project = _load_project(args.paths, mode)
    except ProjectParseError as e:
        for err in e.errors:
            _err(f"error: {err}")
        return EXIT_PARSE
    for unit in project.units:
        for w in unit.warnings:
            _err(str(w))
    try:
        machine, warnings = build_state_machine(project, args.root_class, args.tasks)
    except (ExtractionError, ModelError) as e:
        _err(f"error: {e}")
        return EXIT_EXTRACT
    for w in warnings:
        _err(str(w))
    parse_warnings = any(unit.warnings for unit in project.units)
    if args.strict_warnings and (warnings or parse_warnings):
        _err("error: warnings present and --strict-warnings given")
        return EXIT_EXTRACT
    text = to_json(machine) + "\n" if args.format == "json" else to_dot(machine)
    _emit(text, args.out)
    return EXIT_OK


def run_gen(args) -> int:
    try:
        if args.kind == "tcp":
            spec = CorpusSpec.tcp_deep(*args.deep) if args.deep else CorpusSpec.tcp()
        else:
            extra_depth, extra_nesting = args.deep or (0, 0)
            spec = CorpusSpec.scale(
                args.states, args.per_state, args.nesting, args.seed,
                extra_depth=extra_depth, extra_nesting=extra_nesting,
            )
    except ValueError as e:
        raise UsageError(str(e)) from None
    bundle = generate(spec)
    out = bundle.write(args.out)
    g = bundle.golden_machine
    _err(f"wrote {len(bundle.source_files)} files and {GOLDEN_FILE} to {out} "
         f"({len(g.states)} states, {len(g.transitions)} transitions)")
    return EXIT_OK


def _read_model(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return canonicalize(from_json(text))
    except ModelError as e:
        raise UsageError(f"{path}: {e}") from None


def run_check(args) -> int:
    model = _read_model(args.model)
    golden = _read_model(args.golden)
    diff = compare(model, golden)
    if diff.equal:
        print("OK: model equals golden")
        return EXIT_OK
    print(diff.report())
    return EXIT_MISMATCH


def project_stats(project: Project) -> dict[str, int]:
    counts = dict(files=len(project.units), classes=0, enums=0, methods=0, statements=0, expressions=0)
    for n in project.nodes():
        if isinstance(n, STATEMENT_TYPES):
            counts["statements"] += 1
        elif isinstance(n, EXPRESSION_TYPES):
            counts["expressions"] += 1
        elif isinstance(n, MethodDecl):
            counts["methods"] += 1
        elif isinstance(n, ClassDecl):
            counts["classes"] += 1
        elif isinstance(n, EnumDecl):
            counts["enums"] += 1
    nodes = len(project)
    edges = nodes - len(project.units)
    counts.update(nodes=nodes, edges=edges, total=nodes + edges)
    return counts


def run_stats(args) -> int:
    start = time.perf_counter()
    try:
        project = _load_project(args.paths, LENIENT if args.lenient else STRICT)
    except ProjectParseError as e:
        for err in e.errors:
            _err(f"error: {err}")
        return EXIT_PARSE
    elapsed = time.perf_counter() - start
    for key, value in project_stats(project).items():
        print(f"{key}: {value}")
    print(f"parse_seconds: {elapsed:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="state-harvest", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    ex = sub.add_parser("extract", help="extract a state machine from Java sources")
    ex.add_argument("paths", nargs="+")
    ex.add_argument("--out", help="output file (default: stdout)")
    ex.add_argument("--format", choices=["json", "dot"], default="json")
    ex.add_argument("--tasks", choices=[t.value for t in Tasks], default=Tasks.ACTIONS.value,
                    help="core, core+triggers, or core+triggers+actions (default)")
    ex.add_argument("--root-class", default="State")
    ex.add_argument("--lenient", action="store_true", help="skip unparsable method bodies")
    ex.add_argument("--strict-warnings", action="store_true", help="treat warnings as errors (exit 3)")
    ex.set_defaults(func=run_extract)

    gen = sub.add_parser("gen", help="generate a corpus with its golden machine")
    gen.add_argument("kind", choices=["tcp", "scale"])
    gen.add_argument("--out", required=True)
    gen.add_argument("--deep", nargs=2, type=int, metavar=("EXTRA_DEPTH", "EXTRA_NESTING"))
    gen.add_argument("--states", type=int, default=300)
    gen.add_argument("--per-state", type=int, default=4)
    gen.add_argument("--nesting", type=int, default=8)
    gen.add_argument("--seed", type=int, default=42)
    gen.set_defaults(func=run_gen)

    ch = sub.add_parser("check", help="compare a model file against a golden file")
    ch.add_argument("--model", required=True)
    ch.add_argument("--golden", required=True)
    ch.set_defaults(func=run_check)

    st = sub.add_parser("stats", help="print syntax graph statistics")
    st.add_argument("paths", nargs="+")
    st.add_argument("--lenient", action="store_true")
    st.set_defaults(func=run_stats)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        try:
            thread_count()
        except ValueError as e:
            raise UsageError(str(e)) from None
        return args.func(args)
    except UsageError as e:
        _err(f"usage error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
