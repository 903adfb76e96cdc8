"""Parse Java sources into a :class:`~state_harvest.syntax_graph.Project`.

The grammar is documented in ``docs/grammar.ebnf``. Anything outside it is a
:class:`ParseError` in strict mode. In lenient mode a method body that fails to
parse is skipped to its matching brace and recorded as
:class:`~state_harvest.syntax_graph.Opaque`, with a :class:`ParseWarning`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import _parse_py
from .lexer import ParseError, ParseWarning
from .syntax_graph import CompilationUnit, Project

if os.environ.get("STATE_HARVEST_PURE"):
    _impl = _parse_py
else:
    try:
        from . import _parse_c as _impl
    except ImportError:
        _impl = _parse_py

BACKEND = "cython" if _impl is not _parse_py else "python"
STRICT = _parse_py.STRICT
LENIENT = _parse_py.LENIENT

__all__ = [
    "BACKEND",
    "LENIENT",
    "STRICT",
    "ParseError",
    "ParseWarning",
    "ProjectParseError",
    "discover_files",
    "parse_project",
    "parse_unit",
    "read_sources",
]


class ProjectParseError(Exception):
    """All unit-level parse errors of a project, in path order."""

    def __init__(self, errors: Sequence[ParseError]) -> None:
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


def parse_unit(source: str, file: str = "<string>", mode: str = STRICT) -> CompilationUnit:
    """Parse one Java source text. Raises :class:`ParseError`.

    The returned unit is not yet linked; wrap it in a
    :class:`~state_harvest.syntax_graph.Project` to get ids and parent links.
    """
    return _impl._Parser(source, str(file), mode).unit()


def thread_count(workers: Optional[int] = None) -> int:
    """Explicit ``workers``, else ``STATE_HARVEST_THREADS``, else 1."""
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("STATE_HARVEST_THREADS")
    if not env:
        return 1
    try:
        n = int(env)
    except ValueError:
        n = 0
    if n < 1:
        raise ValueError(f"STATE_HARVEST_THREADS must be a positive integer, got {env!r}")
    return n


def parse_project(
    files: Iterable[tuple[str, str]],
    mode: str = STRICT,
    workers: Optional[int] = None,
) -> Project:
    """Parse ``(path, text)`` pairs into a linked :class:`Project`.

    Units are ordered by path regardless of input order. Every unit is
    attempted; if any fails, :class:`ProjectParseError` carries all errors.
    With more than one worker, units are parsed on a thread pool; the
    result is the same either way.
    """
    files = sorted((str(p), t) for p, t in files)
    paths = [p for p, _ in files]
    if len(set(paths)) != len(paths):
        raise ValueError("duplicate paths in project input")

    def one(item):
        path, text = item
        try:
            return parse_unit(text, path, mode)
        except ParseError as e:
            return e

    n = thread_count(workers)
    if n > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(one, files))
    else:
        results = [one(f) for f in files]
    errors = [r for r in results if isinstance(r, ParseError)]
    if errors:
        raise ProjectParseError(errors)
    return Project(results)


def discover_files(paths: Iterable[str | os.PathLike]) -> list[Path]:
    """Expand files and directories (recursively, ``*.java``) into a sorted list."""
    found = set()
    for p in paths:
        p = Path(p)
        if p.is_dir():
            found.update(f for f in p.rglob("*.java") if f.is_file())
        elif p.is_file():
            found.add(p)
        else:
            raise FileNotFoundError(str(p))
    return sorted(found)


def read_sources(paths: Iterable[str | os.PathLike]) -> list[tuple[str, str]]:
    return [(str(f), f.read_text(encoding="utf-8")) for f in discover_files(paths)]
