"""Tokenizer front end.

The scanning kernel is the compiled ``_lexer_c`` extension when it has been
built, otherwise the pure-Python ``_lexer_py``. Set ``STATE_HARVEST_PURE=1``
to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

from . import _lexer_py
from ._lexer_py import KEYWORDS, LexError
from .syntax_graph import SourceLocation

if os.environ.get("STATE_HARVEST_PURE"):
    _scan = _lexer_py.scan
    BACKEND = "python"
else:
    try:
        from ._lexer_c import scan as _scan

        BACKEND = "cython"
    except ImportError:
        _scan = _lexer_py.scan
        BACKEND = "python"

__all__ = ["BACKEND", "KEYWORDS", "ParseError", "ParseWarning", "Token", "scan", "tokenize"]


class Token(NamedTuple):
    kind: str  # keyword | identifier | punctuation | string | char | number | eof
    text: str
    line: int
    column: int


class ParseError(Exception):
    def __init__(self, location: SourceLocation, expected: str, found: str) -> None:
        self.location = location
        self.expected = expected
        self.found = found
        super().__init__(f"{location}: expected {expected}, found {found!r}")


@dataclass(frozen=True)
class ParseWarning:
    """Non-fatal parser diagnostic (lenient mode)."""

    location: SourceLocation
    kind: str
    message: str

    def __str__(self) -> str:
        return f"WARN {self.kind} {self.location} {self.message}"


_LEX_EXPECTED = {"unterminated comment": "'*/'", "unterminated literal": "closing quote"}


def scan(source: str, file: str = "<string>"):
    """Run the active kernel, returning parallel (kinds, texts, lines, columns)."""
    try:
        return _scan(source)
    except LexError as e:
        expected = _LEX_EXPECTED.get(e.message, e.message)
        raise ParseError(SourceLocation(file, e.line, e.column), expected, e.found) from None


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    return [Token(*t) for t in zip(*scan(source, file))]
