import pytest
from hypothesis import given, settings, strategies as st

from state_harvest import _lexer_py, lexer
from state_harvest.lexer import ParseError, tokenize

try:
    from state_harvest import _lexer_c
except ImportError:
    _lexer_c = None

needs_c = pytest.mark.skipif(_lexer_c is None, reason="compiled lexer not built")

_FRAGMENTS = [
    "class", "State", "x1", "$y", "_z", " ", "\n", "\t", "\r\n", "0", "42", "0x1F", "1.5e3", ".5f",
    "10L", "\"s\"", "\"a\\\"b\"", "'c'", "'\\n'", "//c\n", "/* b */", "/*\n*/", "<<=", ">>>", ">>",
    "->", "::", "...", "==", "!=", "&&", "++", "--", "+=", "{", "}", "(", ")", ";", ".", ",", "@",
    "?", ":", "<", ">", "=", "-", "/", "*", "\"", "'", "/*", "é", "#",
]


def _outcome(fn, text):
    try:
        return fn(text)
    except _lexer_py.LexError as e:
        return ("error", e.message, e.line, e.column, e.found)


@needs_c
@settings(max_examples=2000, deadline=None, derandomize=True)
@given(st.lists(st.sampled_from(_FRAGMENTS), max_size=40).map("".join))
def test_kernels_agree_on_fragments(text):
    assert _outcome(_lexer_c.scan, text) == _outcome(_lexer_py.scan, text)


@needs_c
@settings(max_examples=1000, deadline=None, derandomize=True)
@given(st.text(max_size=60))
def test_kernels_agree_on_arbitrary_text(text):
    assert _outcome(_lexer_c.scan, text) == _outcome(_lexer_py.scan, text)


@needs_c
def test_kernels_agree_on_corpus(tcp_bundle):
    for _, text in tcp_bundle.source_files:
        assert _lexer_c.scan(text) == _lexer_py.scan(text)


def test_backend_reported():
    assert lexer.BACKEND in ("cython", "python")


def test_token_kinds_and_positions():
    toks = tokenize("class A {\n  int x = 0x1F; // c\n}")
    assert [(t.kind, t.text) for t in toks[:4]] == [
        ("keyword", "class"), ("identifier", "A"), ("punctuation", "{"), ("keyword", "int"),
    ]
    x = toks[4]
    assert (x.text, x.line, x.column) == ("x", 2, 7)
    assert toks[6].kind == "number"
    assert toks[-1].kind == "eof"
    assert (toks[-2].text, toks[-2].line) == ("}", 3)


def test_longest_punctuation_wins():
    texts = [t.text for t in tokenize("a >>>= b >> c")][:-1]
    assert texts == ["a", ">>>=", "b", ">>", "c"]


@pytest.mark.parametrize("src, where", [
    ("x /* open", "f.java:1:3"),
    ("s = \"abc\n", "f.java:1:5"),
    ("\n  'x", "f.java:2:3"),
])
def test_unterminated_tokens_are_parse_errors(src, where):
    with pytest.raises(ParseError) as info:
        tokenize(src, "f.java")
    assert str(info.value).startswith(where)
