"""Pure-Python tokenizer kernel (fallback for the compiled ``_lexer_c``).

Both kernels share one contract: ``scan(source)`` returns four parallel lists
``(kinds, texts, lines, columns)`` terminated by an ``"eof"`` token, or raises
``LexError``. Output must be identical between the two.
"""

import re

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized this
    throw throws transient try void volatile while true false null""".split()
)

_PUNCT = [
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\f\r\n]+)
  | (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<badcomment>/\*)
  | (?P<id>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<num>0[xX][0-9a-fA-F_]+[lL]?
        |[0-9][0-9_]*(?:\.[0-9][0-9_]*)?(?:[eE][+-]?[0-9]+)?[fFdDlL]?
        |\.[0-9][0-9_]*(?:[eE][+-]?[0-9]+)?[fFdD]?)
  | (?P<str>"(?:[^"\\\n]|\\[^\n])*")
  | (?P<char>'(?:[^'\\\n]|\\[^\n])+')
  | (?P<badquote>["'])
  | (?P<punct>"""
    + "|".join(re.escape(p) for p in _PUNCT)
    + r"""|.)
    """,
    re.VERBOSE | re.DOTALL,
)


class LexError(Exception):
    def __init__(self, message, line, column, found):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.found = found


def scan(source):
    kinds = []
    texts = []
    lines = []
    cols = []
    line = 1
    line_start = 0
    for m in _TOKEN_RE.finditer(source):
        group = m.lastgroup
        text = m.group()
        start = m.start()
        if group == "ws" or group == "comment":
            n = text.count("\n")
            if n:
                line += n
                line_start = start + text.rfind("\n") + 1
            continue
        if group == "id":
            kind = "keyword" if text in KEYWORDS else "identifier"
        elif group == "punct":
            kind = "punctuation"
        elif group == "num":
            kind = "number"
        elif group == "str":
            kind = "string"
        elif group == "char":
            kind = "char"
        elif group == "badcomment":
            raise LexError("unterminated comment", line, start - line_start + 1, text)
        else:
            raise LexError("unterminated literal", line, start - line_start + 1, text)
        kinds.append(kind)
        texts.append(text)
        lines.append(line)
        cols.append(start - line_start + 1)
    kinds.append("eof")
    texts.append("")
    lines.append(line)
    cols.append(len(source) - line_start + 1)
    return kinds, texts, lines, cols
