# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tokenizer kernel. Mirrors ``_lexer_py.scan`` token for token."""

from state_harvest._lexer_py import KEYWORDS, LexError

cdef frozenset _P4 = frozenset([">>>="])
cdef frozenset _P3 = frozenset(["<<=", ">>=", ">>>", "..."])
cdef frozenset _P2 = frozenset([
    "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=",
    "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>",
])
cdef frozenset _KEYWORDS = KEYWORDS


cdef inline bint _is_ws(Py_UCS4 c):
    return c == u' ' or c == u'\t' or c == u'\f' or c == u'\r' or c == u'\n'


cdef inline bint _is_digit(Py_UCS4 c):
    return u'0' <= c <= u'9'


cdef inline bint _is_id_start(Py_UCS4 c):
    return (u'a' <= c <= u'z') or (u'A' <= c <= u'Z') or c == u'_' or c == u'$'


cdef inline bint _is_id_part(Py_UCS4 c):
    return _is_id_start(c) or _is_digit(c)


cdef inline bint _is_hex(Py_UCS4 c):
    return _is_digit(c) or (u'a' <= c <= u'f') or (u'A' <= c <= u'F') or c == u'_'


cdef Py_ssize_t _exponent(str s, Py_ssize_t j, Py_ssize_t n):
    cdef Py_ssize_t k
    if j < n and (s[j] == u'e' or s[j] == u'E'):
        k = j + 1
        if k < n and (s[k] == u'+' or s[k] == u'-'):
            k += 1
        if k < n and _is_digit(s[k]):
            k += 1
            while k < n and _is_digit(s[k]):
                k += 1
            return k
    return j


cdef Py_ssize_t _number(str s, Py_ssize_t i, Py_ssize_t n):
    cdef Py_ssize_t j
    cdef Py_UCS4 c = s[i]
    if c == u'0' and i + 2 < n and (s[i + 1] == u'x' or s[i + 1] == u'X') and _is_hex(s[i + 2]):
        j = i + 3
        while j < n and _is_hex(s[j]):
            j += 1
        if j < n and (s[j] == u'l' or s[j] == u'L'):
            j += 1
        return j
    if c == u'.':
        j = i + 2
        while j < n and (_is_digit(s[j]) or s[j] == u'_'):
            j += 1
        j = _exponent(s, j, n)
        if j < n and s[j] in u'fFdD':
            j += 1
        return j
    j = i + 1
    while j < n and (_is_digit(s[j]) or s[j] == u'_'):
        j += 1
    if j + 1 < n and s[j] == u'.' and _is_digit(s[j + 1]):
        j += 2
        while j < n and (_is_digit(s[j]) or s[j] == u'_'):
            j += 1
    j = _exponent(s, j, n)
    if j < n and s[j] in u'fFdDlL':
        j += 1
    return j


def scan(str source):
    cdef Py_ssize_t n = len(source)
    cdef Py_ssize_t i = 0, j, line = 1, line_start = 0, count
    cdef Py_UCS4 c, d, q
    cdef list kinds = [], texts = [], lines = [], cols = []
    cdef str text, kind

    while i < n:
        c = source[i]
        if _is_ws(c):
            while i < n:
                c = source[i]
                if c == u'\n':
                    line += 1
                    line_start = i + 1
                elif not _is_ws(c):
                    break
                i += 1
            continue
        if c == u'/' and i + 1 < n:
            d = source[i + 1]
            if d == u'/':
                i += 2
                while i < n and source[i] != u'\n':
                    i += 1
                continue
            if d == u'*':
                j = source.find(u"*/", i + 2)
                if j < 0:
                    raise LexError("unterminated comment", line, i - line_start + 1, "/*")
                j += 2
                while i < j:
                    if source[i] == u'\n':
                        line += 1
                        line_start = i + 1
                    i += 1
                continue

        if _is_id_start(c):
            j = i + 1
            while j < n and _is_id_part(source[j]):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in _KEYWORDS else "identifier"
        elif _is_digit(c) or (c == u'.' and i + 1 < n and _is_digit(source[i + 1])):
            j = _number(source, i, n)
            text = source[i:j]
            kind = "number"
        elif c == u'"' or c == u"'":
            q = c
            j = i + 1
            count = 0
            while True:
                if j >= n or source[j] == u'\n':
                    raise LexError("unterminated literal", line, i - line_start + 1, source[i])
                d = source[j]
                if d == q:
                    break
                if d == u'\\':
                    if j + 1 >= n or source[j + 1] == u'\n':
                        raise LexError("unterminated literal", line, i - line_start + 1, source[i])
                    j += 2
                else:
                    j += 1
                count += 1
            if q == u"'" and count == 0:
                raise LexError("unterminated literal", line, i - line_start + 1, source[i])
            j += 1
            text = source[i:j]
            kind = "string" if q == u'"' else "char"
        else:
            text = source[i:i + 4]
            if text in _P4:
                j = i + 4
            else:
                text = source[i:i + 3]
                if text in _P3:
                    j = i + 3
                else:
                    text = source[i:i + 2]
                    if text in _P2:
                        j = i + 2
                    else:
                        j = i + 1
                        text = source[i:j]
            kind = "punctuation"

        kinds.append(kind)
        texts.append(text)
        lines.append(line)
        cols.append(i - line_start + 1)
        i = j

    kinds.append("eof")
    texts.append("")
    lines.append(line)
    cols.append(n - line_start + 1)
    return kinds, texts, lines, cols
