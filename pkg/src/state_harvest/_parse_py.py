"""Recursive-descent parser core.

Plain Python on purpose: the build compiles an identical copy of this file
into the ``_parse_c`` extension, and :mod:`state_harvest.parser` picks
whichever is available.
"""

from typing import Optional

from .lexer import ParseError, ParseWarning, scan
from .syntax_graph import (
    Assignment,
    BinaryExpr,
    BlockStmt,
    BreakStmt,
    CallSegment,
    CatchClause,
    ClassDecl,
    CompilationUnit,
    EnumConstant,
    EnumDecl,
    ExprStmt,
    FieldDecl,
    ForStmt,
    IdentifierSegment,
    IfStmt,
    Literal,
    LocalVarDecl,
    MethodDecl,
    NewSegment,
    Opaque,
    ReferenceChain,
    ReturnStmt,
    SourceLocation,
    StatementList,
    SwitchCase,
    SwitchStmt,
    TryStmt,
    UnaryExpr,
    WhileStmt,
)

STRICT = "strict"
LENIENT = "lenient"

MODIFIERS = frozenset(
    ["public", "private", "protected", "static", "final", "abstract",
     "synchronized", "native", "transient", "volatile", "strictfp", "default"]
)
PRIMITIVES = frozenset(["void", "boolean", "byte", "char", "short", "int", "long", "float", "double"])
ASSIGN_OPS = frozenset(["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="])
BINARY_PREC = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5, "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9, "*": 10, "/": 10, "%": 10,
}
_LITERAL_KINDS = frozenset(["number", "string", "char"])
_LITERAL_KEYWORDS = frozenset(["true", "false", "null"])
_CASE_END = frozenset(["case", "default", "}"])


class _Parser:
    def __init__(self, source: str, file: str, mode: str) -> None:
        if mode not in (STRICT, LENIENT):
            raise ValueError(f"unknown parse mode {mode!r}")
        self.kinds, self.texts, self.lines, self.cols = scan(source, file)
        self.i = 0
        self.file = file
        self.lenient = mode == LENIENT
        self.warnings: list[ParseWarning] = []

    # -- token helpers -----------------------------------------------------

    def error(self, expected: str, at: Optional[int] = None):
        i = self.i if at is None else at
        found = self.texts[i] if self.kinds[i] != "eof" else "<eof>"
        raise ParseError(SourceLocation(self.file, self.lines[i], self.cols[i]), expected, found)

    def expect(self, text: str) -> None:
        if self.texts[self.i] != text or self.kinds[self.i] in _LITERAL_KINDS:
            self.error(repr(text))
        self.i += 1

    def accept(self, text: str) -> bool:
        if self.texts[self.i] == text and self.kinds[self.i] not in _LITERAL_KINDS:
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        i = self.i
        if self.kinds[i] != "identifier":
            self.error("identifier")
        self.i = i + 1
        return self.texts[i]

    def qualified(self) -> str:
        parts = [self.ident()]
        while self.texts[self.i] == "." and self.kinds[self.i + 1] == "identifier":
            self.i += 1
            parts.append(self.ident())
        return ".".join(parts)

    def pos(self):
        return self.lines[self.i], self.cols[self.i]

    # -- compilation unit --------------------------------------------------

    def unit(self) -> CompilationUnit:
        texts = self.texts
        package = None
        self.annotations()
        if self.accept("package"):
            package = self.qualified()
            self.expect(";")
        imports = []
        while texts[self.i] == "import":
            self.i += 1
            self.accept("static")
            name = self.qualified()
            if texts[self.i] == "." and texts[self.i + 1] == "*":
                self.i += 2
                name += ".*"
            self.expect(";")
            imports.append(name)
        types = []
        while self.kinds[self.i] != "eof":
            if self.accept(";"):
                continue
            types.append(self.type_decl())
        return CompilationUnit(self.file, package, imports, types, self.warnings)

    def annotations(self) -> None:
        while self.texts[self.i] == "@" and self.texts[self.i + 1] != "interface":
            self.i += 1
            self.qualified()
            if self.texts[self.i] == "(":
                self.skip_balanced("(", ")")

    def modifiers(self) -> set[str]:
        mods = set()
        texts = self.texts
        while True:
            t = texts[self.i]
            if t in MODIFIERS and self.kinds[self.i] == "keyword":
                mods.add(t)
                self.i += 1
            elif t == "@" and texts[self.i + 1] != "interface":
                self.annotations()
            else:
                return mods

    def skip_balanced(self, open_: str, close: str) -> list[str]:
        """Consume a balanced group starting at ``open_``; return inner token texts."""
        start = self.i
        self.expect(open_)
        depth = 1
        texts, kinds = self.texts, self.kinds
        while depth:
            k = kinds[self.i]
            if k == "eof":
                self.error(repr(close), at=start)
            t = texts[self.i]
            if k == "punctuation":
                if t == open_:
                    depth += 1
                elif t == close:
                    depth -= 1
            self.i += 1
        return texts[start + 1:self.i - 1]

    def type_decl(self):
        line, col = self.pos()
        mods = self.modifiers()
        t = self.texts[self.i]
        if t == "class":
            return self.class_decl(mods, line, col)
        if t == "enum":
            return self.enum_decl(line, col)
        self.error("class or enum declaration")

    def class_decl(self, mods, line, col) -> ClassDecl:
        self.expect("class")
        name = self.ident()
        if self.texts[self.i] == "<":
            self.type_args()
        superclass = None
        interfaces = []
        if self.accept("extends"):
            superclass = _simple(self.type_text())
        if self.accept("implements"):
            interfaces.append(_simple(self.type_text()))
            while self.accept(","):
                interfaces.append(_simple(self.type_text()))
        fields, methods = self.class_body()
        return ClassDecl(name, "abstract" in mods, superclass, fields, methods, line, col, interfaces)

    def enum_decl(self, line, col) -> EnumDecl:
        self.expect("enum")
        name = self.ident()
        if self.accept("implements"):
            self.type_text()
            while self.accept(","):
                self.type_text()
        self.expect("{")
        constants = []
        seen = set()
        while self.kinds[self.i] == "identifier" or self.texts[self.i] == "@":
            self.annotations()
            cline, ccol = self.pos()
            cname = self.ident()
            if cname in seen:
                self.error("unique enum constant", at=self.i - 1)
            seen.add(cname)
            if self.texts[self.i] == "(":
                self.arguments()
            constants.append(EnumConstant(cname, cline, ccol))
            if not self.accept(","):
                break
        fields: list = []
        methods: list = []
        if self.accept(";"):
            self.members(fields, methods)
        self.expect("}")
        return EnumDecl(name, constants, fields, methods, line, col)

    def class_body(self):
        self.expect("{")
        fields: list = []
        methods: list = []
        self.members(fields, methods)
        self.expect("}")
        return fields, methods

    def members(self, fields: list, methods: list) -> None:
        texts, kinds = self.texts, self.kinds
        while texts[self.i] != "}" or kinds[self.i] != "punctuation":
            if kinds[self.i] == "eof":
                self.error("'}'")
            if self.accept(";"):
                continue
            line, col = self.pos()
            mods = self.modifiers()
            if texts[self.i] == "<":
                self.type_args()
            if kinds[self.i] == "identifier" and texts[self.i + 1] == "(":
                name = self.ident()
                methods.append(self.method(name, "", mods, line, col))
                continue
            if kinds[self.i] != "identifier" and texts[self.i] not in PRIMITIVES:
                self.error("member declaration")
            type_name = self.type_text()
            name = self.ident()
            if texts[self.i] == "(":
                methods.append(self.method(name, type_name, mods, line, col))
                continue
            is_static = "static" in mods
            while True:
                ftype = type_name + self.dims()
                init = self.expr() if self.accept("=") else None
                fields.append(FieldDecl(name, ftype, init, is_static, line, col))
                if not self.accept(","):
                    break
                line, col = self.pos()
                name = self.ident()
            self.expect(";")

    def method(self, name, return_type, mods, line, col) -> MethodDecl:
        self.expect("(")
        params = []
        if not self.accept(")"):
            while True:
                self.modifiers()
                ptype = self.type_text()
                if self.accept("..."):
                    ptype += "..."
                pname = self.ident()
                params.append((pname, ptype + self.dims()))
                if not self.accept(","):
                    break
            self.expect(")")
        return_type += self.dims()
        if self.accept("throws"):
            self.type_text()
            while self.accept(","):
                self.type_text()
        if self.accept(";"):
            body = None
        elif self.lenient:
            body = self.lenient_body()
        else:
            body = self.block()
        return MethodDecl(name, "static" in mods, return_type, params, body, line, col)

    def lenient_body(self):
        start = self.i
        try:
            return self.block()
        except ParseError as err:
            if self.texts[start] != "{":
                raise
            self.i = start
            try:
                self.skip_balanced("{", "}")
            except ParseError:
                raise err from None
            loc = SourceLocation(self.file, self.lines[start], self.cols[start])
            self.warnings.append(ParseWarning(loc, "opaque-body", f"method body skipped: {err}"))
            return Opaque(loc.line, loc.column)

    # -- types -------------------------------------------------------------

    def type_text(self) -> str:
        i = self.i
        t = self.texts[i]
        if t in PRIMITIVES and self.kinds[i] == "keyword":
            self.i += 1
            name = t
        else:
            name = self.qualified()
        if self.texts[self.i] == "<":
            name += self.type_args()
        return name + self.dims()

    def type_args(self) -> str:
        # consumes <...>, splitting '>>' / '>>>' closers
        start = self.i
        self.expect("<")
        depth = 1
        out = ["<"]
        texts, kinds = self.texts, self.kinds
        while depth > 0:
            t = texts[self.i]
            k = kinds[self.i]
            if k == "eof" or t in (";", "{", "(", ")", "="):
                self.error("'>'", at=start if k == "eof" else None)
            if t == "<":
                depth += 1
            elif t == ">":
                depth -= 1
            elif t == ">>":
                depth -= 2
            elif t == ">>>":
                depth -= 3
            if depth < 0:
                self.error("'>'")
            out.append(t)
            if t == ",":
                out.append(" ")
            self.i += 1
        return "".join(out)

    def dims(self) -> str:
        out = ""
        while self.texts[self.i] == "[" and self.texts[self.i + 1] == "]":
            self.i += 2
            out += "[]"
        return out

    def skip_type(self, j: int) -> int:
        """Index just past a type starting at ``j``, or -1 if none is there."""
        texts, kinds = self.texts, self.kinds
        if kinds[j] == "identifier" or (texts[j] in PRIMITIVES and kinds[j] == "keyword"):
            j += 1
        else:
            return -1
        while texts[j] == "." and kinds[j + 1] == "identifier":
            j += 2
        if texts[j] == "<":
            depth = 0
            while True:
                t = texts[j]
                if t == "<":
                    depth += 1
                elif t == ">":
                    depth -= 1
                elif t == ">>":
                    depth -= 2
                elif t == ">>>":
                    depth -= 3
                elif not (kinds[j] == "identifier" or t in (",", ".", "?", "extends", "super", "[", "]")
                          or t in PRIMITIVES):
                    return -1
                j += 1
                if depth <= 0:
                    if depth < 0:
                        return -1
                    break
        while texts[j] == "[" and texts[j + 1] == "]":
            j += 2
        return j

    # -- statements --------------------------------------------------------

    def block(self) -> StatementList:
        line, col = self.pos()
        self.expect("{")
        stmts: list = []
        texts, kinds = self.texts, self.kinds
        statement = self.statement
        while texts[self.i] != "}" or kinds[self.i] != "punctuation":
            if kinds[self.i] == "eof":
                self.error("'}'")
            statement(stmts)
        self.i += 1
        return StatementList(stmts, line, col)

    def sub_body(self) -> StatementList:
        if self.texts[self.i] == "{" and self.kinds[self.i] == "punctuation":
            return self.block()
        line, col = self.pos()
        stmts: list = []
        self.statement(stmts)
        return StatementList(stmts, line, col)

    def statement(self, out: list) -> None:
        i = self.i
        t = self.texts[i]
        k = self.kinds[i]
        line = self.lines[i]
        col = self.cols[i]
        if k == "punctuation":
            if t == "{":
                out.append(BlockStmt(self.block(), line, col))
                return
            if t == ";":
                self.i += 1
                return
        elif k == "keyword":
            if t == "if":
                self.i += 1
                self.expect("(")
                cond = self.expr()
                self.expect(")")
                then = self.sub_body()
                other = self.sub_body() if self.accept("else") else None
                out.append(IfStmt(cond, then, other, line, col))
                return
            if t == "return":
                self.i += 1
                value = None if self.texts[self.i] == ";" else self.expr()
                self.expect(";")
                out.append(ReturnStmt(value, line, col))
                return
            if t == "switch":
                out.append(self.switch(line, col))
                return
            if t == "try":
                out.append(self.try_stmt(line, col))
                return
            if t == "while":
                self.i += 1
                self.expect("(")
                cond = self.expr()
                self.expect(")")
                out.append(WhileStmt(cond, self.sub_body(), line, col))
                return
            if t == "for":
                self.i += 1
                header = " ".join(self.skip_balanced("(", ")"))
                out.append(ForStmt(header, self.sub_body(), line, col))
                return
            if t == "break":
                self.i += 1
                if self.kinds[self.i] == "identifier":
                    self.i += 1
                self.expect(";")
                out.append(BreakStmt(line, col))
                return
            if t == "final":
                self.modifiers()
                self.local_decl(out, line, col)
                return
            if t in PRIMITIVES:
                self.local_decl(out, line, col)
                return
            if t not in ("this", "super", "new") and t not in _LITERAL_KEYWORDS:
                self.error("statement")
        elif k == "identifier":
            j = self.skip_type(i)
            if j > 0 and self.kinds[j] == "identifier" and self.texts[j + 1] in ("=", ";", ","):
                self.local_decl(out, line, col)
                return
        e = self.expr()
        self.expect(";")
        out.append(ExprStmt(e, line, col))

    def local_decl(self, out: list, line: int, col: int) -> None:
        type_name = self.type_text()
        while True:
            name = self.ident()
            vtype = type_name + self.dims()
            init = self.expr() if self.accept("=") else None
            out.append(LocalVarDecl(name, vtype, init, line, col))
            if not self.accept(","):
                break
            line, col = self.pos()
        self.expect(";")

    def switch(self, line, col) -> SwitchStmt:
        self.i += 1
        self.expect("(")
        selector = self.expr()
        self.expect(")")
        self.expect("{")
        cases = []
        texts, kinds = self.texts, self.kinds
        while texts[self.i] != "}" or kinds[self.i] != "punctuation":
            cline, ccol = self.pos()
            if self.accept("case"):
                cond = self.expr()
            elif self.accept("default"):
                cond = None
            else:
                self.error("'case' or 'default'")
            self.expect(":")
            bline, bcol = self.pos()
            stmts: list = []
            while texts[self.i] not in _CASE_END or kinds[self.i] in _LITERAL_KINDS:
                if kinds[self.i] == "eof":
                    self.error("'}'")
                self.statement(stmts)
            cases.append(SwitchCase(cond, StatementList(stmts, bline, bcol), cline, ccol))
        self.i += 1
        return SwitchStmt(selector, cases, line, col)

    def try_stmt(self, line, col) -> TryStmt:
        self.i += 1
        body = self.block()
        catches = []
        while self.texts[self.i] == "catch":
            cline, ccol = self.pos()
            self.i += 1
            self.expect("(")
            self.modifiers()
            types = [self.type_text()]
            while self.accept("|"):
                types.append(self.type_text())
            pname = self.ident()
            self.expect(")")
            catches.append(CatchClause(_simple(types[0]), pname, self.block(), cline, ccol))
        final = self.block() if self.accept("finally") else None
        if not catches and final is None:
            self.error("'catch' or 'finally'")
        return TryStmt(body, catches, final, line, col)

    # -- expressions -------------------------------------------------------

    def expr(self):
        line, col = self.pos()
        left = self.binary(1)
        op = self.texts[self.i]
        if op in ASSIGN_OPS and self.kinds[self.i] == "punctuation":
            if type(left) is not ReferenceChain:
                self.error("assignable reference")
            self.i += 1
            return Assignment(left, self.expr(), op, line, col)
        return left

    def binary(self, min_prec: int):
        line, col = self.pos()
        left = self.unary()
        texts, kinds = self.texts, self.kinds
        while True:
            op = texts[self.i]
            prec = BINARY_PREC.get(op)
            if prec is None or prec < min_prec or kinds[self.i] != "punctuation":
                return left
            self.i += 1
            right = self.binary(prec + 1)
            left = BinaryExpr(left, op, right, line, col)

    def unary(self):
        i = self.i
        t = self.texts[i]
        if self.kinds[i] == "punctuation":
            if t in ("!", "-", "+", "~"):
                self.i += 1
                operand = self.unary()
                if t == "-" and type(operand) is Literal and self.kinds[i + 1] == "number":
                    return Literal("-" + operand.text, self.lines[i], self.cols[i])
                return UnaryExpr(t, operand, True, self.lines[i], self.cols[i])
            if t in ("++", "--"):
                self.i += 1
                return UnaryExpr(t, self.unary(), True, self.lines[i], self.cols[i])
        e = self.primary()
        t = self.texts[self.i]
        if (t == "++" or t == "--") and self.kinds[self.i] == "punctuation":
            self.i += 1
            return UnaryExpr(t, e, False, self.lines[i], self.cols[i])
        return e

    def primary(self):
        i = self.i
        k = self.kinds[i]
        t = self.texts[i]
        if k in _LITERAL_KINDS or (k == "keyword" and t in _LITERAL_KEYWORDS):
            self.i += 1
            return Literal(t, self.lines[i], self.cols[i])
        if t == "(" and k == "punctuation":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if k == "identifier" or t in ("this", "super", "new"):
            return self.chain()
        self.error("expression")

    def chain(self) -> ReferenceChain:
        texts, kinds, lines, cols = self.texts, self.kinds, self.lines, self.cols
        i = self.i
        line, col = lines[i], cols[i]
        segs = []
        if texts[i] == "new":
            self.i += 1
            type_name = self.type_text()
            segs.append(NewSegment(type_name, self.arguments(), line, col))
            if texts[self.i] == "{":
                self.error("';'")
        else:
            self.i += 1
            if texts[self.i] == "(":
                segs.append(CallSegment(texts[i], self.arguments(), line, col))
            else:
                segs.append(IdentifierSegment(texts[i], line, col))
        while texts[self.i] == ".":
            self.i += 1
            j = self.i
            if kinds[j] != "identifier" and texts[j] not in ("class", "this"):
                self.error("identifier")
            self.i += 1
            if texts[self.i] == "(":
                segs.append(CallSegment(texts[j], self.arguments(), lines[j], cols[j]))
            else:
                segs.append(IdentifierSegment(texts[j], lines[j], cols[j]))
        return ReferenceChain(segs, line, col)

    def arguments(self) -> list:
        self.expect("(")
        if self.accept(")"):
            return []
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        return args


def _simple(type_name: str) -> str:
    base = type_name.split("<", 1)[0].rstrip("[]")
    return base.rsplit(".", 1)[-1]


