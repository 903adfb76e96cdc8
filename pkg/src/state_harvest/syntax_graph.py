"""In-memory abstract syntax graph for the supported Java subset.

Nodes are plain slotted objects. A :class:`Project` assigns every node an
integer id and a parent link when it is built; after that nothing in this
package mutates the graph, so a project can be shared between readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Sequence

NodeId = int


class UnknownNodeError(KeyError):
    """Raised when a NodeId does not belong to the project."""


@dataclass(frozen=True)
class SourceLocation:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class Node:
    __slots__ = ("node", "parent", "line", "column")

    def __init__(self, line: int = 1, column: int = 1) -> None:
        self.node: NodeId = -1
        self.parent: Optional[Node] = None
        self.line = line
        self.column = column

    def children(self) -> Sequence[Node]:
        return ()

    def unit(self) -> Optional[CompilationUnit]:
        n: Optional[Node] = self
        while n is not None and not isinstance(n, CompilationUnit):
            n = n.parent
        return n

    @property
    def location(self) -> SourceLocation:
        unit = self.unit()
        return SourceLocation(unit.file if unit else "<unknown>", self.line, self.column)

    def __repr__(self) -> str:
        name = getattr(self, "name", None)
        tag = f" {name!r}" if isinstance(name, str) else ""
        return f"<{type(self).__name__}{tag} #{self.node} @{self.line}:{self.column}>"


# ---------------------------------------------------------------------------
# declarations
# ---------------------------------------------------------------------------


class CompilationUnit(Node):
    __slots__ = ("file", "package_name", "imports", "types", "warnings")

    def __init__(self, file, package_name, imports, types, warnings=None):
        super().__init__(1, 1)
        self.file: str = file
        self.package_name: Optional[str] = package_name
        self.imports: tuple[str, ...] = tuple(imports)
        self.types: tuple = tuple(types)
        self.warnings: tuple = tuple(warnings) if warnings is not None else ()

    def children(self):
        return self.types


class ClassDecl(Node):
    __slots__ = ("name", "is_abstract", "superclass_name", "interfaces", "fields", "methods")

    def __init__(self, name, is_abstract, superclass_name, fields, methods,
                 line=1, column=1, interfaces=()):
        super().__init__(line, column)
        self.name: str = name
        self.is_abstract: bool = is_abstract
        self.superclass_name: Optional[str] = superclass_name
        self.interfaces: tuple = tuple(interfaces)
        self.fields: tuple[FieldDecl, ...] = tuple(fields)
        self.methods: tuple[MethodDecl, ...] = tuple(methods)

    def children(self):
        return (*self.fields, *self.methods)


class EnumDecl(Node):
    __slots__ = ("name", "constants", "fields", "methods")

    def __init__(self, name, constants, fields=(), methods=(), line=1, column=1):
        super().__init__(line, column)
        self.name: str = name
        self.constants: tuple[EnumConstant, ...] = tuple(constants)
        self.fields: tuple[FieldDecl, ...] = tuple(fields)
        self.methods: tuple[MethodDecl, ...] = tuple(methods)

    def children(self):
        return (*self.constants, *self.fields, *self.methods)


class EnumConstant(Node):
    __slots__ = ("name",)

    def __init__(self, name, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name


class MethodDecl(Node):
    """A method or constructor.

    ``body`` is a :class:`StatementList`, an :class:`Opaque` placeholder when
    lenient parsing gave up on it, or ``None`` for bodiless (abstract)
    declarations. Constructors have an empty ``return_type_name``.
    """

    __slots__ = ("name", "is_static", "return_type_name", "params", "body")

    def __init__(self, name, is_static, return_type_name, params, body, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name
        self.is_static: bool = is_static
        self.return_type_name: str = return_type_name
        self.params: tuple[tuple[str, str], ...] = tuple(params)
        self.body = body

    def children(self):
        return (self.body,) if self.body is not None else ()


class Opaque(Node):
    """Unparsed method body (lenient mode only)."""

    __slots__ = ()


class FieldDecl(Node):
    __slots__ = ("name", "type_name", "initializer", "is_static")

    def __init__(self, name, type_name, initializer, is_static, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name
        self.type_name: str = type_name
        self.initializer = initializer
        self.is_static: bool = is_static

    def children(self):
        return (self.initializer,) if self.initializer is not None else ()


# ---------------------------------------------------------------------------
# statements
# ---------------------------------------------------------------------------


class StatementList(Node):
    __slots__ = ("statements",)

    def __init__(self, statements, line=1, column=1):
        super().__init__(line, column)
        self.statements: tuple[Statement, ...] = tuple(statements)

    def children(self):
        return self.statements


class Statement(Node):
    __slots__ = ()


class BlockStmt(Statement):
    __slots__ = ("body",)

    def __init__(self, body, line=1, column=1):
        super().__init__(line, column)
        self.body: StatementList = body

    def children(self):
        return (self.body,)


class SwitchStmt(Statement):
    __slots__ = ("selector", "cases")

    def __init__(self, selector, cases, line=1, column=1):
        super().__init__(line, column)
        self.selector = selector
        self.cases: tuple[SwitchCase, ...] = tuple(cases)

    def children(self):
        return (self.selector, *self.cases)


class SwitchCase(Node):
    """One ``case X:`` or ``default:`` arm. ``condition`` is None for default."""

    __slots__ = ("condition", "body")

    def __init__(self, condition, body, line=1, column=1):
        super().__init__(line, column)
        self.condition = condition
        self.body: StatementList = body

    @property
    def is_default(self) -> bool:
        return self.condition is None

    def children(self):
        if self.condition is None:
            return (self.body,)
        return (self.condition, self.body)


class TryStmt(Statement):
    __slots__ = ("body", "catches", "finally_body")

    def __init__(self, body, catches, finally_body=None, line=1, column=1):
        super().__init__(line, column)
        self.body: StatementList = body
        self.catches: tuple[CatchClause, ...] = tuple(catches)
        self.finally_body: Optional[StatementList] = finally_body

    def children(self):
        if self.finally_body is None:
            return (self.body, *self.catches)
        return (self.body, *self.catches, self.finally_body)


class CatchClause(Node):
    __slots__ = ("exception_type_name", "param_name", "body")

    def __init__(self, exception_type_name, param_name, body, line=1, column=1):
        super().__init__(line, column)
        self.exception_type_name: str = exception_type_name
        self.param_name: str = param_name
        self.body: StatementList = body

    def children(self):
        return (self.body,)


class IfStmt(Statement):
    __slots__ = ("condition", "then_body", "else_body")

    def __init__(self, condition, then_body, else_body=None, line=1, column=1):
        super().__init__(line, column)
        self.condition = condition
        self.then_body: StatementList = then_body
        self.else_body: Optional[StatementList] = else_body

    def children(self):
        if self.else_body is None:
            return (self.condition, self.then_body)
        return (self.condition, self.then_body, self.else_body)


class WhileStmt(Statement):
    __slots__ = ("condition", "body")

    def __init__(self, condition, body, line=1, column=1):
        super().__init__(line, column)
        self.condition = condition
        self.body: StatementList = body

    def children(self):
        return (self.condition, self.body)


class ForStmt(Statement):
    __slots__ = ("header", "body")

    def __init__(self, header, body, line=1, column=1):
        super().__init__(line, column)
        self.header: str = header
        self.body: StatementList = body

    def children(self):
        return (self.body,)


class ExprStmt(Statement):
    __slots__ = ("expr",)

    def __init__(self, expr, line=1, column=1):
        super().__init__(line, column)
        self.expr = expr

    def children(self):
        return (self.expr,)


class ReturnStmt(Statement):
    __slots__ = ("value",)

    def __init__(self, value=None, line=1, column=1):
        super().__init__(line, column)
        self.value = value

    def children(self):
        return (self.value,) if self.value is not None else ()


class LocalVarDecl(Statement):
    __slots__ = ("name", "type_name", "initializer")

    def __init__(self, name, type_name, initializer=None, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name
        self.type_name: str = type_name
        self.initializer = initializer

    def children(self):
        return (self.initializer,) if self.initializer is not None else ()


class BreakStmt(Statement):
    __slots__ = ()


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


class Expression(Node):
    __slots__ = ()


class ReferenceChain(Expression):
    """``a.b().c`` style access; the carrier for every call."""

    __slots__ = ("segments",)

    def __init__(self, segments, line=1, column=1):
        super().__init__(line, column)
        self.segments: tuple[Segment, ...] = tuple(segments)

    def children(self):
        return self.segments

    def final_identifier(self) -> Optional[str]:
        last = self.segments[-1]
        return last.name if type(last) is IdentifierSegment else None


class Literal(Expression):
    __slots__ = ("text",)

    def __init__(self, text, line=1, column=1):
        super().__init__(line, column)
        self.text: str = text


class BinaryExpr(Expression):
    __slots__ = ("left", "operator", "right")

    def __init__(self, left, operator, right, line=1, column=1):
        super().__init__(line, column)
        self.left = left
        self.operator: str = operator
        self.right = right

    def children(self):
        return (self.left, self.right)


class UnaryExpr(Expression):
    __slots__ = ("operator", "operand", "prefix")

    def __init__(self, operator, operand, prefix=True, line=1, column=1):
        super().__init__(line, column)
        self.operator: str = operator
        self.operand = operand
        self.prefix: bool = prefix

    def children(self):
        return (self.operand,)


class Assignment(Expression):
    __slots__ = ("target", "operator", "value")

    def __init__(self, target, value, operator="=", line=1, column=1):
        super().__init__(line, column)
        self.target: ReferenceChain = target
        self.operator: str = operator
        self.value = value

    def children(self):
        return (self.target, self.value)


class Segment(Node):
    __slots__ = ("name",)


class IdentifierSegment(Segment):
    __slots__ = ()

    def __init__(self, name, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name


class CallSegment(Segment):
    __slots__ = ("args",)

    def __init__(self, name, args, line=1, column=1):
        super().__init__(line, column)
        self.name: str = name
        self.args: tuple = tuple(args)

    def children(self):
        return self.args


class NewSegment(Segment):
    __slots__ = ("args",)

    def __init__(self, type_name, args, line=1, column=1):
        super().__init__(line, column)
        self.name: str = type_name
        self.args: tuple = tuple(args)

    @property
    def type_name(self) -> str:
        return self.name

    def children(self):
        return self.args


STATEMENT_TYPES = (Statement,)
EXPRESSION_TYPES = (Expression, Segment)


# ---------------------------------------------------------------------------
# project
# ---------------------------------------------------------------------------


class Project:
    """A forest of compilation units with ids, parent links and name indexes.

    Units are linked in the order given; :func:`state_harvest.parser.parse_project`
    passes them sorted by path.
    """

    def __init__(self, units: Sequence[CompilationUnit] = ()) -> None:
        self.units: tuple[CompilationUnit, ...] = tuple(units)
        nodes: list[Node] = []
        class_index: dict[str, list[NodeId]] = {}
        enum_index: dict[str, NodeId] = {}
        for unit in self.units:
            _link(unit, nodes)
            for decl in unit.types:
                if isinstance(decl, ClassDecl):
                    class_index.setdefault(decl.name, []).append(decl.node)
                elif isinstance(decl, EnumDecl):
                    enum_index.setdefault(decl.name, decl.node)
        self._nodes = nodes
        self.class_index: Mapping[str, tuple[NodeId, ...]] = MappingProxyType(
            {k: tuple(v) for k, v in class_index.items()}
        )
        self.enum_index: Mapping[str, NodeId] = MappingProxyType(enum_index)

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: NodeId) -> Node:
        if type(node_id) is not int or not 0 <= node_id < len(self._nodes):
            raise UnknownNodeError(node_id)
        return self._nodes[node_id]

    def nodes(self) -> Iterator[Node]:
        return iter(self._nodes)

    def classes_named(self, name: str) -> list[ClassDecl]:
        return [self._nodes[i] for i in self.class_index.get(name, ())]

    def classes(self) -> Iterator[ClassDecl]:
        for unit in self.units:
            for decl in unit.types:
                if isinstance(decl, ClassDecl):
                    yield decl

    def parent_of(self, node_id: NodeId) -> Optional[NodeId]:
        parent = self.node(node_id).parent
        return parent.node if parent is not None else None


def _link(root: Node, nodes: list[Node]) -> None:
    # preorder, source order; ids are positions in ``nodes``
    root.parent = None
    stack = [root]
    pop = stack.pop
    push = stack.append
    append = nodes.append
    while stack:
        n = pop()
        n.node = len(nodes)
        append(n)
        kids = n.children()
        if kids:
            for c in reversed(kids):
                c.parent = n
                push(c)


def ancestors(project: Project, node: NodeId) -> list[NodeId]:
    """Parent chain of ``node``, nearest first, ending at its compilation unit."""
    out = []
    p = project.node(node).parent
    while p is not None:
        out.append(p.node)
        p = p.parent
    return out


def enclosing_context(
    project: Project, node: NodeId
) -> tuple[Optional[MethodDecl], Optional[ClassDecl]]:
    method = cls = None
    p = project.node(node).parent
    while p is not None:
        if method is None and isinstance(p, MethodDecl):
            method = p
        elif isinstance(p, ClassDecl):
            cls = p
            break
        p = p.parent
    return method, cls


def walk(root: Node) -> Iterator[Node]:
    """Preorder traversal in source order."""
    stack = [root]
    while stack:
        n = stack.pop()
        yield n
        kids = n.children()
        if kids:
            stack.extend(reversed(kids))
