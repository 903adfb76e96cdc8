"""Recover a state machine from a parsed project using the singleton-state coding conventions.

One function per convention:

* :func:`collect_state_classes` - concrete classes that (transitively) extend
  the abstract root class.
* :func:`find_activation_sites` - ``Next.Instance().activate()`` calls inside
  state classes.
* :func:`derive_trigger` - method name, switch-case constant, caught exception
  or ``"--"``.
* :func:`derive_action` - the ``send(...)`` constant in the same statement
  list, or ``"--"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from .statemachine import NO_LABEL, StateMachine, Transition, canonicalize, State
from .syntax_graph import (
    BlockStmt,
    CallSegment,
    CatchClause,
    ClassDecl,
    ExprStmt,
    ForStmt,
    IdentifierSegment,
    IfStmt,
    MethodDecl,
    NodeId,
    Project,
    ReferenceChain,
    SourceLocation,
    StatementList,
    SwitchCase,
    SwitchStmt,
    TryStmt,
    WhileStmt,
)

SKIPPED_IN_ABSTRACT = "skipped-activation-in-abstract-class"
UNRESOLVED_DST = "unresolved-dst"
BROKEN_CHAIN = "broken-inheritance-chain"
AMBIGUOUS_CONTEXT = "ambiguous-context"


class ExtractionError(Exception):
    pass


class Tasks(str, enum.Enum):
    """Cumulative task levels: each includes the ones before it."""

    CORE = "core"
    TRIGGERS = "triggers"
    ACTIONS = "actions"

    @property
    def level(self) -> int:
        return list(Tasks).index(self)


@dataclass(frozen=True)
class ExtractionWarning:
    location: Optional[SourceLocation]
    kind: str
    message: str

    def __str__(self) -> str:
        where = str(self.location) if self.location is not None else "-"
        return f"WARN {self.kind} {where} {self.message}"


@dataclass(frozen=True)
class StateSet:
    names: tuple[str, ...]
    nodes: Mapping[str, NodeId]

    def __contains__(self, name: object) -> bool:
        return name in self.nodes

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)


@dataclass(frozen=True)
class ActivationSite:
    node: NodeId
    src_class: ClassDecl
    dst_name: str
    enclosing_method: MethodDecl
    containing_list: StatementList
    index_in_list: int

    @property
    def statement(self) -> ExprStmt:
        return self.containing_list.statements[self.index_in_list]

    @property
    def location(self) -> SourceLocation:
        return self.statement.location


def _warn(warnings, location, kind, message):
    if warnings is not None:
        warnings.append(ExtractionWarning(location, kind, message))


class _Hierarchy:
    """Memoized "does this class's extends-chain reach the root?" resolver."""

    def __init__(self, project: Project, root: ClassDecl, warnings):
        self.project = project
        self.root = root
        self.warnings = warnings
        self.memo: dict[NodeId, bool] = {root.node: True}

    def reaches_root(self, cls: ClassDecl) -> bool:
        path: list[ClassDecl] = []
        on_path: set[NodeId] = set()
        cur = cls
        while True:
            known = self.memo.get(cur.node)
            if known is not None:
                result = known
                break
            sup = cur.superclass_name
            if sup is None:
                result = False
                break
            decls = self.project.classes_named(sup)
            if not decls:
                _warn(self.warnings, cur.location, BROKEN_CHAIN,
                      f"superclass {sup} of {cur.name} is not declared")
                result = False
                break
            if len(decls) > 1:
                where = ", ".join(str(d.location) for d in decls)
                raise ExtractionError(f"ambiguous class name {sup!r} on the chain of {cur.name}: {where}")
            path.append(cur)
            on_path.add(cur.node)
            cur = decls[0]
            if cur.node in on_path:
                cycle = " -> ".join(c.name for c in path) + f" -> {cur.name}"
                raise ExtractionError(f"inheritance cycle: {cycle}")
        for c in path:
            self.memo[c.node] = result
        self.memo[cur.node] = result
        return result


def _root(project: Project, root_name: str, warnings) -> Optional[ClassDecl]:
    roots = project.classes_named(root_name)
    if not roots:
        _warn(warnings, None, BROKEN_CHAIN, f"no class named {root_name} is declared")
        return None
    if len(roots) > 1:
        where = ", ".join(str(r.location) for r in roots)
        raise ExtractionError(f"root class {root_name} is declared more than once: {where}")
    root = roots[0]
    if not root.is_abstract:
        raise ExtractionError(f"root class {root_name} at {root.location} is not abstract")
    return root


def collect_state_classes(project: Project, root_name: str = "State", warnings=None) -> StateSet:
    """Non-abstract classes whose superclass chain reaches the abstract root, sorted by name."""
    root = _root(project, root_name, warnings)
    if root is None:
        return StateSet((), MappingProxyType({}))
    hierarchy = _Hierarchy(project, root, warnings)
    found: dict[str, ClassDecl] = {}
    for cls in project.classes():
        if cls is root:
            continue
        if hierarchy.reaches_root(cls) and not cls.is_abstract:
            if cls.name in found:
                raise ExtractionError(
                    f"state class {cls.name} declared twice: {found[cls.name].location}, {cls.location}"
                )
            found[cls.name] = cls
    names = tuple(sorted(found))
    return StateSet(names, MappingProxyType({n: found[n].node for n in names}))


def _is_activation(expr) -> Optional[str]:
    """Leading identifier of an exact ``X.Instance().activate()`` chain, else None."""
    if type(expr) is not ReferenceChain:
        return None
    segs = expr.segments
    if len(segs) != 3:
        return None
    head, inst, act = segs
    if (type(head) is IdentifierSegment
            and type(inst) is CallSegment and inst.name == "Instance" and not inst.args
            and type(act) is CallSegment and act.name == "activate" and not act.args):
        return head.name
    return None


def _scan_list(lst: StatementList, method: MethodDecl, cls: ClassDecl, out: list) -> None:
    for idx, st in enumerate(lst.statements):
        t = type(st)
        if t is ExprStmt:
            dst = _is_activation(st.expr)
            if dst is not None:
                out.append((st, dst, method, lst, idx))
        elif t is BlockStmt:
            _scan_list(st.body, method, cls, out)
        elif t is IfStmt:
            _scan_list(st.then_body, method, cls, out)
            if st.else_body is not None:
                _scan_list(st.else_body, method, cls, out)
        elif t is SwitchStmt:
            for case in st.cases:
                _scan_list(case.body, method, cls, out)
        elif t is TryStmt:
            _scan_list(st.body, method, cls, out)
            for c in st.catches:
                _scan_list(c.body, method, cls, out)
            if st.finally_body is not None:
                _scan_list(st.finally_body, method, cls, out)
        elif t is WhileStmt or t is ForStmt:
            _scan_list(st.body, method, cls, out)


def _activations(cls: ClassDecl) -> list:
    found: list = []
    for m in cls.methods:
        if type(m.body) is StatementList:
            _scan_list(m.body, m, cls, found)
    return found


def find_activation_sites(project: Project, states: StateSet, warnings=None) -> list[ActivationSite]:
    """Every activation call inside a state class, ordered by (class, file, line, column)."""
    sites = []
    for cls in project.classes():
        if cls.is_abstract:
            for st, _dst, _m, _lst, _idx in _activations(cls):
                _warn(warnings, st.location, SKIPPED_IN_ABSTRACT,
                      f"activation inside abstract class {cls.name} ignored")
            continue
        if states.nodes.get(cls.name) != cls.node:
            continue
        for st, dst, method, lst, idx in _activations(cls):
            if dst not in states:
                _warn(warnings, st.location, UNRESOLVED_DST,
                      f"{dst}.Instance().activate() in {cls.name}.{method.name}: {dst} is not a state")
                continue
            sites.append(ActivationSite(st.node, cls, dst, method, lst, idx))
    sites.sort(key=_site_key)
    return sites


def _site_key(site: ActivationSite):
    st = site.statement
    unit = site.src_class.parent
    return (site.src_class.name, unit.file if unit is not None else "", st.line, st.column, site.node)


def _case_label(case: SwitchCase) -> str:
    cond = case.condition
    if type(cond) is ReferenceChain:
        name = cond.final_identifier()
        if name is not None:
            return name
    raise ExtractionError(f"case label at {case.location} is not an enumeration constant reference")


def derive_trigger(project: Project, site: ActivationSite, warnings=None) -> str:
    method = site.enclosing_method
    if method.name != "run":
        return method.name
    label = None
    saw_case = saw_catch = False
    p = project.node(site.node).parent
    while p is not None and p is not method:
        t = type(p)
        if t is SwitchCase and p.condition is not None:
            saw_case = True
            if label is None:
                label = _case_label(p)
        elif t is CatchClause:
            saw_catch = True
            if label is None:
                label = p.exception_type_name
        p = p.parent
    if saw_case and saw_catch:
        _warn(warnings, site.location, AMBIGUOUS_CONTEXT,
              f"activation of {site.dst_name} sits under both a switch case and a catch block; using {label}")
    return label if label is not None else NO_LABEL


def _send_label(st) -> Optional[str]:
    if type(st) is not ExprStmt or type(st.expr) is not ReferenceChain:
        return None
    segs = st.expr.segments
    if len(segs) == 1:
        call = segs[0]
    elif len(segs) == 2 and type(segs[0]) is IdentifierSegment and segs[0].name == "this":
        call = segs[1]
    else:
        return None
    if type(call) is not CallSegment or call.name != "send" or len(call.args) != 1:
        return None
    arg = call.args[0]
    name = arg.final_identifier() if type(arg) is ReferenceChain else None
    if name is None:
        raise ExtractionError(f"send() at {st.location} does not pass an enumeration constant")
    return name


def derive_action(project: Project, site: ActivationSite) -> str:
    """Nearest ``send`` before the activation in its statement list, else the first after, else ``--``."""
    stmts = site.containing_list.statements
    idx = site.index_in_list
    for i in range(idx - 1, -1, -1):
        label = _send_label(stmts[i])
        if label is not None:
            return label
    for i in range(idx + 1, len(stmts)):
        label = _send_label(stmts[i])
        if label is not None:
            return label
    return NO_LABEL


def build_state_machine(
    project: Project,
    root_name: str = "State",
    tasks: Tasks | str = Tasks.ACTIONS,
) -> tuple[StateMachine, list[ExtractionWarning]]:
    tasks = Tasks(tasks)
    warnings: list[ExtractionWarning] = []
    states = collect_state_classes(project, root_name, warnings)
    sites = find_activation_sites(project, states, warnings)
    transitions = []
    for site in sites:
        trigger = action = None
        if tasks.level >= Tasks.TRIGGERS.level:
            trigger = derive_trigger(project, site, warnings)
        if tasks.level >= Tasks.ACTIONS.level:
            action = derive_action(project, site)
        transitions.append(Transition(site.src_class.name, site.dst_name, trigger, action))
    machine = canonicalize(StateMachine(tuple(State(n) for n in states.names), tuple(transitions)))
    return machine, warnings
