"""Target model: states and transitions, canonical ordering, text formats."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

NO_LABEL = "--"


class ModelError(ValueError):
    """A machine violates referential closure or uniqueness, or a model file is malformed."""


@dataclass(frozen=True, order=True)
class State:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ModelError("state name must be non-empty")


@dataclass(frozen=True)
class Transition:
    src: str
    dst: str
    trigger: Optional[str] = None
    action: Optional[str] = None

    def __post_init__(self):
        if self.trigger == "" or self.action == "":
            raise ModelError("trigger/action must be non-empty when set (use '--')")

    def sort_key(self):
        # absent fields order before present ones
        return (
            self.src,
            self.dst,
            self.trigger is not None,
            self.trigger or "",
            self.action is not None,
            self.action or "",
        )

    def as_tuple(self):
        return (self.src, self.dst, self.trigger, self.action)


@dataclass(frozen=True)
class StateMachine:
    states: tuple[State, ...] = ()
    transitions: tuple[Transition, ...] = ()

    @classmethod
    def build(cls, state_names: Iterable[str], transitions: Iterable[Transition]) -> "StateMachine":
        return canonicalize(cls(tuple(State(n) for n in state_names), tuple(transitions)))

    @property
    def state_names(self) -> list[str]:
        return [s.name for s in self.states]


def canonicalize(machine: StateMachine) -> StateMachine:
    names = [s.name for s in machine.states]
    known = set(names)
    if len(known) != len(names):
        dupes = sorted(n for n, c in Counter(names).items() if c > 1)
        raise ModelError(f"duplicate state names: {', '.join(dupes)}")
    for t in machine.transitions:
        for end in (t.src, t.dst):
            if end not in known:
                raise ModelError(f"transition {t.src} -> {t.dst} references unknown state {end!r}")
    return StateMachine(
        tuple(sorted(machine.states)),
        tuple(sorted(machine.transitions, key=Transition.sort_key)),
    )


def _dumps(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def to_json(machine: StateMachine) -> str:
    """Compact, key-ordered JSON. Unset trigger/action keys are omitted."""
    states = ",".join('{"name":' + _dumps(s.name) + "}" for s in machine.states)
    parts = []
    for t in machine.transitions:
        item = '{"src":' + _dumps(t.src) + ',"dst":' + _dumps(t.dst)
        if t.trigger is not None:
            item += ',"trigger":' + _dumps(t.trigger)
        if t.action is not None:
            item += ',"action":' + _dumps(t.action)
        parts.append(item + "}")
    return '{"states":[' + states + '],"transitions":[' + ",".join(parts) + "]}"


def from_json(text: str) -> StateMachine:
    """Parse the model format. Input order is preserved; call :func:`canonicalize` as needed."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict) or set(data) != {"states", "transitions"}:
        raise ModelError('model must be an object with exactly "states" and "transitions"')
    try:
        states = tuple(State(_str(s, "name")) for s in data["states"])
        transitions = tuple(
            Transition(_str(t, "src"), _str(t, "dst"), _opt(t, "trigger"), _opt(t, "action"))
            for t in data["transitions"]
        )
    except (TypeError, KeyError) as e:
        raise ModelError(f"malformed model entry: {e}") from None
    return StateMachine(states, transitions)


def _str(obj, key):
    v = obj[key]
    if not isinstance(v, str):
        raise TypeError(f"{key} must be a string")
    return v


def _opt(obj, key):
    if key not in obj:
        return None
    return _str(obj, key)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def edge_label(t: Transition) -> Optional[str]:
    parts = [p for p in (t.trigger, t.action) if p is not None]
    if not parts or parts == [NO_LABEL, NO_LABEL]:
        return None
    return " / ".join(parts)


def to_dot(machine: StateMachine) -> str:
    lines = ["digraph statemachine {"]
    lines.extend(f"  {_dot_quote(s.name)};" for s in machine.states)
    for t in machine.transitions:
        edge = f"  {_dot_quote(t.src)} -> {_dot_quote(t.dst)}"
        label = edge_label(t)
        if label is not None:
            edge += f" [label={_dot_quote(label)}]"
        lines.append(edge + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class MachineDiff:
    """Result of :func:`compare`; ``extra`` is what ``actual`` has beyond ``golden``."""

    missing_states: list[str] = field(default_factory=list)
    extra_states: list[str] = field(default_factory=list)
    missing_transitions: list[Transition] = field(default_factory=list)
    extra_transitions: list[Transition] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not (self.missing_states or self.extra_states
                    or self.missing_transitions or self.extra_transitions)

    def report(self) -> str:
        if self.equal:
            return "models are equal"
        out = []
        for label, items in (("missing state", self.missing_states), ("extra state", self.extra_states)):
            out.extend(f"{label}: {name}" for name in items)
        for label, items in (("missing transition", self.missing_transitions),
                             ("extra transition", self.extra_transitions)):
            out.extend(f"{label}: {_fmt(t)}" for t in items)
        return "\n".join(out)


def _fmt(t: Transition) -> str:
    trig = "<unset>" if t.trigger is None else t.trigger
    act = "<unset>" if t.action is None else t.action
    return f"{t.src} -> {t.dst} [{trig} / {act}]"


def compare(actual: StateMachine, golden: StateMachine) -> MachineDiff:
    a_states = {s.name for s in actual.states}
    g_states = {s.name for s in golden.states}
    a_tr = Counter(t.as_tuple() for t in actual.transitions)
    g_tr = Counter(t.as_tuple() for t in golden.transitions)
    missing = sorted((Transition(*k) for k in (g_tr - a_tr).elements()), key=Transition.sort_key)
    extra = sorted((Transition(*k) for k in (a_tr - g_tr).elements()), key=Transition.sort_key)
    return MachineDiff(sorted(g_states - a_states), sorted(a_states - g_states), missing, extra)
