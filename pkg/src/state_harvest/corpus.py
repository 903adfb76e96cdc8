"""Deterministic Java corpora with a planted golden state machine.

Three families:

``tcp-flat``
    The TCP connection state machine (11 states, 21 transitions) written in
    the singleton-state style. ``SynSent`` is the canonical listing verbatim.
``tcp-deep``
    The same machine with ``extra_depth`` abstract classes inserted above every
    state and every transition's statement group wrapped in ``extra_nesting``
    blocks.
``scale``
    ``num_states`` random states with ``transitions_per_state`` activations
    each, over a random abstract hierarchy, plus non-state filler classes.

The golden machine is recorded while planting transitions; it is never
computed by running extraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .statemachine import NO_LABEL, StateMachine, Transition, to_json

TCP_FLAT = "tcp-flat"
TCP_DEEP = "tcp-deep"
SCALE = "scale"
GOLDEN_FILE = "golden.statemachine.json"

_U64 = 2**64


@dataclass(frozen=True)
class CorpusSpec:
    kind: str = TCP_FLAT
    extra_depth: int = 0
    extra_nesting: int = 0
    num_states: int = 1
    transitions_per_state: int = 1
    max_nesting: int = 1
    seed: int = 0
    fillers: bool = True

    def __post_init__(self):
        if self.kind not in (TCP_FLAT, TCP_DEEP, SCALE):
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        if self.extra_depth < 0 or self.extra_nesting < 0:
            raise ValueError("extra_depth and extra_nesting must be non-negative")
        if self.kind == SCALE:
            for name in ("num_states", "transitions_per_state", "max_nesting"):
                if getattr(self, name) < 1:
                    raise ValueError(f"{name} must be a positive integer")
            if not 0 <= self.seed < _U64:
                raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def tcp(cls) -> "CorpusSpec":
        return cls(TCP_FLAT)

    @classmethod
    def tcp_deep(cls, extra_depth: int, extra_nesting: int) -> "CorpusSpec":
        return cls(TCP_DEEP, extra_depth=extra_depth, extra_nesting=extra_nesting)

    @classmethod
    def scale(cls, num_states, transitions_per_state, max_nesting, seed, **kw) -> "CorpusSpec":
        return cls(SCALE, num_states=num_states, transitions_per_state=transitions_per_state,
                   max_nesting=max_nesting, seed=seed, **kw)


@dataclass(frozen=True)
class GoldenBundle:
    source_files: tuple[tuple[str, str], ...]
    golden_machine: StateMachine

    def write(self, out_dir) -> Path:
        out = Path(out_dir)
        for rel, text in self.source_files:
            path = out / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        (out / GOLDEN_FILE).write_text(to_json(self.golden_machine) + "\n", encoding="utf-8")
        return out


def generate(spec: CorpusSpec) -> GoldenBundle:
    if spec.kind == SCALE:
        return _scale_bundle(spec)
    return _tcp_bundle(spec)


def emit_tcp(spec: CorpusSpec, out_dir) -> GoldenBundle:
    if spec.kind not in (TCP_FLAT, TCP_DEEP):
        raise ValueError("emit_tcp needs a tcp-flat or tcp-deep spec")
    bundle = generate(spec)
    bundle.write(out_dir)
    return bundle


def emit_scale(spec: CorpusSpec, out_dir) -> GoldenBundle:
    if spec.kind != SCALE:
        raise ValueError("emit_scale needs a scale spec")
    bundle = generate(spec)
    bundle.write(out_dir)
    return bundle


# ---------------------------------------------------------------------------
# Java text emission
# ---------------------------------------------------------------------------


class _Writer:
    def __init__(self):
        self.lines: list[str] = []
        self.depth = 0

    def line(self, text: str) -> None:
        self.lines.append("    " * self.depth + text)

    def open(self, head: str = "") -> None:
        self.line(f"{head} {{" if head else "{")
        self.depth += 1

    def close(self, tail: str = "") -> None:
        self.depth -= 1
        self.line("}" + tail)

    def mid(self, text: str) -> None:
        # "} else {" style continuation
        self.depth -= 1
        self.line(text)
        self.depth += 1

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


@dataclass(frozen=True)
class _Planted:
    """One transition: where it lives and how its statement group is written."""

    src: str
    dst: str
    rule: str  # method | switch | catch | bare
    label: Optional[str]  # method name, case constant or exception name
    action: Optional[str]
    wrappers: tuple = ()
    send_after: bool = False
    via_this: bool = False
    pre: tuple = ()
    trailing: tuple = ()

    def transition(self) -> Transition:
        trigger = self.label if self.rule != "bare" else NO_LABEL
        return Transition(self.src, self.dst, trigger, self.action or NO_LABEL)


def _open_wrapper(w: _Writer, wr: tuple) -> None:
    kind = wr[0]
    if kind == "block":
        w.open()
    elif kind in ("if", "while", "for"):
        w.open(f"{kind} ({wr[1]})")
    elif kind == "else":
        w.open(f"if ({wr[1]})")
        w.line(wr[2])
        w.mid("} else {")
    elif kind in ("try", "finally"):
        w.open("try")
    elif kind == "case":
        _, selector, const, _decoys = wr
        w.open(f"switch ({selector})")
        w.line(f"case {const}:")
        w.depth += 1
    elif kind == "catch":
        _, try_filler, exc, _others = wr
        w.open("try")
        w.line(try_filler)
        w.mid(f"}} catch ({exc} e) {{")
    else:
        raise AssertionError(kind)


def _close_wrapper(w: _Writer, wr: tuple) -> None:
    kind = wr[0]
    if kind == "try":
        w.mid(f"}} catch ({wr[1]} e) {{")
        w.line(wr[2])
        w.close()
    elif kind == "finally":
        w.mid("} finally {")
        w.line(wr[1])
        w.close()
    elif kind == "case":
        w.depth -= 1
        for const, filler in wr[3]:
            w.line(f"case {const}:")
            w.depth += 1
            w.line(filler)
            w.line("break;")
            w.depth -= 1
        w.line("default:")
        w.depth += 1
        w.line("break;")
        w.depth -= 1
        w.close()
    elif kind == "catch":
        for exc, filler in wr[3]:
            w.mid(f"}} catch ({exc} e) {{")
            w.line(filler)
        w.close()
    else:
        w.close()


def _emit_group(w: _Writer, p: _Planted, signal_enum: str, extra_nesting: int) -> None:
    for wr in p.wrappers:
        _open_wrapper(w, wr)
    for _ in range(extra_nesting):
        w.open()
    for line in p.pre:
        w.line(line)
    send = None
    if p.action is not None:
        send = f"{'this.' if p.via_this else ''}send({signal_enum}.{p.action});"
    if send and not p.send_after:
        w.line(send)
    w.line(f"{p.dst}.Instance().activate();")
    if send and p.send_after:
        w.line(send)
    for line in p.trailing:
        w.line(line)
    for _ in range(extra_nesting):
        w.close()
    for wr in reversed(p.wrappers):
        _close_wrapper(w, wr)


def _abstract_chain(w_files: list, state: str, parent: str, depth: int, src_dir: str) -> str:
    """Emit ``depth`` abstract classes between ``state`` and ``parent``; return the new parent."""
    for k in range(1, depth + 1):
        name = f"{state}Base{k}"
        w = _Writer()
        w.open(f"public abstract class {name} extends {parent}")
        w.line(f"protected int level{k} = {k};")
        w.close()
        w_files.append((f"{src_dir}/{name}.java", w.text()))
        parent = name
    return parent


# ---------------------------------------------------------------------------
# TCP corpus
# ---------------------------------------------------------------------------

# (state, parent, [(rule, label, dst, action)]) - the 21 edges of the TCP diagram
_TCP_MACHINE = [
    ("Closed", "State", [
        ("method", "listen", "Listen", None),
        ("method", "connect", "SynSent", "SYN"),
    ]),
    ("Listen", "ListeningState", [
        ("method", "close", "Closed", None),
        ("method", "sendData", "SynSent", "SYN"),
        ("switch", "SYN", "SynReceived", "SYN_ACK"),
    ]),
    ("SynSent", "ListeningState", [
        ("method", "close", "Closed", None),
        ("switch", "SYN", "SynReceived", "SYN_ACK"),
        ("switch", "SYN_ACK", "Established", "ACK"),
    ]),
    ("SynReceived", "ListeningState", [
        ("method", "close", "FinWait1", "FIN"),
        ("switch", "ACK", "Established", None),
        ("switch", "RST", "Listen", None),
    ]),
    ("Established", "ListeningState", [
        ("method", "close", "FinWait1", "FIN"),
        ("switch", "FIN", "CloseWait", "ACK"),
    ]),
    ("FinWait1", "ListeningState", [
        ("switch", "ACK", "FinWait2", None),
        ("switch", "FIN", "Closing", "ACK"),
        ("switch", "FIN_ACK", "TimeWait", "ACK"),
    ]),
    ("FinWait2", "ListeningState", [
        ("switch", "FIN", "TimeWait", "ACK"),
    ]),
    ("CloseWait", "State", [
        ("method", "close", "LastAck", "FIN"),
    ]),
    ("Closing", "ListeningState", [
        ("switch", "ACK", "TimeWait", None),
    ]),
    ("LastAck", "ListeningState", [
        ("bare", None, "Closed", None),
    ]),
    ("TimeWait", "State", [
        ("catch", "TimeoutException", "Closed", None),
    ]),
]

TCP_FLAGS = ("SYN", "ACK", "SYN_ACK", "FIN", "FIN_ACK", "RST")

LISTING_SYN_SENT = """\
public class SynSent extends ListeningState {
  private static State instance = new SynSent();
        public static State Instance() { return instance; }
        public void close() { Closed.Instance().activate(); }
        protected void run() {
                switch (getReceivedFlag()) {
                case SYN: send(Flag.SYN_ACK);
                          SynReceived.Instance().activate();
                          return;
                case SYN_ACK: send(Flag.ACK);
                              Established.Instance().activate();
                              return;
} } }
"""

_TCP_STATE = """\
/**
 * Base class of all TCP connection states. Concrete states are singletons
 * and switch the connection over by calling activate() on the next state.
 */
public abstract class State {
    private static State current;
    private static Flag lastSent;

    public static State current() {
        return current;
    }

    public void activate() {
        current = this;
        run();
    }

    public void close() {
        log("close ignored in " + getClass().getName());
    }

    protected void run() {
    }

    protected void send(Flag flag) {
        lastSent = flag;
        Network.transmit(flag);
    }

    protected Flag getReceivedFlag() {
        return null;
    }

    protected void awaitTimeout() throws TimeoutException {
        Network.sleep(2 * Network.MSL);
    }

    protected void log(String message) {
        System.out.println(message);
    }
}
"""

_TCP_LISTENING = """\
public abstract class ListeningState extends State {
    protected Flag received;

    @Override
    protected Flag getReceivedFlag() {
        return received;
    }

    public void receive(Flag flag) {
        received = flag;
        run();
    }
}
"""

_TCP_FLAG = "public enum Flag {\n    " + ", ".join(TCP_FLAGS) + "\n}\n"

_TCP_DRIVER = """\
import java.util.ArrayList;
import java.util.List;

/** Drives a connection; not a state itself. */
public class TcpConnection {
    private final List<Flag> inbox = new ArrayList<Flag>();

    public static void main(String[] args) {
        Closed.Instance().activate();
        State.current().close();
    }

    public void deliver(Flag flag) {
        inbox.add(flag);
        if (State.current() == null) {
            Closed.Instance().activate();
        }
    }
}
"""


def _tcp_plants():
    plants = []
    for state, _parent, edges in _TCP_MACHINE:
        for rule, label, dst, action in edges:
            if rule == "switch":
                trailing = ("return;",)
            else:
                trailing = ()
            plants.append(_Planted(state, dst, rule, label, action, trailing=trailing))
    return plants


def tcp_golden() -> StateMachine:
    return StateMachine.build([s for s, _, _ in _TCP_MACHINE], [p.transition() for p in _tcp_plants()])


def _tcp_state_class(state: str, parent: str, plants: list, nesting: int) -> str:
    w = _Writer()
    w.open(f"public class {state} extends {parent}")
    w.line(f"private static State instance = new {state}();")
    w.line("")
    w.line("public static State Instance() {")
    w.line("    return instance;")
    w.line("}")
    methods: dict[str, list] = {}
    for p in plants:
        if p.rule == "method":
            methods.setdefault(p.label, []).append(p)
    for name, group in methods.items():
        w.line("")
        w.open(f"public void {name}()")
        for p in group:
            _emit_group(w, p, "Flag", nesting)
        w.close()
    run = [p for p in plants if p.rule != "method"]
    if run:
        w.line("")
        w.open("protected void run()")
        cases = [p for p in run if p.rule == "switch"]
        if cases:
            w.open("switch (getReceivedFlag())")
            for p in cases:
                w.line(f"case {p.label}:")
                w.depth += 1
                _emit_group(w, p, "Flag", nesting)
                w.depth -= 1
            w.line("default:")
            w.line("    break;")
            w.close()
        for p in run:
            if p.rule == "catch":
                w.open("try")
                w.line("awaitTimeout();")
                w.mid(f"}} catch ({p.label} e) {{")
                _emit_group(w, p, "Flag", nesting)
                w.close()
            elif p.rule == "bare":
                w.open("if (getReceivedFlag() == Flag.ACK)")
                _emit_group(w, p, "Flag", nesting)
                w.close()
        w.close()
    w.close()
    return w.text()


def _tcp_bundle(spec: CorpusSpec) -> GoldenBundle:
    deep = spec.kind == TCP_DEEP
    depth = spec.extra_depth if deep else 0
    nesting = spec.extra_nesting if deep else 0
    files = [
        ("src/State.java", _TCP_STATE),
        ("src/ListeningState.java", _TCP_LISTENING),
        ("src/Flag.java", _TCP_FLAG),
        ("src/TcpConnection.java", _TCP_DRIVER),
    ]
    plants = _tcp_plants()
    for state, parent, _edges in _TCP_MACHINE:
        mine = [p for p in plants if p.src == state]
        if not deep and state == "SynSent":
            files.append(("src/SynSent.java", LISTING_SYN_SENT))
            continue
        parent = _abstract_chain(files, state, parent, depth, "src")
        files.append((f"src/{state}.java", _tcp_state_class(state, parent, mine, nesting)))
    files.sort()
    return GoldenBundle(tuple(files), tcp_golden())


# ---------------------------------------------------------------------------
# scale corpus
# ---------------------------------------------------------------------------

_STATE_WORDS = (
    "Idle", "Armed", "Waiting", "Syncing", "Ready", "Busy", "Draining", "Paused",
    "Halted", "Primed", "Loading", "Saving", "Parked", "Blocked", "Linked", "Open",
)
_FILLER_WORDS = (
    "Buffer", "Registry", "Codec", "Ledger", "Router", "Monitor", "Catalog", "Journal",
    "Gateway", "Scanner", "Mapper", "Printer", "Invoice", "Account", "Session", "Report",
)
SIGNALS = (
    "OPEN", "CLOSE", "DATA", "ACK", "NACK", "PING", "PONG", "RESET", "SYNC", "FLUSH",
    "RETRY", "ABORT", "GRANT", "DENY", "WAKE", "SLEEP", "PUSH", "PULL", "MARK", "DROP",
)
_EXCEPTIONS = (
    "TimeoutException", "IOException", "ProtocolException", "ResetException",
    "OverflowException", "java.util.concurrent.CancellationException",
)
_TRIGGER_METHODS = (
    "open", "close", "reset", "connect", "suspend", "resume", "abort", "flush",
    "retry", "shutdown", "refresh", "commit", "rollback", "handleTimeout",
)
_OUTER_WRAPPERS = ("block", "if", "else", "while", "for", "try", "finally")
_METHOD_WRAPPERS = _OUTER_WRAPPERS + ("case", "catch")


def _simple_exc(name: str) -> str:
    return name.rsplit(".", 1)[-1]


class _ScalePlanner:
    def __init__(self, spec: CorpusSpec):
        self.spec = spec
        self.rng = random.Random(spec.seed)
        n = spec.num_states
        self.states = [f"{_STATE_WORDS[i % len(_STATE_WORDS)]}{i}" for i in range(n)]
        n_abs = max(1, n // 8)
        self.abstracts = [f"Abstract{_STATE_WORDS[j % len(_STATE_WORDS)]}{j}" for j in range(n_abs)]
        rng = self.rng
        self.abstract_parent = {}
        for j, name in enumerate(self.abstracts):
            self.abstract_parent[name] = rng.choice(["State"] + self.abstracts[:j])
        self.state_parent = {s: rng.choice(self.abstracts) for s in self.states}

    def cond(self) -> str:
        rng = self.rng
        return rng.choice([
            f"total > {rng.randrange(100)}",
            "isReady()",
            f"counter != {rng.randrange(10)}",
            f"getSignal() == Signal.{rng.choice(SIGNALS)}",
            f"retries < {rng.randrange(1, 9)} && !halted",
        ])

    def filler_line(self) -> str:
        rng = self.rng
        k = rng.randrange(1000)
        return rng.choice([
            f"total = total + {k};",
            f'log("note {k}");',
            "counter++;",
            f'Registry.Instance().lookup("key{k}");',
            f"{rng.choice(self.states)}.Instance();",
            f"int tmp{k} = counter * {k % 17 + 1};",
        ])

    def wrapper(self, kind: str) -> tuple:
        rng = self.rng
        if kind == "block":
            return ("block",)
        if kind in ("if", "while"):
            return (kind, self.cond())
        if kind == "else":
            return ("else", self.cond(), self.filler_line())
        if kind == "for":
            return ("for", f"int i = 0; i < {rng.randrange(2, 50)}; i++")
        if kind == "try":
            return ("try", rng.choice(_EXCEPTIONS), self.filler_line())
        if kind == "finally":
            return ("finally", self.filler_line())
        if kind == "case":
            return self.case_wrapper(rng.choice(SIGNALS))
        if kind == "catch":
            return self.catch_wrapper(rng.choice(_EXCEPTIONS))
        raise AssertionError(kind)

    def case_wrapper(self, const: str) -> tuple:
        rng = self.rng
        others = [s for s in SIGNALS if s != const]
        decoys = tuple((c, self.filler_line()) for c in rng.sample(others, rng.randrange(3)))
        selector = rng.choice(["getSignal()", "pending", "this.lastSignal"])
        return ("case", selector, const, decoys)

    def catch_wrapper(self, exc: str) -> tuple:
        rng = self.rng
        others = [e for e in _EXCEPTIONS if _simple_exc(e) != _simple_exc(exc)]
        extra = tuple((e, self.filler_line()) for e in rng.sample(others, rng.randrange(2)))
        return ("catch", "poll();", exc, extra)

    def plant(self, src: str) -> _Planted:
        rng = self.rng
        spec = self.spec
        dst = self.states[rng.randrange(len(self.states))]
        rule = rng.choice(("method", "switch", "catch", "bare"))
        depth = rng.randint(1, spec.max_nesting)
        action = rng.choice(SIGNALS) if rng.random() < 0.6 else None
        send_after = action is not None and rng.random() < 0.2
        via_this = rng.random() < 0.3
        if rule == "method":
            label = rng.choice(_TRIGGER_METHODS)
            wrappers = tuple(self.wrapper(rng.choice(_METHOD_WRAPPERS)) for _ in range(depth))
        elif rule == "bare":
            label = None
            wrappers = tuple(self.wrapper(rng.choice(_OUTER_WRAPPERS)) for _ in range(depth))
        else:
            outer = rng.randrange(depth)
            inner = depth - 1 - outer
            if rule == "switch":
                label = rng.choice(SIGNALS)
                core = self.case_wrapper(label)
            else:
                exc = rng.choice(_EXCEPTIONS)
                label = _simple_exc(exc)
                core = self.catch_wrapper(exc)
            wrappers = (
                tuple(self.wrapper(rng.choice(_OUTER_WRAPPERS)) for _ in range(outer))
                + (core,)
                + tuple(self.wrapper(rng.choice(_OUTER_WRAPPERS)) for _ in range(inner))
            )
        pre = tuple(self.filler_line() for _ in range(rng.randrange(3)))
        trailing = ("return;",) if rng.random() < 0.5 else ()
        return _Planted(src, dst, rule, label, action, wrappers, send_after, via_this, pre, trailing)

    def plan(self):
        plants = {}
        decoys = {}
        for s in self.states:
            plants[s] = [self.plant(s) for _ in range(self.spec.transitions_per_state)]
            # statements around the groups in run(); may include sends that
            # must not leak into any group's action
            decoys[s] = [
                f"send(Signal.{self.rng.choice(SIGNALS)});" if self.rng.random() < 0.4 else self.filler_line()
                for _ in range(len(plants[s]) + 1)
            ]
        return plants, decoys


_ROOT_STATE = """\
package app.core;

/** Root of the state hierarchy. */
public abstract class State {
    protected int total;
    protected int counter;
    protected int retries;
    protected boolean halted;
    protected Signal pending;
    protected Signal lastSignal;

    public void activate() {
        Machine.current = this;
        run();
    }

    protected void run() {
    }

    protected void send(Signal signal) {
        lastSignal = signal;
        Bus.Instance().publish(signal);
    }

    protected Signal getSignal() {
        return pending;
    }

    protected boolean isReady() {
        return !halted && counter > 0;
    }

    protected void poll() throws TimeoutException {
        counter = counter - 1;
    }

    protected void log(String message) {
        Logger.Instance().info(message);
    }
}
"""


def _signal_enum() -> str:
    return "package app.core;\n\npublic enum Signal {\n    " + ", ".join(SIGNALS) + ";\n}\n"


def _state_source(name, parent, plants, decoys, nesting, near_misses) -> str:
    w = _Writer()
    w.line("package app.states;")
    w.line("")
    w.line("import app.core.*;")
    w.line("")
    w.open(f"public class {name} extends {parent}")
    w.line(f"private static State instance = new {name}();")
    w.line("")
    w.open("public static State Instance()")
    w.line("return instance;")
    w.close()
    methods: dict[str, list] = {}
    run = []
    for p in plants:
        if p.rule == "method":
            methods.setdefault(p.label, []).append(p)
        else:
            run.append(p)
    for mname in sorted(methods):
        w.line("")
        w.open(f"public void {mname}()")
        for p in methods[mname]:
            _emit_group(w, p, "Signal", nesting)
        w.close()
    w.line("")
    w.open("protected void run()")
    w.line(decoys[0])
    for p, decoy in zip(run, decoys[1:]):
        _emit_group(w, p, "Signal", nesting)
        w.line(decoy)
    w.close()
    w.line("")
    w.open("private void audit()")
    for line in near_misses:
        w.line(line)
    w.close()
    w.close()
    return w.text()


def _filler_statements(w: _Writer, rng: random.Random, n: int, depth: int, names) -> None:
    for _ in range(n):
        k = rng.randrange(1000)
        pick = rng.randrange(14 if depth < 2 else 9)
        if pick == 0:
            w.line(f"int v{k} = a * {k % 31 + 1} + b;")
        elif pick == 1:
            w.line(f"total = total + a - {k};")
        elif pick == 2:
            w.line(f'log("step {k}: {{ok}} done");')
        elif pick == 3:
            w.line(f"{rng.choice(names)}.Instance().lookup(\"k{k}\");")
        elif pick == 4:
            w.line(f"StringBuilder sb{k} = new StringBuilder();")
            w.line(f"sb{k}.append(name).append({k});")
        elif pick == 5:
            w.line("counter++;")
            w.line(f"flag = !flag && counter < {k};")
        elif pick == 6:
            w.line(f"// recompute running totals ({k})")
            w.line(f"cache.put(name, Integer.valueOf(total % {k % 97 + 2}));")
        elif pick == 7:
            w.line(f"/* bounded by {k} */ b = Math.max(b, {k});")
        elif pick == 8:
            w.line(f"result = compute{k % 5}(a, b) * {k % 7 + 1};")
        elif pick == 9:
            w.open(f"if (total > {k})")
            _filler_statements(w, rng, rng.randint(1, 2), depth + 1, names)
            w.mid("} else {")
            _filler_statements(w, rng, 1, depth + 1, names)
            w.close()
        elif pick == 10:
            w.open(f"for (int i = 0; i < {k % 40 + 2}; i++)")
            _filler_statements(w, rng, rng.randint(1, 2), depth + 1, names)
            w.close()
        elif pick == 11:
            w.open(f"while (total < {k})")
            w.line(f"total += {k % 9 + 1};")
            w.close()
        elif pick == 12:
            w.open("switch (mode)")
            w.line("case FAST:")
            w.line("    counter++;")
            w.line("    break;")
            w.line("default:")
            w.line("    break;")
            w.close()
        else:
            w.open("try")
            w.line("reader.read();")
            w.mid("} catch (IOException e) {")
            w.line(f'log("read failed {k}");')
            w.close()


def _filler_source(name, parent, methods, rng, names) -> str:
    w = _Writer()
    w.line("package app.util;")
    w.line("")
    w.line("import java.util.HashMap;")
    w.line("import java.util.Map;")
    w.line("")
    w.open(f"public class {name}" + (f" extends {parent}" if parent else ""))
    w.line("private int total;")
    w.line("private int counter;")
    w.line("private boolean flag;")
    w.line(f'private String name = "{name.lower()}";')
    w.line("private Map<String, Integer> cache = new HashMap<String, Integer>();")
    w.line("")
    w.open(f"public {name}()")
    w.line("total = 0;")
    w.close()
    for m in range(methods):
        w.line("")
        w.open(f"public int compute{m}(int a, int b)")
        w.line("int result = 0;")
        _filler_statements(w, rng, rng.randint(4, 8), 0, names)
        w.line("return result + total;")
        w.close()
    w.line("")
    w.open("private void log(String message)")
    w.line("System.out.println(message);")
    w.close()
    w.close()
    return w.text()


def _scale_bundle(spec: CorpusSpec) -> GoldenBundle:
    planner = _ScalePlanner(spec)
    plants, decoys = planner.plan()
    # rendering-only randomness lives in its own stream so that fillers,
    # extra_depth and extra_nesting never change the planted machine
    aux = random.Random(spec.seed ^ 0x9E3779B97F4A7C15)
    files = [
        ("src/app/core/State.java", _ROOT_STATE),
        ("src/app/core/Signal.java", _signal_enum()),
    ]
    for name in planner.abstracts:
        w = _Writer()
        w.line("package app.states;")
        w.line("")
        w.line("import app.core.*;")
        w.line("")
        w.open(f"public abstract class {name} extends {planner.abstract_parent[name]}")
        w.open("protected boolean accepts(Signal signal)")
        w.line(f"return signal != Signal.{aux.choice(SIGNALS)};")
        w.close()
        w.close()
        files.append((f"src/app/states/{name}.java", w.text()))
    fillers = [
        f"{_FILLER_WORDS[k % len(_FILLER_WORDS)]}{k}" for k in range(2 * spec.num_states)
    ] if spec.fillers else []
    for s in planner.states:
        parent = _abstract_chain(files, s, planner.state_parent[s], spec.extra_depth, "src/app/states")
        near = [
            f"{aux.choice(planner.states)}.Instance();",
            f"{aux.choice(planner.states)}.Instance().activate(counter);",
            "instance.activate();",
            "Bus.Instance().publish(Signal.PING);" if not fillers else f"{aux.choice(fillers)}.Instance().reset();",
        ]
        files.append((
            f"src/app/states/{s}.java",
            _state_source(s, parent, plants[s], decoys[s], spec.extra_nesting, near),
        ))
    methods = 2 * spec.transitions_per_state
    for k, name in enumerate(fillers):
        parent = fillers[aux.randrange(k)] if k and aux.random() < 0.3 else None
        files.append((f"src/app/util/{name}.java", _filler_source(name, parent, methods, aux, fillers)))
    files.sort()
    golden = StateMachine.build(
        planner.states, [p.transition() for s in planner.states for p in plants[s]]
    )
    return GoldenBundle(tuple(files), golden)
