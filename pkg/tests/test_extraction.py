import pytest

from state_harvest import Tasks, build_state_machine, parse_project
from state_harvest.extraction import (
    AMBIGUOUS_CONTEXT,
    BROKEN_CHAIN,
    SKIPPED_IN_ABSTRACT,
    UNRESOLVED_DST,
    ExtractionError,
    collect_state_classes,
    derive_action,
    derive_trigger,
    find_activation_sites,
)
from state_harvest.statemachine import Transition

from conftest import extract, project_of, with_prelude
from oracles import naive_state_names, referentially_closed


def machine_rows(*sources, tasks="actions"):
    return [t.as_tuple() for t in extract(*sources, tasks=tasks).transitions]


def state(name, body, parent="ListeningState"):
    return f"public class {name} extends {parent} {{\n{body}\n}}\n"


TARGET = state("Target", "")


# -- state classes -----------------------------------------------------------

def test_abstract_intermediates_are_not_states(listing_project):
    states = collect_state_classes(listing_project)
    assert states.names == ("Closed", "Established", "SynReceived", "SynSent")


def test_no_root_class_gives_empty_set_with_warning():
    warnings = []
    states = collect_state_classes(project_of("class A {}"), warnings=warnings)
    assert len(states) == 0
    assert [w.kind for w in warnings] == [BROKEN_CHAIN]


def test_tcp_state_names(tcp_project):
    assert collect_state_classes(tcp_project).names == (
        "CloseWait", "Closed", "Closing", "Established", "FinWait1", "FinWait2",
        "LastAck", "Listen", "SynReceived", "SynSent", "TimeWait",
    )


def test_undeclared_superclass_warns():
    warnings = []
    p = with_prelude("class Orphan extends Missing {}")
    collect_state_classes(p, warnings=warnings)
    assert [w.kind for w in warnings] == [BROKEN_CHAIN]
    assert "Missing" in warnings[0].message


def test_inheritance_cycle_is_error():
    with pytest.raises(ExtractionError, match="cycle"):
        collect_state_classes(with_prelude("class A extends B {}", "class B extends A {}"))


def test_root_must_be_abstract():
    with pytest.raises(ExtractionError, match="not abstract"):
        collect_state_classes(project_of("class State {}"))


def test_ambiguous_superclass_is_error():
    p = project_of("abstract class State {}", "class Mid extends State {}", "class Mid {}",
                   "class Leaf extends Mid {}")
    with pytest.raises(ExtractionError, match="ambiguous"):
        collect_state_classes(p)


def test_duplicate_state_names_are_error():
    with pytest.raises(ExtractionError, match="declared twice"):
        collect_state_classes(with_prelude("class A extends State {}", "class A extends State {}"))


def test_custom_root_name():
    p = project_of("abstract class Mode {}", "class On extends Mode {}", "class Off extends Mode {}")
    machine, _ = build_state_machine(p, root_name="Mode")
    assert machine.state_names == ["Off", "On"]


# -- activation sites -------------------------------------------------------

def test_listing_sites(listing_project):
    states = collect_state_classes(listing_project)
    sites = find_activation_sites(listing_project, states)
    assert [(s.src_class.name, s.dst_name, s.enclosing_method.name) for s in sites] == [
        ("SynSent", "Closed", "close"),
        ("SynSent", "SynReceived", "run"),
        ("SynSent", "Established", "run"),
    ]


def test_empty_methods_have_no_sites():
    p = with_prelude(state("Idle", "void a() { } void b() { }"))
    assert find_activation_sites(p, collect_state_classes(p)) == []


@pytest.mark.parametrize("stmt", [
    "Target.Instance();",
    "Target.activate();",
    "Target.Instance().activate(1);",
    "Target.Instance(x).activate();",
    "this.Target.Instance().activate();",
    "Target.Instance().activate().x();",
    "y = Target.Instance().activate();",
])
def test_near_misses_are_not_sites(stmt):
    assert machine_rows(state("A", f"void go() {{ {stmt} }}"), TARGET) == []


def test_activation_outside_state_class_ignored():
    assert machine_rows("class Driver { void go() { Target.Instance().activate(); } }", TARGET) == []


def test_activation_in_abstract_state_class_warns():
    p = with_prelude(state("Base", "void go() { Target.Instance().activate(); }").replace(
        "public class", "public abstract class"), state("Target", "", parent="Base"))
    machine, warnings = build_state_machine(p)
    assert machine.transitions == ()
    assert [w.kind for w in warnings] == [SKIPPED_IN_ABSTRACT]


def test_unknown_destination_warns_and_skips():
    machine, warnings = build_state_machine(with_prelude(
        state("A", "void go() { Ghost.Instance().activate(); Target.Instance().activate(); }"), TARGET))
    assert [t.dst for t in machine.transitions] == ["Target"]
    assert [w.kind for w in warnings] == [UNRESOLVED_DST]
    assert str(warnings[0]).startswith("WARN unresolved-dst f3.java:2:13 ")


@pytest.mark.parametrize("wrap", [
    "if (c) { %s }", "if (c) { } else { %s }", "if (c) %s", "while (c) { %s }", "for (;;) { %s }",
    "try { %s } finally { }", "try { } finally { %s }", "{ { { %s } } }",
])
def test_sites_found_at_any_nesting(wrap):
    body = "void go() { " + wrap % "Target.Instance().activate();" + " }"
    assert machine_rows(state("A", body), TARGET) == [("A", "Target", "go", "--")]


def test_self_loop_and_parallel_edges():
    rows = machine_rows(state("A", "void x() { A.Instance().activate(); } void y() { A.Instance().activate(); }"))
    assert rows == [("A", "A", "x", "--"), ("A", "A", "y", "--")]


# -- triggers ----------------------------------------------------------------

TRIGGER_FIXTURES = {
    "method": (state("A", "public void close() { send(Flag.FIN); Target.Instance().activate(); }"), "close"),
    "switch": (state("A", "protected void run() { switch (getReceivedFlag()) {\n"
                          "case ACK: Target.Instance().activate(); return;\n"
                          "default: break; } }"), "ACK"),
    "catch": (state("A", "protected void run() { try { waitFor(); }\n"
                         "catch (java.util.concurrent.TimeoutException e) { Target.Instance().activate(); } }"),
              "TimeoutException"),
    "bare": (state("A", "protected void run() { Target.Instance().activate(); }"), "--"),
}


@pytest.mark.parametrize("rule", sorted(TRIGGER_FIXTURES))
def test_trigger_rules(rule):
    src, expected = TRIGGER_FIXTURES[rule]
    (row,) = machine_rows(src, TARGET)
    assert row[2] == expected


def test_listing_triggers_and_actions(listing_project):
    states = collect_state_classes(listing_project)
    sites = find_activation_sites(listing_project, states)
    got = [(s.dst_name, derive_trigger(listing_project, s), derive_action(listing_project, s)) for s in sites]
    assert got == [("Closed", "close", "--"), ("SynReceived", "SYN", "SYN_ACK"), ("Established", "SYN_ACK", "ACK")]


def test_method_name_dominates_switch_and_catch():
    body = ("void handle() { switch (f) { case SYN: try { x(); } catch (IOException e) {"
            " Target.Instance().activate(); } } }")
    assert machine_rows(state("A", body), TARGET) == [("A", "Target", "handle", "--")]


def test_default_case_is_unconditional():
    body = "void run() { switch (f) { default: Target.Instance().activate(); } }"
    assert machine_rows(state("A", body), TARGET)[0][2] == "--"


def test_qualified_case_label_uses_final_identifier():
    body = "void run() { switch (f) { case Flag.FIN: Target.Instance().activate(); } }"
    assert machine_rows(state("A", body), TARGET)[0][2] == "FIN"


def test_literal_case_label_is_error():
    body = "void run() { switch (n) { case 3: Target.Instance().activate(); } }"
    with pytest.raises(ExtractionError, match="case label"):
        extract(state("A", body), TARGET)


def test_nearest_of_case_and_catch_wins_with_warning():
    body = ("void run() { switch (f) { case SYN: try { x(); } catch (IOException e) {"
            " Target.Instance().activate(); } } }")
    machine, warnings = build_state_machine(with_prelude(state("A", body), TARGET))
    assert machine.transitions[0].trigger == "IOException"
    assert [w.kind for w in warnings] == [AMBIGUOUS_CONTEXT]


def test_if_guard_is_unconditional():
    body = "void run() { if (ok) { Target.Instance().activate(); } }"
    assert machine_rows(state("A", body), TARGET)[0][2] == "--"


# -- actions -----------------------------------------------------------------

ACTION_FIXTURES = {
    "same-block": ("void go() { send(Flag.SYN); Target.Instance().activate(); }", "SYN"),
    "none": ("void go() { Target.Instance().activate(); }", "--"),
    "sibling-block": ("void go() { { send(Flag.SYN); } { Target.Instance().activate(); } }", "--"),
    "outer-block": ("void go() { send(Flag.SYN); if (c) { Target.Instance().activate(); } }", "--"),
    "inner-block": ("void go() { if (c) { send(Flag.SYN); } Target.Instance().activate(); }", "--"),
}


@pytest.mark.parametrize("case", sorted(ACTION_FIXTURES))
def test_action_rules(case):
    body, expected = ACTION_FIXTURES[case]
    (row,) = machine_rows(state("A", body), TARGET)
    assert row[3] == expected


def test_nearest_preceding_send_wins():
    body = "void go() { send(Flag.FIN); log(); send(Flag.ACK); x = 1; Target.Instance().activate(); return; }"
    assert machine_rows(state("A", body), TARGET)[0][3] == "ACK"


def test_following_send_used_when_none_precedes():
    body = "void go() { log(); Target.Instance().activate(); send(Flag.RST); send(Flag.ACK); }"
    assert machine_rows(state("A", body), TARGET)[0][3] == "RST"


def test_this_send_and_bare_constant():
    body = "void go() { this.send(ACK); Target.Instance().activate(); }"
    assert machine_rows(state("A", body), TARGET)[0][3] == "ACK"


@pytest.mark.parametrize("call", ["other.send(Flag.ACK);", "send(Flag.ACK, 2);", "send();", "resend(Flag.ACK);"])
def test_non_send_calls_ignored(call):
    body = f"void go() {{ {call} Target.Instance().activate(); }}"
    assert machine_rows(state("A", body), TARGET)[0][3] == "--"


def test_send_of_non_constant_is_error():
    body = "void go() { send(make()); Target.Instance().activate(); }"
    with pytest.raises(ExtractionError, match="send"):
        extract(state("A", body), TARGET)


# -- task levels -------------------------------------------------------------

def test_task_levels_are_cumulative(listing_project):
    core, _ = build_state_machine(listing_project, tasks=Tasks.CORE)
    trig, _ = build_state_machine(listing_project, tasks="triggers")
    full, _ = build_state_machine(listing_project, tasks="actions")
    assert all(t.trigger is None and t.action is None for t in core.transitions)
    assert all(t.trigger is not None and t.action is None for t in trig.transitions)
    assert Transition("SynSent", "SynReceived", "SYN", "SYN_ACK") in full.transitions
    assert [(t.src, t.dst) for t in core.transitions] == [(t.src, t.dst) for t in full.transitions]


def test_empty_project():
    machine, warnings = build_state_machine(parse_project([]))
    assert machine.states == () and machine.transitions == ()


def test_tcp_machine(tcp_project, tcp_bundle):
    machine, warnings = build_state_machine(tcp_project)
    assert warnings == []
    assert (len(machine.states), len(machine.transitions)) == (11, 21)
    assert machine == tcp_bundle.golden_machine
    assert referentially_closed(machine)
    assert machine.state_names == naive_state_names(tcp_project)
    assert all(t.trigger for t in machine.transitions)


def test_activation_in_unrelated_abstract_class_warns():
    p = with_prelude("abstract class Helper { void go() { Target.Instance().activate(); } }", TARGET)
    machine, warnings = build_state_machine(p)
    assert machine.transitions == ()
    assert [w.kind for w in warnings] == [SKIPPED_IN_ABSTRACT]
