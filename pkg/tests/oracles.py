"""Independent brute-force oracles used by the property tests."""

from state_harvest.statemachine import StateMachine


def naive_state_names(project, root="State"):
    """Repeatedly sweep the class list until no new subclass of ``root`` appears."""
    classes = list(project.classes())
    reached = {root}
    changed = True
    while changed:
        changed = False
        for c in classes:
            if c.name not in reached and c.superclass_name in reached:
                reached.add(c.name)
                changed = True
    return sorted(c.name for c in classes if c.name in reached and c.name != root and not c.is_abstract)


def referentially_closed(machine: StateMachine) -> bool:
    names = {s.name for s in machine.states}
    return all(t.src in names and t.dst in names for t in machine.transitions)
