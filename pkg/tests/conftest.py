from __future__ import annotations

import pytest

from state_harvest import CorpusSpec, build_state_machine, generate, parse_project
from state_harvest.corpus import LISTING_SYN_SENT
from state_harvest.syntax_graph import Project

# filled in by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []

STATE_ROOT = """\
public abstract class State {
    public abstract void activate();
    protected void send(Flag f) { }
}
"""
LISTENING = "public abstract class ListeningState extends State { }\n"
FLAG = "public enum Flag { SYN, ACK, SYN_ACK, FIN, FIN_ACK, RST }\n"


def project_of(*sources: str, names=None) -> Project:
    """Link a project from raw texts; file names default to f0.java, f1.java, ..."""
    names = names or [f"f{i}.java" for i in range(len(sources))]
    return parse_project(list(zip(names, sources)))


def with_prelude(*sources: str) -> Project:
    return project_of(STATE_ROOT, LISTENING, FLAG, *sources)


def extract(*sources: str, tasks="actions"):
    machine, warnings = build_state_machine(with_prelude(*sources), tasks=tasks)
    return machine


@pytest.fixture(scope="session")
def tcp_bundle():
    return generate(CorpusSpec.tcp())


@pytest.fixture(scope="session")
def tcp_project(tcp_bundle):
    return parse_project(tcp_bundle.source_files)


@pytest.fixture(scope="session")
def listing_project():
    # the reference SynSent class plus the declarations it refers to
    return with_prelude(
        LISTING_SYN_SENT,
        "public class Closed extends State { }\n",
        "public class SynReceived extends ListeningState { }\n",
        "public class Established extends State { }\n",
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
