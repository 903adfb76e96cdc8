"""Recover state machines from Java code written in the singleton-state style."""

from .corpus import CorpusSpec, GoldenBundle, generate
from .extraction import Tasks, build_state_machine
from .parser import parse_project, parse_unit
from .statemachine import State, StateMachine, Transition, compare, to_dot, to_json

__version__ = "0.1.0"

__all__ = [
    "CorpusSpec",
    "GoldenBundle",
    "State",
    "StateMachine",
    "Tasks",
    "Transition",
    "build_state_machine",
    "compare",
    "generate",
    "parse_project",
    "parse_unit",
    "to_dot",
    "to_json",
]
