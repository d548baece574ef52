import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ndviz.machine import EPSILON, Machine, NfaRule, PdaRule


def make_ab_nfa(invariants=None) -> Machine:
    """The ab* union (ab)*b* machine: six states, two final."""
    return Machine(
        kind="ndfa",
        states=("S", "A", "B", "C", "D", "E"),
        sigma=("a", "b"),
        gamma=(),
        start="S",
        finals=("C", "E"),
        rules=(
            NfaRule("S", EPSILON, "A"),
            NfaRule("S", EPSILON, "D"),
            NfaRule("A", "a", "B"),
            NfaRule("A", EPSILON, "C"),
            NfaRule("B", "b", "A"),
            NfaRule("C", "b", "C"),
            NfaRule("D", "a", "E"),
            NfaRule("E", "b", "E"),
        ),
        invariants=invariants or {},
    )


def make_equal_ab_pda(invariants=None) -> Machine:
    """Single-state PDA for words with equally many a's and b's."""
    return Machine(
        kind="pda",
        states=("S",),
        sigma=("a", "b"),
        gamma=("a", "b"),
        start="S",
        finals=("S",),
        rules=(
            PdaRule("S", "a", (), "S", ("b",)),
            PdaRule("S", "a", ("a",), "S", ()),
            PdaRule("S", "b", ("b",), "S", ()),
            PdaRule("S", "b", (), "S", ("a",)),
        ),
        invariants=invariants or {},
    )


def make_growing_stack_pda() -> Machine:
    """A PDA whose single epsilon rule pushes forever; never repeats a
    configuration, so only the cutoff stops it."""
    return Machine(
        kind="pda",
        states=("S",),
        sigma=("a",),
        gamma=("a",),
        start="S",
        finals=(),
        rules=(PdaRule("S", EPSILON, (), "S", ("a",)),),
    )


def make_bicolor_pda() -> Machine:
    """Two accepting computations pass through H at the same frame with
    different stacks, so H's invariant holds for one and fails for the other."""
    return Machine(
        kind="pda",
        states=("S", "H", "F", "G"),
        sigma=("a", "b"),
        gamma=("x",),
        start="S",
        finals=("F", "G"),
        rules=(
            PdaRule("S", "a", (), "H", ()),
            PdaRule("S", "a", (), "H", ("x",)),
            PdaRule("H", "b", (), "F", ()),
            PdaRule("H", "b", ("x",), "G", ()),
        ),
        invariants={"H": "len(stack) == 0"},
    )


BUGGY_B_INV = "len(ci) > 0 and not matches(ci, (a|b)* a)"
CORRECTED_B_INV = "matches(ci, (a|b)* a)"


@pytest.fixture
def ab_nfa() -> Machine:
    return make_ab_nfa()


@pytest.fixture
def equal_ab_pda() -> Machine:
    return make_equal_ab_pda()


@pytest.fixture
def growing_stack_pda() -> Machine:
    return make_growing_stack_pda()


@pytest.fixture
def bicolor_pda() -> Machine:
    return make_bicolor_pda()


def word(text: str) -> tuple[str, ...]:
    """'abb' -> ('a', 'b', 'b') for single-letter test alphabets."""
    return tuple(text)
