"""Randomized properties at moderate scale; the acceptance suite runs the
full-size oracle equivalence battery."""

import random

from generators import random_nfa, random_pda
from oracles import SubsetDfa, pda_unpruned_accepts, pda_verdict, words_upto
from ndviz.engine import (
    ACCEPT,
    ExploreOptions,
    NodeLimitError,
    explore,
    forest_to_json,
)
from ndviz.frames import DARK_GREEN, VIOLET, build_visualization
from ndviz.machine import EPSILON, Machine, NfaRule, add_dead_state, validate


def test_nfa_oracle_equivalence_sample():
    rng = random.Random(7)
    for _ in range(200):
        machine = random_nfa(rng)
        dfa = SubsetDfa(machine)
        for w in words_upto(machine.sigma, 6):
            assert (explore(machine, w).verdict == ACCEPT) == dfa.accepts(w), (
                machine,
                w,
            )


def test_pda_oracle_equivalence_sample():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        machine = random_pda(rng)
        try:
            for w in words_upto(("a", "b"), 4):
                got = explore(
                    machine, w, ExploreOptions(max_steps=12, max_nodes=200_000)
                ).verdict
                assert got == pda_verdict(machine, w, 12), (machine, w)
        except NodeLimitError:
            continue
        checked += 1


def test_pda_pruning_soundness():
    # pruning removes only duplicate subtrees, so ACCEPT verdicts agree with
    # the raw unpruned bounded search
    rng = random.Random(13)
    checked = 0
    while checked < 40:
        machine = random_pda(rng)
        try:
            for w in words_upto(("a", "b"), 3):
                options = ExploreOptions(max_steps=6, max_nodes=100_000)
                pruned = explore(machine, w, options).verdict == ACCEPT
                assert pruned == pda_unpruned_accepts(machine, w, 6), (machine, w)
        except NodeLimitError:
            continue
        checked += 1


def test_nfa_termination_on_epsilon_cycles():
    machine = Machine(
        "ndfa",
        ("S", "A"),
        ("a",),
        (),
        "S",
        ("A",),
        (NfaRule("S", EPSILON, "A"), NfaRule("A", EPSILON, "S"), NfaRule("A", "a", "A")),
    )
    forest = explore(machine, ("a",) * 5)
    assert forest.verdict == ACCEPT
    assert len(forest.nodes) < 50


def test_explore_determinism_random():
    rng = random.Random(17)
    for _ in range(50):
        machine = random_nfa(rng)
        w = tuple(rng.choice(machine.sigma) for _ in range(rng.randint(0, 5)))
        assert forest_to_json(explore(machine, w)) == forest_to_json(explore(machine, w))


def test_add_dead_state_properties():
    rng = random.Random(19)
    for _ in range(100):
        machine = random_nfa(rng)
        aug = add_dead_state(machine)
        assert validate(aug).ok
        # totality of consuming moves
        have = {(r.src, r.read) for r in aug.rules if r.read != EPSILON}
        for q in aug.states:
            for s in aug.sigma:
                assert (q, s) in have
        # original rules keep their relative order
        originals = [r for r in aug.rules if not r.synthetic]
        assert tuple(originals) == machine.rules
        # augmenting never changes the language
        for w in words_upto(machine.sigma, 4):
            assert explore(machine, w).verdict == explore(aug, w).verdict


def test_add_dead_state_pda_preserves_acceptance():
    rng = random.Random(23)
    checked = 0
    while checked < 30:
        machine = random_pda(rng)
        aug = add_dead_state(machine)
        assert validate(aug).ok
        try:
            for w in words_upto(("a", "b"), 3):
                options = ExploreOptions(max_steps=12, max_nodes=200_000)
                before = explore(machine, w, options).verdict == ACCEPT
                after = explore(aug, w, options).verdict == ACCEPT
                assert before == after, (machine, w)
        except NodeLimitError:
            continue
        checked += 1


def test_frame_invariants_random():
    rng = random.Random(29)
    for _ in range(60):
        machine = random_nfa(rng)
        w = tuple(rng.choice(machine.sigma) for _ in range(rng.randint(0, 5)))
        viz = build_visualization(machine, w)
        assert len(viz.frames) == len(w) + 1
        closure_states = set(SubsetDfa(machine).start)
        frame0_states = {
            viz.forest.nodes[i].config.state for i in viz.frames[0].displayed_nodes
        }
        assert frame0_states == closure_states
        tracked_rules = {
            viz.forest.nodes[i].via_rule
            for i in viz.forest.tracked_path()
            if viz.forest.nodes[i].via_rule is not None
        }
        for n, frame in enumerate(viz.frames):
            assert frame.consumed + frame.unconsumed == w
            assert len(frame.consumed) == n
            colors = dict(frame.highlighted_edges)
            dark = {r for r, c in colors.items() if c == DARK_GREEN}
            assert not dark & {r for r, c in colors.items() if c == VIOLET}
            assert dark <= tracked_rules
            for node_id in frame.displayed_nodes:
                assert viz.forest.nodes[node_id].consumed == n
            assert frame.node_decorations == {}  # no invariants attached
        if viz.verdict == ACCEPT:
            assert viz.forest.tracked in viz.frames[-1].displayed_nodes
