"""Acceptance suite: one test per shipping criterion, at stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.  The randomized batteries use fixed seeds, so results are stable.
"""

import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import (
    BUGGY_B_INV,
    CORRECTED_B_INV,
    make_ab_nfa,
    make_bicolor_pda,
    make_equal_ab_pda,
    make_growing_stack_pda,
    word,
)
from generators import random_nfa, random_pda
from oracles import (
    SubsetDfa,
    all_accepting_configs,
    bfs_first_accepting_path,
    pda_unpruned_accepts,
    pda_verdict,
    words_upto,
)
from ndviz.diagram import DiagramSpec, emit_dot
from ndviz.engine import (
    ACCEPT,
    CUTOFF_LIMIT,
    REJECT,
    ExploreOptions,
    NodeLimitError,
    apply_machine,
    explore,
    format_trace,
    trace,
)
from ndviz.frames import (
    DARK_GREEN,
    GOLD,
    GREEN,
    INV_BICOLOR,
    INV_RED,
    NEXT,
    build_visualization,
    frames_dump,
    jump_to_invariant_failure,
)
from ndviz.invariants import evaluate, parse

REPO = Path(__file__).parent.parent


def report(name: str) -> None:
    print(f"PASS: {name}")


def test_golden_verdicts_nfa():
    machine = make_ab_nfa()
    started = time.perf_counter()
    assert apply_machine(machine, word("babaa")) == REJECT
    assert apply_machine(machine, word("aaa")) == REJECT
    assert apply_machine(machine, ()) == ACCEPT
    assert apply_machine(machine, word("abbb")) == ACCEPT
    assert apply_machine(machine, word("ababbb")) == ACCEPT
    assert time.perf_counter() - started < 1.0
    report("golden verdicts (ndfa): all five published tests reproduce")


def test_golden_verdicts_pda():
    machine = make_equal_ab_pda()
    options = ExploreOptions(max_steps=100)
    started = time.perf_counter()
    assert apply_machine(machine, (), options) == ACCEPT
    assert apply_machine(machine, word("abb"), options) == REJECT
    assert apply_machine(machine, word("a"), options) == REJECT
    assert apply_machine(machine, word("bab"), options) == REJECT
    assert apply_machine(machine, word("baab"), options) == ACCEPT
    assert apply_machine(machine, word("abbaab"), options) == ACCEPT
    assert time.perf_counter() - started < 1.0
    report("golden verdicts (pda): all six published tests reproduce")


def test_frame_golden():
    viz = build_visualization(make_ab_nfa(), word("abbbb"))
    frame = viz.frames[2]
    states = sorted(viz.forest.nodes[i].config.state for i in frame.displayed_nodes)
    assert frame.computation_count == 3
    assert states == ["A", "C", "E"]
    # rules: 3 = (A eps C), 4 = (B b A), 7 = (E b E)
    assert frame.highlighted_edges == ((3, GREEN), (4, GREEN), (7, DARK_GREEN))
    report("frame golden: after consuming ab, {A,C,E} with exact highlight colors")


def test_dead_state_golden():
    viz = build_visualization(
        make_ab_nfa(), word("abbbb"), ExploreOptions(add_dead=True)
    )
    frame = viz.frames[1]
    assert frame.computation_count == 3
    assert len(frame.highlighted_edges) == 4
    into_ds = [
        rule
        for rule, _ in frame.highlighted_edges
        if viz.machine.rules[rule].dst == "ds"
    ]
    assert len(into_ds) == 2
    report("dead-state golden: 4 highlighted edges, 2 into ds, 3 computations")


def test_trace_format():
    machine = make_ab_nfa()
    # independent oracle: enumerate all accepting paths breadth-first over the
    # unpruned tree and take the first
    oracle = bfs_first_accepting_path(machine, word("ab"))
    result = trace(machine, word("ab"))
    assert [(c.state, c.unconsumed) for c in result.configurations] == [
        (s, u) for s, u, _ in oracle
    ]
    text = format_trace(result)
    assert text == "(((a b) S) ((a b) D) ((b) E) (() E) accept)"
    assert text.startswith("(((a b) S)") and text.endswith("accept)")
    report("trace format: classic shape, tracked computation matches BFS-first oracle")


def test_nfa_oracle_equivalence():
    rng = random.Random(20260809)
    started = time.perf_counter()
    for _ in range(1000):
        machine = random_nfa(rng)
        dfa = SubsetDfa(machine)
        for w in words_upto(machine.sigma, 6):
            assert (explore(machine, w).verdict == ACCEPT) == dfa.accepts(w), (
                machine,
                w,
            )
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    report(f"ndfa oracle equivalence: 1000 machines, zero mismatches, {elapsed:.1f}s")


def test_pda_oracle_equivalence():
    rng = random.Random(42)
    started = time.perf_counter()
    checked = 0
    while checked < 300:
        machine = random_pda(rng)
        try:
            for w in words_upto(("a", "b"), 4):
                got = explore(
                    machine, w, ExploreOptions(max_steps=12, max_nodes=200_000)
                ).verdict
                assert got == pda_verdict(machine, w, 12), (machine, w)
        except NodeLimitError:
            continue  # instance over the node budget; draw another
        checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    report(f"pda oracle equivalence: 300 machines, zero mismatches, {elapsed:.1f}s")


def test_termination():
    rng = random.Random(31337)
    for _ in range(300):
        machine = random_nfa(rng)
        for w in words_upto(machine.sigma, 4):
            explore(machine, w)  # no step bound applies to ndfas; must halt
    viz = build_visualization(
        make_growing_stack_pda(), (), ExploreOptions(max_steps=10)
    )
    assert viz.verdict == CUTOFF_LIMIT
    assert viz.frames[-1].node_decorations == {"S": GOLD}
    report("termination: ndfa exploration always halts; growing stack cuts off gold")


def test_invariant_debugging():
    buggy = build_visualization(
        make_ab_nfa(invariants={"B": BUGGY_B_INV}), word("abbbb")
    )
    assert jump_to_invariant_failure(buggy.frames, 0, NEXT) == 1
    assert buggy.frames[1].node_decorations.get("B") == INV_RED
    fixed = build_visualization(
        make_ab_nfa(invariants={"B": CORRECTED_B_INV}), word("abbbb")
    )
    assert jump_to_invariant_failure(fixed.frames, 0, NEXT) is None
    report("invariant debugging: buggy predicate jumps to frame 1, corrected jumps nowhere")


def test_no_accept_coloring():
    machine = make_ab_nfa(invariants={"B": BUGGY_B_INV, "S": "len(ci) == 0"})
    viz = build_visualization(machine, word("aaa"))
    assert viz.verdict == REJECT
    for frame in viz.frames:
        assert not any(
            c.startswith("INV_") for c in frame.node_decorations.values()
        )
    report("no-accept coloring: rejected word shows no invariant colors anywhere")


def test_bicolor():
    machine = make_bicolor_pda()
    # both accepting computations really exist (brute force, no pruning)
    assert pda_unpruned_accepts(machine, word("ab"), 10)
    assert len(all_accepting_configs(machine, word("ab"), 10)) == 2
    viz = build_visualization(machine, word("ab"))
    assert viz.frames[1].node_decorations == {"H": INV_BICOLOR}
    report("bicolor: invariant holds for one accepting computation, fails for the other")


def test_dsl_regression():
    s_inv = parse("len(ci) == 0", "ndfa")
    assert evaluate(s_inv, ()) is True
    assert evaluate(s_inv, ("a", "b", "a")) is False

    counting = parse("count(ci ++ stack, a) == count(ci ++ stack, b)", "pda")
    assert evaluate(counting, ("b", "a"), ("b", "b", "b")) is False
    assert evaluate(counting, ("a",), ("a",)) is False
    assert evaluate(counting, (), ()) is True
    assert evaluate(counting, ("a", "a", "b"), ("b",)) is True

    corrected_b = parse(CORRECTED_B_INV, "ndfa")
    assert evaluate(corrected_b, ("a",)) is True
    assert evaluate(corrected_b, ()) is False
    report("dsl regression: published predicate outcomes reproduce")


def test_determinism(tmp_path):
    machine_path = str(REPO / "machines" / "abU.json")
    outputs = []
    for run, seed in ((1, "101"), (2, "202")):
        frames_path = tmp_path / f"frames{run}.json"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run(
            [
                sys.executable,
                "-m",
                "ndviz.cli",
                "viz",
                machine_path,
                "--word",
                "a,b,b,b,b",
                "--add-dead",
                "--dump-frames",
                str(frames_path),
            ],
            check=True,
            env=env,
        )
        dot = subprocess.run(
            [
                sys.executable,
                "-m",
                "ndviz.cli",
                "graph",
                machine_path,
                "--word",
                "a,b,b,b,b",
                "--frame",
                "2",
            ],
            check=True,
            env=env,
            capture_output=True,
        )
        outputs.append((frames_path.read_bytes(), dot.stdout))
    assert outputs[0] == outputs[1]

    viz_a = build_visualization(make_equal_ab_pda(), word("abba"))
    viz_b = build_visualization(make_equal_ab_pda(), word("abba"))
    assert frames_dump(viz_a) == frames_dump(viz_b)
    assert emit_dot(DiagramSpec(viz_a.machine, viz_a.frames[2])) == emit_dot(
        DiagramSpec(viz_b.machine, viz_b.frames[2])
    )
    report("determinism: byte-identical frame JSON and DOT across pipeline runs")
