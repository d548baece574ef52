"""Visualization frames: one frame per consumed-symbol count.

Frame ``n`` shows every computation that has consumed exactly ``n`` symbols,
including each node of an epsilon chain at that consumption level as its own
computation.  Pruned duplicates are not displayed or counted, but the edges
leading into them are still highlighted so merging computations stay visible.

Edge highlighting covers the last transition of every computation that has
not ended: edges into STUCK nodes are not highlighted (those computations are
over), while edges into live, accepting, cut-off, and pruned-duplicate nodes
are.  Colors: DARK_GREEN for the tracked accepting computation's transitions,
GREEN for transitions on some accepting computation, VIOLET for the rest.
When several forest edges at a frame map to the same machine rule, the
strongest color wins (DARK_GREEN > GREEN > VIOLET), so a rule never carries
two colors in one frame.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import invariants as inv
from .engine import (
    ACCEPT,
    CUTOFF,
    PRUNED,
    STUCK,
    ComputationForest,
    ExploreOptions,
    explore,
)
from .machine import Machine, add_dead_state

# Edge highlight colors.
GREEN = "GREEN"
DARK_GREEN = "DARK_GREEN"
VIOLET = "VIOLET"

# Node decoration colors (absent states are undecorated).
GOLD = "GOLD"
INV_GREEN = "INV_GREEN"
INV_RED = "INV_RED"
INV_BICOLOR = "INV_BICOLOR"

_EDGE_PRIORITY = {VIOLET: 0, GREEN: 1, DARK_GREEN: 2}

# Navigation commands.
NEXT = "NEXT"
PREV = "PREV"
BEGIN = "BEGIN"
END = "END"


@dataclass(frozen=True)
class Frame:
    """One visualization step; ``index`` equals the consumed-symbol count."""

    index: int
    displayed_nodes: tuple[int, ...]
    highlighted_edges: tuple[tuple[int, str], ...]
    node_decorations: dict[str, str]
    computation_count: int
    cutoff_count: int
    consumed: tuple[str, ...]
    unconsumed: tuple[str, ...]
    tracked_stack: tuple[str, ...] | None
    verdict_banner: str | None
    # Evaluation inputs for decorate_invariants, not part of the frame JSON:
    # (state, stack) of displayed accepting-path nodes, and cut-off states.
    acc_state_stacks: tuple[tuple[str, tuple[str, ...] | None], ...] = field(default=())
    cutoff_states: tuple[str, ...] = field(default=())


def build_frames(forest: ComputationForest, machine: Machine) -> list[Frame]:
    """One frame per consumed count 0..len(word), undecorated."""
    word = forest.word
    acc_path = forest.accepting_path_nodes()
    tracked_nodes = set(forest.tracked_path())
    verdict = forest.verdict
    cutoff_total = forest.cutoff_count

    displayed: dict[int, list[int]] = {n: [] for n in range(len(word) + 1)}
    edges: dict[int, dict[int, str]] = {n: {} for n in range(len(word) + 1)}
    acc_eval: dict[int, list[tuple[str, tuple[str, ...] | None]]] = {
        n: [] for n in range(len(word) + 1)
    }
    cutoff_states: dict[int, list[str]] = {n: [] for n in range(len(word) + 1)}

    for node in forest.nodes:
        level = node.consumed
        if node.status != PRUNED:
            displayed[level].append(node.id)
            if node.id in acc_path:
                acc_eval[level].append((node.config.state, node.config.stack))
            if node.status == CUTOFF and node.config.state not in cutoff_states[level]:
                cutoff_states[level].append(node.config.state)
        if node.parent is None or node.status == STUCK:
            continue
        if node.id in tracked_nodes:
            color = DARK_GREEN
        elif node.id in acc_path:
            color = GREEN
        else:
            color = VIOLET
        rule = node.via_rule
        prev = edges[level].get(rule)
        if prev is None or _EDGE_PRIORITY[color] > _EDGE_PRIORITY[prev]:
            edges[level][rule] = color

    tracked_stack_at: dict[int, tuple[str, ...] | None] = {}
    if verdict == ACCEPT and forest.kind == "pda":
        for node_id in forest.tracked_path():
            node = forest.nodes[node_id]
            tracked_stack_at[node.consumed] = node.config.stack

    frames = []
    last = len(word)
    for n in range(last + 1):
        frames.append(
            Frame(
                index=n,
                displayed_nodes=tuple(displayed[n]),
                highlighted_edges=tuple(sorted(edges[n].items())),
                node_decorations={},
                computation_count=len(displayed[n]),
                cutoff_count=cutoff_total,
                consumed=word[:n],
                unconsumed=word[n:],
                tracked_stack=tracked_stack_at.get(n),
                verdict_banner=verdict if n == last else None,
                acc_state_stacks=tuple(acc_eval[n]),
                cutoff_states=tuple(cutoff_states[n]),
            )
        )
    return frames


def decorate_invariants(
    frames: list[Frame],
    machine: Machine,
    programs: dict[str, inv.InvariantProgram],
) -> list[Frame]:
    """Fill node decorations: invariant colors on accepting-path states, gold
    on states where computations were cut off.

    A state with an invariant is INV_GREEN at a frame when the predicate holds
    for every displayed accepting-path node in that state, INV_RED when it
    fails for all of them, and INV_BICOLOR when it holds for some and fails
    for others (possible for PDAs, whose accepting computations may reach the
    same state with different stacks).  Without accepting computations no
    invariant color is ever shown.
    """
    out = []
    for frame in frames:
        decorations: dict[str, str] = {}
        for state in sorted(programs):
            program = programs[state]
            results = [
                inv.evaluate(program, frame.consumed, stack)
                for s, stack in frame.acc_state_stacks
                if s == state
            ]
            if not results:
                continue
            if all(results):
                decorations[state] = INV_GREEN
            elif not any(results):
                decorations[state] = INV_RED
            else:
                decorations[state] = INV_BICOLOR
        for state in frame.cutoff_states:
            decorations.setdefault(state, GOLD)
        out.append(replace(frame, node_decorations=decorations))
    return out


def navigate(frames: list[Frame], current: int, command: str) -> int:
    """Clamped frame navigation."""
    if command == NEXT:
        return min(current + 1, len(frames) - 1)
    if command == PREV:
        return max(current - 1, 0)
    if command == BEGIN:
        return 0
    if command == END:
        return len(frames) - 1
    raise ValueError(f"unknown navigation command: {command}")


def jump_to_invariant_failure(
    frames: list[Frame], from_index: int, direction: str
) -> int | None:
    """Nearest frame strictly after/before ``from_index`` where some state
    invariant fails (INV_RED or INV_BICOLOR), or None."""

    def failing(frame: Frame) -> bool:
        return any(c in (INV_RED, INV_BICOLOR) for c in frame.node_decorations.values())

    if direction == NEXT:
        indices = range(from_index + 1, len(frames))
    elif direction == PREV:
        indices = range(from_index - 1, -1, -1)
    else:
        raise ValueError(f"unknown jump direction: {direction}")
    for i in indices:
        if failing(frames[i]):
            return i
    return None


# ---------------------------------------------------------------------------
# Pipeline and serialization


@dataclass(frozen=True)
class Visualization:
    """The full precomputed session: effective machine, forest, frames."""

    machine: Machine
    forest: ComputationForest
    frames: list[Frame]

    @property
    def verdict(self) -> str:
        return self.forest.verdict


def build_visualization(
    machine: Machine,
    word: tuple[str, ...] | list[str],
    options: ExploreOptions | None = None,
) -> Visualization:
    """Augment (optionally), explore, build frames, decorate.

    This is the single pipeline shared by the CLI and the session service so
    their outputs stay byte-identical.
    """
    if options is None:
        options = ExploreOptions()
    effective = add_dead_state(machine) if options.add_dead else machine
    forest = explore(effective, word, options)
    frames = build_frames(forest, effective)
    programs = {
        state: inv.parse(source, machine.kind)
        for state, source in sorted(effective.invariants.items())
    }
    frames = decorate_invariants(frames, effective, programs)
    return Visualization(machine=effective, forest=forest, frames=frames)


def frame_to_dict(frame: Frame) -> dict:
    return {
        "index": frame.index,
        "displayed_nodes": list(frame.displayed_nodes),
        "highlighted_edges": [[rule, color] for rule, color in frame.highlighted_edges],
        "node_decorations": dict(sorted(frame.node_decorations.items())),
        "computation_count": frame.computation_count,
        "cutoff_count": frame.cutoff_count,
        "consumed": list(frame.consumed),
        "unconsumed": list(frame.unconsumed),
        "tracked_stack": None if frame.tracked_stack is None else list(frame.tracked_stack),
        "verdict_banner": frame.verdict_banner,
    }


def canonical_json(data: object) -> str:
    """Canonical serialization: sorted keys, no insignificant whitespace."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def frame_json(frame: Frame) -> str:
    return canonical_json(frame_to_dict(frame))


def frames_dump(viz: Visualization) -> str:
    """The ``ndviz viz`` output: word, verdict, and all frames, canonical."""
    data = {
        "word": list(viz.forest.word),
        "verdict": viz.verdict,
        "frame_count": len(viz.frames),
        "frames": [frame_to_dict(f) for f in viz.frames],
    }
    return canonical_json(data)
