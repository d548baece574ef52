"""Breadth-first exploration of all computations without repeated configurations.

The engine materializes the pruned computation forest: every configuration
reachable from the start configuration becomes a node, children are generated
in machine rule order, and a configuration seen anywhere before yields a
PRUNED node whose incoming edge is recorded but which is never expanded.
Pruning is safe because expanding a repeated configuration would replicate a
subtree that already exists elsewhere.

NFA exploration always terminates (the configuration space is finite); PDA
computations are additionally bounded by a cutoff on transitions per
computation, and computations reaching the cutoff are marked CUTOFF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .machine import EPSILON, Machine, NfaRule, PdaRule

# Node statuses.
LIVE = "LIVE"
STUCK = "STUCK"
ACCEPT_LEAF = "ACCEPT"
PRUNED = "PRUNED"
CUTOFF = "CUTOFF"

# Verdicts.
ACCEPT = "ACCEPT"
REJECT = "REJECT"
CUTOFF_LIMIT = "CUTOFF-LIMIT"

DEFAULT_MAX_STEPS = 100


class InputWordError(ValueError):
    """The input word contains a symbol outside the machine's alphabet."""


class NodeLimitError(RuntimeError):
    """Exploration exceeded the configured node budget."""


class Configuration(NamedTuple):
    """Instantaneous description: state, unconsumed input, and (PDA) stack.

    The stack's top is the leftmost element.  ``stack`` is None for NFAs.
    """

    state: str
    unconsumed: tuple[str, ...]
    stack: tuple[str, ...] | None = None


@dataclass(frozen=True)
class ExploreOptions:
    max_steps: int = DEFAULT_MAX_STEPS
    add_dead: bool = False
    max_nodes: int | None = None

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(slots=True)
class ComputationNode:
    id: int
    config: Configuration
    parent: int | None
    via_rule: int | None
    depth: int
    consumed: int
    status: str


@dataclass
class ComputationForest:
    """The full pruned computation forest for one (machine, word, options)."""

    kind: str
    word: tuple[str, ...]
    options: ExploreOptions
    nodes: list[ComputationNode]
    accepting_leaves: tuple[int, ...]
    tracked: int | None
    _children: dict[int, list[int]] | None = field(default=None, repr=False)
    _acc_path: frozenset[int] | None = field(default=None, repr=False)

    @property
    def root(self) -> int:
        return 0

    @property
    def verdict(self) -> str:
        if self.accepting_leaves:
            return ACCEPT
        if any(n.status == CUTOFF for n in self.nodes):
            return CUTOFF_LIMIT
        return REJECT

    @property
    def cutoff_count(self) -> int:
        return sum(1 for n in self.nodes if n.status == CUTOFF)

    def children(self) -> dict[int, list[int]]:
        if self._children is None:
            adjacency: dict[int, list[int]] = {n.id: [] for n in self.nodes}
            for n in self.nodes:
                if n.parent is not None:
                    adjacency[n.parent].append(n.id)
            self._children = adjacency
        return self._children

    def path_to(self, node_id: int) -> list[int]:
        """Node ids from the root to ``node_id``."""
        path = []
        cur: int | None = node_id
        while cur is not None:
            path.append(cur)
            cur = self.nodes[cur].parent
        path.reverse()
        return path

    def accepting_path_nodes(self) -> frozenset[int]:
        """Ids of nodes lying on some root-to-accepting-leaf path."""
        if self._acc_path is None:
            marked: set[int] = set()
            for leaf in self.accepting_leaves:
                cur: int | None = leaf
                while cur is not None and cur not in marked:
                    marked.add(cur)
                    cur = self.nodes[cur].parent
            self._acc_path = frozenset(marked)
        return self._acc_path

    def tracked_path(self) -> list[int]:
        return self.path_to(self.tracked) if self.tracked is not None else []


def applicable_rules(machine: Machine, config: Configuration) -> list[int]:
    """Indices of the rules that apply to ``config``, in machine rule order."""
    head = config.unconsumed[0] if config.unconsumed else None
    out = []
    for i, rule in enumerate(machine.rules):
        if rule.src != config.state:
            continue
        if rule.read != EPSILON and rule.read != head:
            continue
        if isinstance(rule, PdaRule):
            pop = rule.pop
            if pop and config.stack[: len(pop)] != pop:
                continue
        out.append(i)
    return out


def step(machine: Machine, config: Configuration, rule_index: int) -> Configuration:
    """Apply one rule; the rule must be applicable (precondition)."""
    rule = machine.rules[rule_index]
    if rule_index not in applicable_rules(machine, config):
        raise ValueError(f"rule {rule_index} does not apply to {config}")
    unconsumed = config.unconsumed if rule.read == EPSILON else config.unconsumed[1:]
    if isinstance(rule, NfaRule):
        return Configuration(rule.dst, unconsumed, None)
    stack = rule.push + config.stack[len(rule.pop):]
    return Configuration(rule.dst, unconsumed, stack)


def explore(
    machine: Machine,
    word: tuple[str, ...] | list[str],
    options: ExploreOptions | None = None,
) -> ComputationForest:
    """Build the pruned computation forest by breadth-first traversal.

    Children are generated in rule order; node ids are BFS discovery order,
    so two runs on identical inputs produce identical forests.  A node whose
    configuration was seen anywhere in the forest is materialized as PRUNED
    (its incoming edge is kept) and never expanded.  Acceptance is tested at
    every node: final state, empty unconsumed input, and (PDA) empty stack.
    PDA nodes at the cutoff depth that could still move become CUTOFF; NFA
    exploration ignores the cutoff because it always terminates.
    """
    if options is None:
        options = ExploreOptions()
    word = tuple(word)
    sigma = set(machine.sigma)
    for s in word:
        if s not in sigma:
            raise InputWordError(f"word symbol not in sigma: {s!r}")

    is_pda = machine.is_pda
    finals = frozenset(machine.finals)
    word_len = len(word)
    max_steps = options.max_steps
    max_nodes = options.max_nodes

    # Rule lookup by source state, preserving rule order.
    by_src: dict[str, list[tuple[int, str, tuple[str, ...], str, tuple[str, ...]]]] = {}
    for i, rule in enumerate(machine.rules):
        if is_pda:
            entry = (i, rule.read, rule.pop, rule.dst, rule.push)
        else:
            entry = (i, rule.read, (), rule.dst, ())
        by_src.setdefault(rule.src, []).append(entry)

    root = Configuration(machine.start, word, () if is_pda else None)
    nodes = [ComputationNode(0, root, None, None, 0, 0, LIVE)]
    visited = {root}
    accepting: list[int] = []

    i = 0
    while i < len(nodes):
        node = nodes[i]
        i += 1
        if node.status == PRUNED:
            continue
        state, unconsumed, stack = node.config
        accepted = (
            state in finals
            and not unconsumed
            and (not is_pda or not stack)
        )
        if accepted:
            node.status = ACCEPT_LEAF
            accepting.append(node.id)

        head = unconsumed[0] if unconsumed else None
        moves = []
        for idx, read, pop, dst, push in by_src.get(state, ()):
            if read != EPSILON and read != head:
                continue
            if pop and stack[: len(pop)] != pop:
                continue
            moves.append((idx, read, pop, dst, push))

        if not moves:
            if not accepted:
                node.status = STUCK
            continue
        if is_pda and node.depth == max_steps:
            if not accepted:
                node.status = CUTOFF
            continue

        depth = node.depth + 1
        for idx, read, pop, dst, push in moves:
            rest = unconsumed if read == EPSILON else unconsumed[1:]
            if is_pda:
                child = Configuration(dst, rest, push + stack[len(pop):])
            else:
                child = Configuration(dst, rest, None)
            nid = len(nodes)
            if max_nodes is not None and nid >= max_nodes:
                raise NodeLimitError(f"forest exceeds {max_nodes} nodes")
            if child in visited:
                status = PRUNED
            else:
                visited.add(child)
                status = LIVE
            nodes.append(
                ComputationNode(nid, child, node.id, idx, depth, word_len - len(rest), status)
            )

    tracked = accepting[0] if accepting else None
    return ComputationForest(
        kind=machine.kind,
        word=word,
        options=options,
        nodes=nodes,
        accepting_leaves=tuple(accepting),
        tracked=tracked,
    )


def apply_machine(
    machine: Machine,
    word: tuple[str, ...] | list[str],
    options: ExploreOptions | None = None,
) -> str:
    """ACCEPT iff some computation accepts; CUTOFF-LIMIT when rejection cannot
    be certified because some computation was cut off; REJECT otherwise."""
    return explore(machine, word, options).verdict


@dataclass(frozen=True)
class TraceResult:
    verdict: str
    configurations: tuple[Configuration, ...] | None
    accepting_count: int
    cutoff_count: int
    total_nodes: int


def trace_result(forest: ComputationForest) -> TraceResult:
    verdict = forest.verdict
    configs = None
    if verdict == ACCEPT:
        configs = tuple(forest.nodes[i].config for i in forest.tracked_path())
    return TraceResult(
        verdict=verdict,
        configurations=configs,
        accepting_count=len(forest.accepting_leaves),
        cutoff_count=forest.cutoff_count,
        total_nodes=len(forest.nodes),
    )


def trace(
    machine: Machine,
    word: tuple[str, ...] | list[str],
    options: ExploreOptions | None = None,
) -> TraceResult:
    """Configurations of the tracked accepting computation, or a verdict report.

    The tracked computation is the BFS-first accepting leaf: shallowest, with
    ties broken by lowest rule indices along the path.
    """
    return trace_result(explore(machine, word, options))


def format_word(word: tuple[str, ...]) -> str:
    return "(" + " ".join(word) + ")"


def format_configuration(config: Configuration) -> str:
    parts = [format_word(config.unconsumed), config.state]
    if config.stack is not None:
        parts.append(format_word(config.stack))
    return "(" + " ".join(parts) + ")"


def format_trace(result: TraceResult) -> str:
    """Accepting traces render in the classic shape
    ``(((a b a) S) ((b a) A) ... accept)``; otherwise a verdict report."""
    if result.verdict == ACCEPT:
        assert result.configurations is not None
        inner = " ".join(format_configuration(c) for c in result.configurations)
        return f"({inner} accept)"
    lines = [
        result.verdict.lower(),
        f"accepting computations: {result.accepting_count}",
        f"cut off computations: {result.cutoff_count}",
        f"forest nodes: {result.total_nodes}",
    ]
    return "\n".join(lines)


def forest_to_json(forest: ComputationForest) -> dict:
    """Debug export; schema documented in the README."""
    return {
        "kind": forest.kind,
        "word": list(forest.word),
        "options": {
            "max_steps": forest.options.max_steps,
            "add_dead": forest.options.add_dead,
        },
        "verdict": forest.verdict,
        "tracked": forest.tracked,
        "accepting_leaves": list(forest.accepting_leaves),
        "nodes": [
            {
                "id": n.id,
                "parent": n.parent,
                "rule": n.via_rule,
                "depth": n.depth,
                "consumed": n.consumed,
                "status": n.status,
                "state": n.config.state,
                "unconsumed": list(n.config.unconsumed),
                "stack": None if n.config.stack is None else list(n.config.stack),
            }
            for n in forest.nodes
        ],
    }
