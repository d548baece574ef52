"""ndviz: stepwise execution and visualization of NFAs and PDAs.

The library explores every computation a nondeterministic machine may
perform on a word (pruning repeated configurations), turns the resulting
forest into per-step visualization frames, checks state invariants written
in a small predicate language, and renders transition diagrams.
"""

from .engine import (
    ACCEPT,
    CUTOFF_LIMIT,
    REJECT,
    ComputationForest,
    Configuration,
    ExploreOptions,
    applicable_rules,
    apply_machine,
    explore,
    step,
    trace,
)
from .frames import (
    Frame,
    Visualization,
    build_frames,
    build_visualization,
    decorate_invariants,
    jump_to_invariant_failure,
    navigate,
)
from .machine import (
    EPSILON,
    Machine,
    NfaRule,
    PdaRule,
    add_dead_state,
    load_machine,
    machine_from_json,
    machine_to_json,
    validate,
)

__all__ = [
    "ACCEPT",
    "CUTOFF_LIMIT",
    "REJECT",
    "EPSILON",
    "ComputationForest",
    "Configuration",
    "ExploreOptions",
    "Frame",
    "Machine",
    "NfaRule",
    "PdaRule",
    "Visualization",
    "add_dead_state",
    "applicable_rules",
    "apply_machine",
    "build_frames",
    "build_visualization",
    "decorate_invariants",
    "explore",
    "jump_to_invariant_failure",
    "load_machine",
    "machine_from_json",
    "machine_to_json",
    "navigate",
    "step",
    "trace",
    "validate",
]

__version__ = "0.1.0"
