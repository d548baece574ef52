"""Seeded random machine generators for oracle-equivalence testing."""

from __future__ import annotations

import random

from ndviz.machine import EPSILON, Machine, NfaRule, PdaRule


def random_nfa(rng: random.Random) -> Machine:
    n_states = rng.randint(1, 5)
    states = tuple(f"Q{i}" for i in range(n_states))
    sigma = ("a", "b")[: rng.randint(1, 2)]
    rules = []
    for _ in range(rng.randint(0, 12)):
        read = EPSILON if rng.random() < 0.25 else rng.choice(sigma)
        rules.append(NfaRule(rng.choice(states), read, rng.choice(states)))
    finals = tuple(q for q in states if rng.random() < 0.4)
    return Machine(
        kind="ndfa",
        states=states,
        sigma=sigma,
        gamma=(),
        start=states[0],
        finals=finals,
        rules=tuple(rules),
    )


def _stack_seq(rng: random.Random, gamma) -> tuple[str, ...]:
    length = rng.choices((0, 1, 2), weights=(0.5, 0.35, 0.15))[0]
    return tuple(rng.choice(gamma) for _ in range(length))


def random_pda(rng: random.Random) -> Machine:
    n_states = rng.randint(1, 3)
    states = tuple(f"Q{i}" for i in range(n_states))
    sigma = ("a", "b")
    gamma = ("x", "y")
    rules = []
    epsilon_reads = 0
    for _ in range(rng.randint(1, 8)):
        if epsilon_reads < 2 and rng.random() < 0.25:
            read = EPSILON
            epsilon_reads += 1
        else:
            read = rng.choice(sigma)
        rules.append(
            PdaRule(
                rng.choice(states),
                read,
                _stack_seq(rng, gamma),
                rng.choice(states),
                _stack_seq(rng, gamma),
            )
        )
    finals = tuple(q for q in states if rng.random() < 0.5)
    return Machine(
        kind="pda",
        states=states,
        sigma=sigma,
        gamma=gamma,
        start=states[0],
        finals=finals,
        rules=tuple(rules),
    )
