"""Machine definitions: NFAs and PDAs, validation, and dead-state augmentation.

A machine is immutable once constructed.  Rule order is significant and is
preserved everywhere: the execution engine uses it for deterministic
tie-breaking, and the dead-state augmentation appends its synthetic rules
after the original ones.

Epsilon is represented internally and in serialized form as the empty
string.  The token ``EMP`` is accepted as an input alias when loading
machine JSON, but is never a legal symbol name.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

EPSILON = ""
EPSILON_ALIAS = "EMP"

NFA = "ndfa"
PDA = "pda"

DEAD_STATE_BASE = "ds"

_NAME_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_']*$")


class MachineJsonError(ValueError):
    """Raised when machine JSON is structurally malformed."""


@dataclass(frozen=True)
class NfaRule:
    """Transition rule (src read dst); ``read`` is a symbol or EPSILON."""

    src: str
    read: str
    dst: str
    synthetic: bool = False


@dataclass(frozen=True)
class PdaRule:
    """Transition rule ((src read pop) (dst push)).

    ``pop`` and ``push`` are stack-symbol sequences; the rule pops first and
    then pushes.  Empty sequences mean no stack action.
    """

    src: str
    read: str
    pop: tuple[str, ...]
    dst: str
    push: tuple[str, ...]
    synthetic: bool = False


Rule = NfaRule | PdaRule


@dataclass(frozen=True)
class Machine:
    """An NFA or PDA with optional per-state invariant sources.

    ``gamma`` is always empty for NFAs.  ``dead_state`` names the trap state
    when the machine is the result of :func:`add_dead_state`, else None.
    """

    kind: str
    states: tuple[str, ...]
    sigma: tuple[str, ...]
    gamma: tuple[str, ...]
    start: str
    finals: tuple[str, ...]
    rules: tuple[Rule, ...]
    invariants: dict[str, str] = field(default_factory=dict)
    dead_state: str | None = None

    @property
    def is_pda(self) -> bool:
        return self.kind == PDA


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_name(name: object, what: str, out: list[str], allow_epsilon: bool = False) -> None:
    if not isinstance(name, str):
        out.append(f"{what} is not a string: {name!r}")
        return
    if name == EPSILON:
        if not allow_epsilon:
            out.append(f"{what} is empty")
        return
    if name == EPSILON_ALIAS:
        out.append(f"{what} uses the reserved token {EPSILON_ALIAS!r}")
        return
    if not _NAME_RE.match(name):
        out.append(f"{what} has illegal characters: {name!r}")


def validate(machine: Machine) -> ValidationReport:
    """Check every structural invariant; violations are data, not errors."""
    out: list[str] = []
    if machine.kind not in (NFA, PDA):
        out.append(f"kind must be {NFA!r} or {PDA!r}, got {machine.kind!r}")
        return ValidationReport(tuple(out))

    seen: set[str] = set()
    for q in machine.states:
        _check_name(q, f"state {q!r}", out)
        if q in seen:
            out.append(f"duplicate state: {q}")
        seen.add(q)
    states = set(machine.states)

    for part, name in (("sigma", "input symbol"), ("gamma", "stack symbol")):
        syms = getattr(machine, part)
        dup: set[str] = set()
        for s in syms:
            _check_name(s, f"{name} {s!r}", out)
            if s in dup:
                out.append(f"duplicate {name}: {s}")
            dup.add(s)
    sigma = set(machine.sigma)
    gamma = set(machine.gamma)

    if machine.kind == NFA and machine.gamma:
        out.append("gamma must be empty for an ndfa")

    if machine.start not in states:
        out.append(f"start not a state: {machine.start}")
    for f in machine.finals:
        if f not in states:
            out.append(f"final not a state: {f}")

    for i, rule in enumerate(machine.rules):
        where = f"rule {i}"
        if machine.kind == NFA:
            if not isinstance(rule, NfaRule):
                out.append(f"{where}: ndfa rule expected")
                continue
        else:
            if not isinstance(rule, PdaRule):
                out.append(f"{where}: pda rule expected")
                continue
        if rule.src not in states:
            out.append(f"{where}: unknown source state {rule.src!r}")
        if rule.dst not in states:
            out.append(f"{where}: unknown destination state {rule.dst!r}")
        if rule.read != EPSILON and rule.read not in sigma:
            out.append(f"{where}: unknown input symbol {rule.read!r}")
        if isinstance(rule, PdaRule):
            for part, seq in (("pop", rule.pop), ("push", rule.push)):
                for s in seq:
                    if s not in gamma:
                        out.append(f"{where}: unknown stack symbol in {part}: {s!r}")

    if machine.invariants:
        from . import invariants as inv

        for q in sorted(machine.invariants):
            if q not in states:
                out.append(f"invariant attached to unknown state: {q}")
                continue
            try:
                inv.parse(machine.invariants[q], machine.kind)
            except inv.DslError as exc:
                out.append(f"invariant for state {q}: {exc}")

    return ValidationReport(tuple(out))


def fresh_dead_state_name(states: set[str]) -> str:
    name = DEAD_STATE_BASE
    while name in states:
        name += "'"
    return name


def add_dead_state(machine: Machine) -> Machine:
    """Append a non-final trap state so every computation can consume the word.

    NFA: adds ``(q sigma ds)`` only for missing ``(q, sigma)`` pairs plus the
    ``ds`` self-loops; a machine whose consuming transitions are already total
    is returned unchanged.  PDA: adds ``((q sigma eps)(ds eps))`` for every
    pair unconditionally plus rules that drain input and stack in ``ds``.
    All added rules carry the ``synthetic`` flag (rendered dashed).

    PDA augmentation must not be applied twice; augmented machines are tagged
    via ``dead_state`` and re-augmenting a tagged PDA raises ValueError.
    """
    if machine.kind == NFA:
        have = {(r.src, r.read) for r in machine.rules}
        missing = [
            (q, s)
            for q in machine.states
            for s in machine.sigma
            if (q, s) not in have
        ]
        if not missing:
            return machine
        ds = fresh_dead_state_name(set(machine.states))
        new_rules = [NfaRule(q, s, ds, synthetic=True) for q, s in missing]
        new_rules += [NfaRule(ds, s, ds, synthetic=True) for s in machine.sigma]
        return replace(
            machine,
            states=machine.states + (ds,),
            rules=machine.rules + tuple(new_rules),
            dead_state=ds,
        )

    if machine.dead_state is not None:
        raise ValueError("pda is already dead-state augmented")
    ds = fresh_dead_state_name(set(machine.states))
    new_rules: list[Rule] = [
        PdaRule(q, s, (), ds, (), synthetic=True)
        for q in machine.states
        for s in machine.sigma
    ]
    new_rules += [PdaRule(ds, s, (), ds, (), synthetic=True) for s in machine.sigma]
    new_rules += [PdaRule(ds, EPSILON, (g,), ds, (), synthetic=True) for g in machine.gamma]
    return replace(
        machine,
        states=machine.states + (ds,),
        rules=machine.rules + tuple(new_rules),
        dead_state=ds,
    )


def _read_symbol(value: object, where: str) -> str:
    if not isinstance(value, str):
        raise MachineJsonError(f"{where}: expected a string, got {value!r}")
    return EPSILON if value == EPSILON_ALIAS else value


def _symbol_list(value: object, where: str) -> tuple[str, ...]:
    if value == EPSILON_ALIAS:
        return ()
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        raise MachineJsonError(f"{where}: expected an array of symbols, got {value!r}")
    return tuple(value)


def machine_from_json(data: object) -> Machine:
    """Build a Machine from the documented JSON object; no validation yet."""
    if not isinstance(data, dict):
        raise MachineJsonError("machine JSON must be an object")
    for key in ("kind", "states", "sigma", "start", "finals", "rules"):
        if key not in data:
            raise MachineJsonError(f"missing field: {key}")
    kind = data["kind"]
    if kind not in (NFA, PDA):
        raise MachineJsonError(f"kind must be {NFA!r} or {PDA!r}, got {kind!r}")

    def _strings(key: str) -> tuple[str, ...]:
        value = data.get(key, [])
        if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
            raise MachineJsonError(f"field {key}: expected an array of strings")
        return tuple(value)

    states = _strings("states")
    sigma = _strings("sigma")
    gamma = _strings("gamma") if "gamma" in data else ()
    start = data["start"]
    if not isinstance(start, str):
        raise MachineJsonError("field start: expected a string")
    finals = _strings("finals")

    raw_rules = data["rules"]
    if not isinstance(raw_rules, list):
        raise MachineJsonError("field rules: expected an array")
    rules: list[Rule] = []
    for i, raw in enumerate(raw_rules):
        where = f"rules[{i}]"
        if kind == NFA:
            if not (isinstance(raw, list) and len(raw) == 3):
                raise MachineJsonError(f"{where}: ndfa rule must be [src, read, dst]")
            src, read, dst = raw
            if not (isinstance(src, str) and isinstance(dst, str)):
                raise MachineJsonError(f"{where}: states must be strings")
            rules.append(NfaRule(src, _read_symbol(read, where), dst))
        else:
            if not (
                isinstance(raw, list)
                and len(raw) == 2
                and isinstance(raw[0], list)
                and len(raw[0]) == 3
                and isinstance(raw[1], list)
                and len(raw[1]) == 2
            ):
                raise MachineJsonError(
                    f"{where}: pda rule must be [[src, read, pop], [dst, push]]"
                )
            (src, read, pop), (dst, push) = raw
            if not (isinstance(src, str) and isinstance(dst, str)):
                raise MachineJsonError(f"{where}: states must be strings")
            rules.append(
                PdaRule(
                    src,
                    _read_symbol(read, where),
                    _symbol_list(pop, f"{where} pop"),
                    dst,
                    _symbol_list(push, f"{where} push"),
                )
            )

    invariants = data.get("invariants", {})
    if not isinstance(invariants, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in invariants.items()
    ):
        raise MachineJsonError("field invariants: expected an object of state -> source text")

    return Machine(
        kind=kind,
        states=states,
        sigma=sigma,
        gamma=gamma,
        start=start,
        finals=finals,
        rules=tuple(rules),
        invariants=dict(invariants),
    )


def machine_to_json(machine: Machine) -> dict:
    """Serialize to the documented JSON object (synthetic rules are dropped)."""
    rules: list[object] = []
    for rule in machine.rules:
        if rule.synthetic:
            continue
        if isinstance(rule, NfaRule):
            rules.append([rule.src, rule.read, rule.dst])
        else:
            rules.append([[rule.src, rule.read, list(rule.pop)], [rule.dst, list(rule.push)]])
    data: dict = {
        "kind": machine.kind,
        "states": list(machine.states),
        "sigma": list(machine.sigma),
        "gamma": list(machine.gamma),
        "start": machine.start,
        "finals": list(machine.finals),
        "rules": rules,
    }
    if machine.invariants:
        data["invariants"] = dict(sorted(machine.invariants.items()))
    return data


def load_machine(path: str) -> Machine:
    """Read, parse, and validate a machine JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MachineJsonError(f"invalid JSON: {exc}") from exc
    machine = machine_from_json(data)
    report = validate(machine)
    if not report.ok:
        raise MachineJsonError("; ".join(report.violations))
    return machine
