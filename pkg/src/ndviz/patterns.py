"""Regular patterns over symbol tokens, used by ``matches`` in invariants.

A pattern is a regular expression whose atoms are whole symbol tokens, not
characters: ``a b`` concatenates the symbols ``a`` and ``b``, ``ab`` is the
single symbol named ``ab``.  Supported forms: juxtaposition (concatenation),
``|`` (union), ``*`` (star), parentheses, and ``_`` for the empty word.

Matching is anchored: a word matches iff it is a member of the pattern's
language.  Membership is decided on a Thompson-constructed epsilon-NFA.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"\s*([A-Za-z0-9_'][A-Za-z0-9_']*|[()|*])")


class PatternError(ValueError):
    """Raised for malformed pattern text."""


@dataclass(frozen=True)
class Pattern:
    pass


@dataclass(frozen=True)
class Empty(Pattern):
    pass


@dataclass(frozen=True)
class Sym(Pattern):
    name: str


@dataclass(frozen=True)
class Concat(Pattern):
    parts: tuple[Pattern, ...]


@dataclass(frozen=True)
class Union(Pattern):
    parts: tuple[Pattern, ...]


@dataclass(frozen=True)
class Star(Pattern):
    inner: Pattern


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise PatternError(f"bad pattern character at offset {pos}: {text[pos]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def union(self) -> Pattern:
        parts = [self.concat()]
        while self.peek() == "|":
            self.i += 1
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def concat(self) -> Pattern:
        parts = [self.repeat()]
        while self.peek() not in (None, "|", ")"):
            parts.append(self.repeat())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def repeat(self) -> Pattern:
        node = self.atom()
        while self.peek() == "*":
            self.i += 1
            node = Star(node)
        return node

    def atom(self) -> Pattern:
        tok = self.peek()
        if tok is None:
            raise PatternError("pattern ended unexpectedly")
        if tok == "(":
            self.i += 1
            node = self.union()
            if self.peek() != ")":
                raise PatternError("missing ')' in pattern")
            self.i += 1
            return node
        if tok in (")", "|", "*"):
            raise PatternError(f"unexpected {tok!r} in pattern")
        self.i += 1
        return Empty() if tok == "_" else Sym(tok)


def parse(text: str) -> Pattern:
    tokens = _tokenize(text)
    if not tokens:
        raise PatternError("empty pattern")
    parser = _Parser(tokens)
    node = parser.union()
    if parser.peek() is not None:
        raise PatternError(f"trailing {parser.peek()!r} in pattern")
    return node


def render(pattern: Pattern) -> str:
    """Canonical text; parse(render(p)) reproduces p for parser output."""
    if isinstance(pattern, Empty):
        return "_"
    if isinstance(pattern, Sym):
        return pattern.name
    if isinstance(pattern, Star):
        inner = render(pattern.inner)
        if isinstance(pattern.inner, (Concat, Union)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(pattern, Concat):
        parts = [
            f"({render(p)})" if isinstance(p, (Union, Concat)) else render(p)
            for p in pattern.parts
        ]
        return " ".join(parts)
    if isinstance(pattern, Union):
        return " | ".join(
            f"({render(p)})" if isinstance(p, Union) else render(p)
            for p in pattern.parts
        )
    raise TypeError(f"not a pattern: {pattern!r}")


def _compile(pattern: Pattern) -> tuple[list[dict[str, list[int]]], list[list[int]], int, int]:
    """Thompson construction: (symbol transitions, eps transitions, start, accept)."""
    sym_edges: list[dict[str, list[int]]] = []
    eps_edges: list[list[int]] = []

    def new_state() -> int:
        sym_edges.append({})
        eps_edges.append([])
        return len(sym_edges) - 1

    def build(node: Pattern) -> tuple[int, int]:
        start, end = new_state(), new_state()
        if isinstance(node, Empty):
            eps_edges[start].append(end)
        elif isinstance(node, Sym):
            sym_edges[start].setdefault(node.name, []).append(end)
        elif isinstance(node, Concat):
            prev = start
            for part in node.parts:
                s, e = build(part)
                eps_edges[prev].append(s)
                prev = e
            eps_edges[prev].append(end)
        elif isinstance(node, Union):
            for part in node.parts:
                s, e = build(part)
                eps_edges[start].append(s)
                eps_edges[e].append(end)
        elif isinstance(node, Star):
            s, e = build(node.inner)
            eps_edges[start] += [s, end]
            eps_edges[e] += [s, end]
        else:
            raise TypeError(f"not a pattern: {node!r}")
        return start, end

    start, end = build(pattern)
    return sym_edges, eps_edges, start, end


def matches(pattern: Pattern, word: tuple[str, ...] | list[str]) -> bool:
    """Whole-word membership of ``word`` in the pattern's language."""
    sym_edges, eps_edges, start, accept = _compile(pattern)

    def closure(states: set[int]) -> set[int]:
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in eps_edges[s]:
                if t not in states:
                    states.add(t)
                    stack.append(t)
        return states

    current = closure({start})
    for sym in word:
        nxt: set[int] = set()
        for s in current:
            nxt.update(sym_edges[s].get(sym, ()))
        if not nxt:
            return False
        current = closure(nxt)
    return accept in current
