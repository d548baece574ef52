"""A small, closed predicate language over the consumed input and the stack.

State invariants are boolean expressions evaluated against ``ci`` (the
consumed input) and, for PDAs, ``stack``.  The language replaces arbitrary
host-language callbacks so machine files stay data and evaluation stays
sandboxed.

Grammar (whitespace insignificant, ``#`` starts a line comment)::

    bool := bool "or" bool | bool "and" bool | "not" bool | "(" bool ")"
          | int CMP int | "matches(" word "," pattern ")" | "true" | "false"
    CMP  := "==" | "!=" | "<" | "<=" | ">" | ">="
    int  := NUMBER | "len(" word ")" | "count(" word "," SYMBOL ")"
          | int ("+"|"-"|"*") int | "(" int ")"
    word := "ci" | "stack" | word "++" word | "[" SYMBOL* "]"

Precedence: ``not`` > ``and`` > ``or``; ``*`` > ``+``, ``-``.  Patterns are
regular expressions over symbol tokens (see :mod:`ndviz.patterns`) and may be
written bare or as a quoted string.  ``matches`` is anchored: it tests whole
-word language membership.  Integers are Python integers, so subtraction may
go negative and comparisons such as ``i <= j <= 2*i`` can be expressed with
``and``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import patterns
from .machine import NFA, PDA

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+|\#[^\n]*)
      | (?P<string>"[^"]*")
      | (?P<number>[0-9]+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      | (?P<op>\+\+|==|!=|<=|>=|[+\-*<>(),\[\]|])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"or", "and", "not", "true", "false", "len", "count", "matches", "ci", "stack"}
_CMP_OPS = ("==", "!=", "<=", ">=", "<", ">")


class DslError(ValueError):
    """Base class for invariant-language errors."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class DslSyntaxError(DslError):
    pass


class DslTypeError(DslError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Compare(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Matches(Expr):
    word: Expr
    pattern: patterns.Pattern


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class Len(Expr):
    word: Expr


@dataclass(frozen=True)
class Count(Expr):
    word: Expr
    symbol: str


@dataclass(frozen=True)
class Arith(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Ci(Expr):
    pass


@dataclass(frozen=True)
class StackRef(Expr):
    pass


@dataclass(frozen=True)
class WordLit(Expr):
    symbols: tuple[str, ...]


@dataclass(frozen=True)
class WordConcat(Expr):
    parts: tuple[Expr, ...]


@dataclass(frozen=True)
class InvariantProgram:
    source: str
    kind: str
    ast: Expr


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT | NUMBER | STRING | OP | EOF
    text: str
    line: int
    col: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    line, col = 1, 1
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        text = m.group(0)
        if m.lastgroup != "ws":
            kind = {"string": "STRING", "number": "NUMBER", "ident": "IDENT"}.get(
                m.lastgroup, "OP"
            )
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[_Token], kind: str):
        self.tokens = tokens
        self.kind = kind
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tok
        self.i += 1
        return tok

    def error(self, message: str, cls: type[DslError] = DslSyntaxError) -> DslError:
        return cls(message, self.tok.line, self.tok.col)

    def expect_op(self, text: str) -> None:
        if self.tok.kind == "OP" and self.tok.text == text:
            self.i += 1
            return
        raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")

    # bool ------------------------------------------------------------------

    def bool_or(self) -> Expr:
        node = self.bool_and()
        while self.tok.kind == "IDENT" and self.tok.text == "or":
            self.i += 1
            node = Or(node, self.bool_and())
        return node

    def bool_and(self) -> Expr:
        node = self.bool_not()
        while self.tok.kind == "IDENT" and self.tok.text == "and":
            self.i += 1
            node = And(node, self.bool_not())
        return node

    def bool_not(self) -> Expr:
        if self.tok.kind == "IDENT" and self.tok.text == "not":
            self.i += 1
            return Not(self.bool_not())
        return self.bool_atom()

    def bool_atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "IDENT" and tok.text in ("true", "false"):
            self.i += 1
            return BoolLit(tok.text == "true")
        if tok.kind == "IDENT" and tok.text == "matches":
            return self.matches_call()
        if tok.kind == "OP" and tok.text == "(":
            # Ambiguous: "(", could open an integer operand or a boolean group.
            saved = self.i
            try:
                return self.comparison()
            except DslSyntaxError:
                self.i = saved
            self.expect_op("(")
            node = self.bool_or()
            self.expect_op(")")
            return node
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.int_expr()
        tok = self.tok
        if tok.kind != "OP" or tok.text not in _CMP_OPS:
            raise self.error("expected a comparison operator")
        self.i += 1
        right = self.int_expr()
        return Compare(tok.text, left, right)

    def matches_call(self) -> Expr:
        self.i += 1  # matches
        self.expect_op("(")
        word = self.word_expr()
        self.expect_op(",")
        pattern = self.pattern()
        self.expect_op(")")
        return Matches(word, pattern)

    def pattern(self) -> patterns.Pattern:
        tok = self.tok
        if tok.kind == "STRING":
            self.i += 1
            text = tok.text[1:-1]
        else:
            # Bare pattern: capture raw tokens until the call's closing paren.
            depth = 0
            parts = []
            while True:
                cur = self.tok
                if cur.kind == "EOF":
                    raise self.error("unterminated matches(...) pattern")
                if cur.kind == "OP" and cur.text == "(":
                    depth += 1
                elif cur.kind == "OP" and cur.text == ")":
                    if depth == 0:
                        break
                    depth -= 1
                parts.append(cur.text)
                self.i += 1
            text = " ".join(parts)
        try:
            return patterns.parse(text)
        except patterns.PatternError as exc:
            raise DslSyntaxError(str(exc), tok.line, tok.col) from exc

    # int -------------------------------------------------------------------

    def int_expr(self) -> Expr:
        node = self.int_term()
        while self.tok.kind == "OP" and self.tok.text in ("+", "-"):
            op = self.advance().text
            node = Arith(op, node, self.int_term())
        return node

    def int_term(self) -> Expr:
        node = self.int_atom()
        while self.tok.kind == "OP" and self.tok.text == "*":
            self.i += 1
            node = Arith("*", node, self.int_atom())
        return node

    def int_atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "NUMBER":
            self.i += 1
            return IntLit(int(tok.text))
        if tok.kind == "IDENT" and tok.text == "len":
            self.i += 1
            self.expect_op("(")
            word = self.word_expr()
            self.expect_op(")")
            return Len(word)
        if tok.kind == "IDENT" and tok.text == "count":
            self.i += 1
            self.expect_op("(")
            word = self.word_expr()
            self.expect_op(",")
            symbol = self.symbol()
            self.expect_op(")")
            return Count(word, symbol)
        if tok.kind == "OP" and tok.text == "(":
            self.i += 1
            node = self.int_expr()
            self.expect_op(")")
            return node
        if (tok.kind == "IDENT" and tok.text in ("ci", "stack")) or (
            tok.kind == "OP" and tok.text == "["
        ):
            raise self.error("word expression where an integer is expected", DslTypeError)
        raise self.error(f"expected an integer expression, found {tok.text or 'end of input'!r}")

    # word ------------------------------------------------------------------

    def word_expr(self) -> Expr:
        parts = [self.word_atom()]
        while self.tok.kind == "OP" and self.tok.text == "++":
            self.i += 1
            parts.append(self.word_atom())
        return parts[0] if len(parts) == 1 else WordConcat(tuple(parts))

    def word_atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "IDENT" and tok.text == "ci":
            self.i += 1
            return Ci()
        if tok.kind == "IDENT" and tok.text == "stack":
            if self.kind == NFA:
                raise self.error("`stack` is not available in an ndfa invariant", DslTypeError)
            self.i += 1
            return StackRef()
        if tok.kind == "OP" and tok.text == "[":
            self.i += 1
            symbols = []
            while not (self.tok.kind == "OP" and self.tok.text == "]"):
                symbols.append(self.symbol())
            self.i += 1
            return WordLit(tuple(symbols))
        if tok.kind == "NUMBER":
            raise self.error("integer where a word is expected", DslTypeError)
        raise self.error(f"expected a word expression, found {tok.text or 'end of input'!r}")

    def symbol(self) -> str:
        tok = self.tok
        if tok.kind in ("IDENT", "NUMBER") and tok.text not in _KEYWORDS:
            self.i += 1
            return tok.text
        raise self.error(f"expected a symbol, found {tok.text or 'end of input'!r}")


def parse(source: str, kind: str) -> InvariantProgram:
    """Parse ``source`` for the given machine kind ('ndfa' or 'pda')."""
    if kind not in (NFA, PDA):
        raise ValueError(f"kind must be {NFA!r} or {PDA!r}")
    tokens = _tokenize(source)
    parser = _Parser(tokens, kind)
    ast = parser.bool_or()
    if parser.tok.kind != "EOF":
        raise parser.error(f"unexpected trailing input: {parser.tok.text!r}")
    return InvariantProgram(source=source, kind=kind, ast=ast)


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(
    program: InvariantProgram,
    ci: tuple[str, ...] | list[str],
    stack: tuple[str, ...] | list[str] | None = None,
) -> bool:
    """Evaluate the predicate; total on well-typed programs."""
    if program.kind == PDA and stack is None:
        raise ValueError("pda invariants require a stack value")
    ci = tuple(ci)
    stack_value = tuple(stack) if stack is not None else ()

    def ev(node: Expr):
        if isinstance(node, BoolLit):
            return node.value
        if isinstance(node, Not):
            return not ev(node.operand)
        if isinstance(node, And):
            return ev(node.left) and ev(node.right)
        if isinstance(node, Or):
            return ev(node.left) or ev(node.right)
        if isinstance(node, Compare):
            left, right = ev(node.left), ev(node.right)
            return {
                "==": left == right,
                "!=": left != right,
                "<": left < right,
                "<=": left <= right,
                ">": left > right,
                ">=": left >= right,
            }[node.op]
        if isinstance(node, Matches):
            return patterns.matches(node.pattern, ev(node.word))
        if isinstance(node, IntLit):
            return node.value
        if isinstance(node, Len):
            return len(ev(node.word))
        if isinstance(node, Count):
            return ev(node.word).count(node.symbol)
        if isinstance(node, Arith):
            left, right = ev(node.left), ev(node.right)
            return {"+": left + right, "-": left - right, "*": left * right}[node.op]
        if isinstance(node, Ci):
            return ci
        if isinstance(node, StackRef):
            return stack_value
        if isinstance(node, WordLit):
            return node.symbols
        if isinstance(node, WordConcat):
            out: tuple[str, ...] = ()
            for part in node.parts:
                out += ev(part)
            return out
        raise TypeError(f"not an expression: {node!r}")

    return bool(ev(program.ast))


# ---------------------------------------------------------------------------
# Rendering (render-then-parse reproduces the AST)

_BOOL_PREC = {Or: 1, And: 2, Not: 3}


def _render_bool(node: Expr, parent_prec: int = 0, right: bool = False) -> str:
    if isinstance(node, BoolLit):
        return "true" if node.value else "false"
    if isinstance(node, (Or, And)):
        prec = _BOOL_PREC[type(node)]
        word = "or" if isinstance(node, Or) else "and"
        text = (
            f"{_render_bool(node.left, prec, False)} {word} "
            f"{_render_bool(node.right, prec, True)}"
        )
        if prec < parent_prec or (prec == parent_prec and right):
            return f"({text})"
        return text
    if isinstance(node, Not):
        return f"not {_render_bool(node.operand, _BOOL_PREC[Not], True)}"
    if isinstance(node, Compare):
        return f"{_render_int(node.left)} {node.op} {_render_int(node.right)}"
    if isinstance(node, Matches):
        return f"matches({_render_word(node.word)}, {patterns.render(node.pattern)})"
    raise TypeError(f"not a boolean expression: {node!r}")


_ARITH_PREC = {"+": 1, "-": 1, "*": 2}


def _render_int(node: Expr, parent_prec: int = 0, right: bool = False) -> str:
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Len):
        return f"len({_render_word(node.word)})"
    if isinstance(node, Count):
        return f"count({_render_word(node.word)}, {node.symbol})"
    if isinstance(node, Arith):
        prec = _ARITH_PREC[node.op]
        text = (
            f"{_render_int(node.left, prec, False)} {node.op} "
            f"{_render_int(node.right, prec, True)}"
        )
        if prec < parent_prec or (prec == parent_prec and right):
            return f"({text})"
        return text
    raise TypeError(f"not an integer expression: {node!r}")


def _render_word(node: Expr) -> str:
    if isinstance(node, Ci):
        return "ci"
    if isinstance(node, StackRef):
        return "stack"
    if isinstance(node, WordLit):
        return "[" + " ".join(node.symbols) + "]"
    if isinstance(node, WordConcat):
        return " ++ ".join(_render_word(p) for p in node.parts)
    raise TypeError(f"not a word expression: {node!r}")


def render(program: InvariantProgram) -> str:
    return _render_bool(program.ast)
