"""Command-line interface.

Subcommands: ``apply`` and ``trace`` mirror applying a machine to a word and
listing the tracked accepting computation, ``viz`` dumps the frame sequence
as canonical JSON, ``graph`` emits DOT or SVG diagrams, ``inv-check``
unit-tests a state invariant, and ``serve`` starts the session service.

Exit codes: ``apply``/``trace`` exit 0, 1, or 2 for accept, reject, and
cutoff-limit; 64 flags a usage problem, 65 a malformed machine file, 66 an
unreadable file.
"""

from __future__ import annotations

import argparse
import sys

from . import invariants as inv
from .diagram import DiagramSpec, emit_dot, render_svg
from .engine import (
    ACCEPT,
    CUTOFF_LIMIT,
    REJECT,
    ExploreOptions,
    InputWordError,
    forest_to_json,
    format_trace,
    trace_result,
)
from .frames import build_visualization, canonical_json, frames_dump
from .machine import MachineJsonError, load_machine

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66

_VERDICT_EXIT = {ACCEPT: 0, REJECT: 1, CUTOFF_LIMIT: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def parse_word(text: str) -> tuple[str, ...]:
    """Comma-separated symbols; the empty string is the empty word."""
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _add_run_args(parser: argparse.ArgumentParser, word_required: bool = True) -> None:
    parser.add_argument("machine", help="machine JSON file")
    parser.add_argument(
        "--word",
        required=word_required,
        default=None,
        help='comma-separated input symbols; "" is the empty word',
    )
    parser.add_argument(
        "--max-steps",
        type=int,
        default=None,
        metavar="N",
        help="cutoff on transitions per pda computation (default 100)",
    )
    parser.add_argument(
        "--add-dead",
        action="store_true",
        help="augment the machine with a dead state before running",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="ndviz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="print accept/reject/cutoff-limit")
    _add_run_args(p)

    p = sub.add_parser("trace", help="print the tracked accepting computation")
    _add_run_args(p)

    p = sub.add_parser("viz", help="dump visualization frames as JSON")
    _add_run_args(p)
    p.add_argument("--dump-frames", metavar="PATH", help="write frame JSON here instead of stdout")
    p.add_argument("--dump-forest", metavar="PATH", help="also write the raw forest JSON")

    p = sub.add_parser("graph", help="emit the transition diagram")
    _add_run_args(p, word_required=False)
    p.add_argument("--frame", type=int, default=None, help="decorate for this frame index")
    p.add_argument("--format", choices=("dot", "svg"), default="dot")
    p.add_argument("-o", "--output", metavar="PATH", help="write here instead of stdout")

    p = sub.add_parser("inv-check", help="evaluate a state invariant")
    p.add_argument("machine", help="machine JSON file")
    p.add_argument("--state", required=True)
    p.add_argument("--ci", required=True, help="consumed input, comma separated")
    p.add_argument("--stack", default=None, help="stack value, comma separated (pda)")

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--port", type=int, default=7421)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="static UI directory to serve at /")

    return parser


def _load(path: str) -> Machine:
    try:
        return load_machine(path)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc.strerror or exc}", EX_NOINPUT))
    except MachineJsonError as exc:
        raise SystemExit(_fail(f"bad machine file {path}: {exc}", EX_DATAERR))


def _fail(message: str, code: int) -> int:
    print(f"ndviz: error: {message}", file=sys.stderr)
    return code


def _options(args) -> ExploreOptions:
    max_steps = args.max_steps if args.max_steps is not None else 100
    if max_steps < 1:
        raise UsageError("--max-steps must be >= 1")
    return ExploreOptions(max_steps=max_steps, add_dead=args.add_dead)


def _write(text: str, path: str | None) -> None:
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "apply":
        machine = _load(args.machine)
        viz = build_visualization(machine, parse_word(args.word), _options(args))
        print(viz.verdict.lower())
        return _VERDICT_EXIT[viz.verdict]

    if args.command == "trace":
        machine = _load(args.machine)
        viz = build_visualization(machine, parse_word(args.word), _options(args))
        result = trace_result(viz.forest)
        print(format_trace(result))
        return _VERDICT_EXIT[result.verdict]

    if args.command == "viz":
        machine = _load(args.machine)
        viz = build_visualization(machine, parse_word(args.word), _options(args))
        _write(frames_dump(viz), args.dump_frames)
        if args.dump_forest:
            _write(canonical_json(forest_to_json(viz.forest)), args.dump_forest)
        return 0

    if args.command == "graph":
        machine = _load(args.machine)
        frame = None
        effective = machine
        if args.frame is not None:
            if args.word is None:
                raise UsageError("--frame requires --word")
            viz = build_visualization(machine, parse_word(args.word), _options(args))
            if not 0 <= args.frame < len(viz.frames):
                raise UsageError(
                    f"--frame {args.frame} out of range (0..{len(viz.frames) - 1})"
                )
            frame = viz.frames[args.frame]
            effective = viz.machine
        elif args.add_dead:
            from .machine import add_dead_state

            effective = add_dead_state(machine)
        dot = emit_dot(DiagramSpec(effective, frame))
        _write(dot if args.format == "dot" else render_svg(dot), args.output)
        return 0

    if args.command == "inv-check":
        machine = _load(args.machine)
        if args.state not in machine.states:
            raise UsageError(f"--state {args.state!r} is not a state of the machine")
        source = machine.invariants.get(args.state)
        if source is None:
            raise UsageError(f"state {args.state!r} has no invariant")
        program = inv.parse(source, machine.kind)
        stack = parse_word(args.stack) if args.stack is not None else ()
        if machine.kind == "ndfa":
            value = inv.evaluate(program, parse_word(args.ci))
        else:
            value = inv.evaluate(program, parse_word(args.ci), stack)
        print("true" if value else "false")
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        app = create_app(ui_dir=args.ui_dir)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        return _fail(str(exc), EX_USAGE)
    except InputWordError as exc:
        return _fail(str(exc), EX_USAGE)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
