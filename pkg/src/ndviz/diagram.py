"""Transition diagrams: deterministic DOT emission and SVG rendering.

Rendering conventions: the start state has a green outline, final states are
double circles (a start that is also final is a double green circle), the
dead state and its synthetic rules are dashed, and parallel rules between the
same pair of states merge into a single labeled edge.  With a frame attached,
highlighted rules color their edges and decorated states are filled.

``render_svg`` lays the graph out itself (rank by BFS distance from the start
state, ordered by name within a rank, left to right) unless the environment
variable ``NDVIZ_LAYOUT`` names an external layout binary such as ``dot``.
The built-in SVG tags every state group with ``data-state`` and every edge
group with ``data-edge``/``data-rules`` so a client can recolor frames
without re-layout.
"""

from __future__ import annotations

import os
import re
import subprocess
from dataclasses import dataclass

from .frames import DARK_GREEN, GOLD, GREEN, INV_BICOLOR, INV_GREEN, INV_RED, VIOLET, Frame
from .machine import Machine, NfaRule

COLOR_GREEN = "#228B22"
COLOR_DARK_GREEN = "#006400"
COLOR_VIOLET = "#7F00FF"
COLOR_GOLD = "#DAA520"
COLOR_INV_RED = "#CC0000"
COLOR_INV_GREEN = "#22AA22"
COLOR_START = "#008000"
COLOR_DEFAULT = "#000000"

EDGE_COLORS = {GREEN: COLOR_GREEN, DARK_GREEN: COLOR_DARK_GREEN, VIOLET: COLOR_VIOLET}
FILL_COLORS = {
    GOLD: COLOR_GOLD,
    INV_GREEN: COLOR_INV_GREEN,
    INV_RED: COLOR_INV_RED,
    # vertical half-split: green left, red right
    INV_BICOLOR: f"{COLOR_INV_GREEN};0.5:{COLOR_INV_RED}",
}

_EDGE_PRIORITY = [DARK_GREEN, GREEN, VIOLET]


@dataclass(frozen=True)
class DiagramSpec:
    machine: Machine
    frame: Frame | None = None


def _epsilon(text: str) -> str:
    return text if text else "ε"


def rule_label(rule) -> str:
    if isinstance(rule, NfaRule):
        return _epsilon(rule.read)
    pop = _epsilon(" ".join(rule.pop))
    push = _epsilon(" ".join(rule.push))
    return f"{_epsilon(rule.read)}, {pop} → {push}"


def _check_frame(machine: Machine, frame: Frame) -> None:
    for rule_index, _ in frame.highlighted_edges:
        if not 0 <= rule_index < len(machine.rules):
            raise ValueError(f"frame references rule {rule_index} outside the machine")
    for state in frame.node_decorations:
        if state not in machine.states:
            raise ValueError(f"frame decorates unknown state {state!r}")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(spec: DiagramSpec) -> str:
    """Byte-stable DOT text: nodes and edges are emitted in sorted order."""
    machine = spec.machine
    frame = spec.frame
    if frame is not None:
        _check_frame(machine, frame)
    highlight = dict(frame.highlighted_edges) if frame is not None else {}
    decorations = frame.node_decorations if frame is not None else {}

    grouped: dict[tuple[str, str], list[int]] = {}
    for i, rule in enumerate(machine.rules):
        grouped.setdefault((rule.src, rule.dst), []).append(i)

    finals = set(machine.finals)
    lines = [
        "digraph machine {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="Helvetica"];',
        '  edge [fontname="Helvetica"];',
    ]
    for state in sorted(machine.states):
        attrs = [f"id={_quote('node__' + state)}"]
        if state in finals:
            attrs.append("shape=doublecircle")
        if state == machine.start:
            attrs.append(f"color={_quote(COLOR_START)}")
        styles = []
        if state == machine.dead_state:
            styles.append("dashed")
        fill = decorations.get(state)
        if fill is not None:
            styles.append("filled")
            attrs.append(f"fillcolor={_quote(FILL_COLORS[fill])}")
            if fill == INV_BICOLOR:
                attrs.append("gradientangle=0")
        if styles:
            attrs.append(f"style={_quote(','.join(styles))}")
        lines.append(f"  {_quote(state)} [{', '.join(attrs)}];")

    nfa = machine.kind == "ndfa"
    for (src, dst) in sorted(grouped):
        indices = grouped[(src, dst)]
        labels = [rule_label(machine.rules[i]) for i in indices]
        label = ", ".join(labels) if nfa else "\\n".join(labels)
        attrs = [
            f"id={_quote('edge__' + src + '__' + dst)}",
            f"label={_quote(label)}",
            f"rules={_quote(','.join(str(i) for i in indices))}",
        ]
        colors = [highlight[i] for i in indices if i in highlight]
        if colors:
            best = min(colors, key=_EDGE_PRIORITY.index)
            attrs.append(f"color={_quote(EDGE_COLORS[best])}")
            attrs.append(f"fontcolor={_quote(EDGE_COLORS[best])}")
        if all(machine.rules[i].synthetic for i in indices):
            attrs.append('style="dashed"')
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT parsing (the dialect emitted above)


class DotParseError(ValueError):
    pass


def _parse_attrs(text: str) -> dict[str, str]:
    attrs: dict[str, str] = {}
    i = 0
    while i < len(text):
        if text[i] in " ,\t":
            i += 1
            continue
        j = text.index("=", i)
        key = text[i:j].strip()
        i = j + 1
        if i < len(text) and text[i] == '"':
            i += 1
            value = []
            while text[i] != '"':
                if text[i] == "\\":
                    i += 1
                value.append(text[i])
                i += 1
            i += 1
            attrs[key] = "".join(value)
        else:
            j = i
            while j < len(text) and text[j] not in " ,":
                j += 1
            attrs[key] = text[i:j]
            i = j
    return attrs


_NODE_LINE = re.compile(r'^"((?:[^"\\]|\\.)*)"\s*\[(.*)\];$')
_EDGE_LINE = re.compile(r'^"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"\s*\[(.*)\];$')


def parse_dot(text: str):
    """Parse the emitted dialect back into (nodes, edges) for layout."""
    nodes: dict[str, dict[str, str]] = {}
    edges: list[tuple[str, str, dict[str, str]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if (
            not line
            or line.startswith(("digraph", "}", "rankdir", "node [", "edge ["))
        ):
            continue
        m = _EDGE_LINE.match(line)
        if m:
            src = m.group(1).replace('\\"', '"')
            dst = m.group(2).replace('\\"', '"')
            edges.append((src, dst, _parse_attrs(m.group(3))))
            continue
        m = _NODE_LINE.match(line)
        if m:
            nodes[m.group(1).replace('\\"', '"')] = _parse_attrs(m.group(2))
            continue
        raise DotParseError(f"cannot parse DOT line: {line!r}")
    if not nodes:
        raise DotParseError("DOT text contains no nodes")
    return nodes, edges


# ---------------------------------------------------------------------------
# Built-in layered layout


_R = 30  # node radius
_COL = 170
_ROW = 120
_X0 = 100
_Y0 = 110


def _layout(nodes: dict[str, dict[str, str]], edges) -> dict[str, tuple[float, float]]:
    succ: dict[str, list[str]] = {name: [] for name in nodes}
    for src, dst, _ in edges:
        if dst not in succ[src]:
            succ[src].append(dst)
    start = None
    for name in sorted(nodes):
        if nodes[name].get("color") == COLOR_START:
            start = name
            break
    if start is None:
        start = sorted(nodes)[0]

    rank = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for name in frontier:
            for other in succ[name]:
                if other not in rank:
                    rank[other] = rank[name] + 1
                    nxt.append(other)
        frontier = nxt
    spare = (max(rank.values()) + 1) if rank else 0
    for name in sorted(nodes):
        if name not in rank:
            rank[name] = spare

    by_rank: dict[int, list[str]] = {}
    for name in sorted(nodes):
        by_rank.setdefault(rank[name], []).append(name)
    positions = {}
    for r, names in sorted(by_rank.items()):
        for row, name in enumerate(names):
            positions[name] = (_X0 + r * _COL, _Y0 + row * _ROW)
    return positions


def _svg_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _fmt(x: float) -> str:
    return f"{x:.1f}"


def _arrow(tip_x, tip_y, ux, uy) -> str:
    bx, by = tip_x - 10 * ux, tip_y - 10 * uy
    px, py = -uy, ux
    points = (
        f"{_fmt(tip_x)},{_fmt(tip_y)} "
        f"{_fmt(bx + 4 * px)},{_fmt(by + 4 * py)} "
        f"{_fmt(bx - 4 * px)},{_fmt(by - 4 * py)}"
    )
    return f'<polygon points="{points}" fill="currentColor"/>'


def _label_text(x, y, label) -> str:
    parts = label.split("\\n")
    tspans = "".join(
        f'<tspan x="{_fmt(x)}" dy="{0 if i == 0 else 14}">{_svg_escape(part)}</tspan>'
        for i, part in enumerate(parts)
    )
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" '
        f'font-family="Helvetica" font-size="12" fill="currentColor">{tspans}</text>'
    )


BICOLOR_GRADIENT_ID = "bicolor-split"
_BICOLOR_FILL_URL = f"url(#{BICOLOR_GRADIENT_ID})"


def _render_builtin(dot_text: str) -> str:
    nodes, edges = parse_dot(dot_text)
    positions = _layout(nodes, edges)

    pairs = {(src, dst) for src, dst, _ in edges}
    body: list[str] = []
    body.append(
        "<defs>"
        f'<linearGradient id="{BICOLOR_GRADIENT_ID}" x1="0" y1="0" x2="1" y2="0">'
        f'<stop offset="0.5" stop-color="{COLOR_INV_GREEN}"/>'
        f'<stop offset="0.5" stop-color="{COLOR_INV_RED}"/>'
        "</linearGradient></defs>"
    )

    # Edges and labels take their color from the group's `color` attribute so
    # clients can recolor a whole edge with a single attribute change.
    body.append('<g class="edges">')
    for src, dst, attrs in edges:
        color = attrs.get("color", COLOR_DEFAULT)
        dashed = ' stroke-dasharray="6,3"' if attrs.get("style") == "dashed" else ""
        rules = attrs.get("rules", "")
        label = attrs.get("label", "")
        body.append(
            f'<g data-edge="{_svg_escape(src)}-&gt;{_svg_escape(dst)}" '
            f'data-rules="{rules}" color="{color}">'
        )
        x1, y1 = positions[src]
        x2, y2 = positions[dst]
        if src == dst:
            top = y1 - _R
            path = (
                f"M {_fmt(x1 - 12)} {_fmt(top)} "
                f"C {_fmt(x1 - 34)} {_fmt(top - 52)}, {_fmt(x1 + 34)} {_fmt(top - 52)}, "
                f"{_fmt(x1 + 12)} {_fmt(top)}"
            )
            body.append(
                f'<path d="{path}" fill="none" stroke="currentColor" '
                f'stroke-width="1.5"{dashed}/>'
            )
            body.append(_arrow(x1 + 12, top, 0.38, 0.92))
            body.append(_label_text(x1, top - 58, label))
        else:
            dx, dy = x2 - x1, y2 - y1
            dist = (dx * dx + dy * dy) ** 0.5
            ux, uy = dx / dist, dy / dist
            sx, sy = x1 + _R * ux, y1 + _R * uy
            tx, ty = x2 - (_R + 4) * ux, y2 - (_R + 4) * uy
            if (dst, src) in pairs or abs(dx) < 1.0:
                off = 28 if src < dst else -28
                px, py = -uy * off, ux * off
                mx, my = (sx + tx) / 2 + px, (sy + ty) / 2 + py
                path = (
                    f"M {_fmt(sx)} {_fmt(sy)} Q {_fmt(mx)} {_fmt(my)}, "
                    f"{_fmt(tx)} {_fmt(ty)}"
                )
                body.append(
                    f'<path d="{path}" fill="none" stroke="currentColor" '
                    f'stroke-width="1.5"{dashed}/>'
                )
                adx, ady = tx - mx, ty - my
                adist = (adx * adx + ady * ady) ** 0.5
                body.append(_arrow(tx, ty, adx / adist, ady / adist))
                body.append(_label_text(mx, my - 6, label))
            else:
                body.append(
                    f'<line x1="{_fmt(sx)}" y1="{_fmt(sy)}" x2="{_fmt(tx)}" '
                    f'y2="{_fmt(ty)}" stroke="currentColor" stroke-width="1.5"{dashed}/>'
                )
                body.append(_arrow(tx, ty, ux, uy))
                lx, ly = (sx + tx) / 2 - uy * 14, (sy + ty) / 2 + ux * 14 - 6
                body.append(_label_text(lx, ly, label))
        body.append("</g>")
    body.append("</g>")

    body.append('<g class="nodes">')
    for name in sorted(nodes):
        attrs = nodes[name]
        x, y = positions[name]
        stroke = attrs.get("color", COLOR_DEFAULT)
        style = attrs.get("style", "")
        dashed = ' stroke-dasharray="6,3"' if "dashed" in style else ""
        fill = attrs.get("fillcolor", "#FFFFFF") if "filled" in style else "#FFFFFF"
        if ";0.5:" in fill:
            fill = _BICOLOR_FILL_URL
        body.append(f'<g data-state="{_svg_escape(name)}">')
        body.append(
            f'<circle class="body" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_R}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="1.5"{dashed}/>'
        )
        if attrs.get("shape") == "doublecircle":
            body.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_R - 5}" fill="none" '
                f'stroke="{stroke}" stroke-width="1.5"{dashed}/>'
            )
        body.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y + 5)}" text-anchor="middle" '
            f'font-family="Helvetica" font-size="14" fill="#000000">'
            f"{_svg_escape(name)}</text>"
        )
        body.append("</g>")
    body.append("</g>")

    width = max(x for x, _ in positions.values()) + _X0
    height = max(y for _, y in positions.values()) + _Y0
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return head + "\n" + "\n".join(body) + "\n</svg>\n"


def _inject_data_attrs(svg: str) -> str:
    """Tag external-layout SVG groups with data-state / data-edge."""

    def node_repl(m):
        return f'{m.group(1)} data-state="{m.group(3)}"{m.group(2)}{m.group(3)}'

    def edge_repl(m):
        title = m.group(3).replace("&#45;&gt;", "-&gt;")
        return f'{m.group(1)} data-edge="{title}"{m.group(2)}{m.group(3)}'

    svg = re.sub(r'(<g id="[^"]*" class="node")(>\s*<title>)([^<]*)', node_repl, svg)
    svg = re.sub(r'(<g id="[^"]*" class="edge")(>\s*<title>)([^<]*)', edge_repl, svg)
    return svg


def render_svg(dot_text: str) -> str:
    """Render DOT to SVG via ``NDVIZ_LAYOUT`` if set, else the built-in layout."""
    layout = os.environ.get("NDVIZ_LAYOUT")
    if layout:
        try:
            proc = subprocess.run(
                [layout, "-Tsvg"],
                input=dot_text.encode("utf-8"),
                capture_output=True,
                check=False,
            )
        except OSError as exc:
            raise RuntimeError(f"layout tool {layout!r} could not be run: {exc}") from exc
        if proc.returncode != 0:
            raise RuntimeError(
                f"layout tool {layout!r} failed with status {proc.returncode}: "
                f"{proc.stderr.decode('utf-8', 'replace').strip()}"
            )
        return _inject_data_attrs(proc.stdout.decode("utf-8"))
    return _render_builtin(dot_text)


def diagram_svg(spec: DiagramSpec) -> str:
    return render_svg(emit_dot(spec))
