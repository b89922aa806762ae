"""SVG progress graphs of 2-process programs.

Process 1 runs along x, process 2 along y (upwards).  Forbidden squares are
filled grey, unsafe states hatched, unreachable states circled, and each
schedule is drawn through its representative dipath.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .analysis import ScheduleClasses, unsafe_states, unreachable_states
from .precubical import PrecubicalSet
from .pvlang import PvProgram, format_pv
from .semantics import GridCell, cell_id, grid_lengths, initial_vertex, final_vertex, parse_vertex_id

__all__ = ["UNIT", "PALETTE", "RenderError", "render_svg"]

UNIT = 40
MARGIN = 50
FORBIDDEN_FILL = "#808080"
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


class RenderError(ValueError):
    pass


def render_svg(
    program: PvProgram,
    M: PrecubicalSet,
    classes: ScheduleClasses | None = None,
    terminal_tick: bool = True,
) -> str:
    if program.n_processes != 2:
        raise RenderError(f"only 2-process programs can be drawn, got {program.n_processes}")
    W, H = grid_lengths(program, terminal_tick)
    width, height = 2 * MARGIN + W * UNIT, 2 * MARGIN + H * UNIT + 20

    def X(x: float) -> float:
        return MARGIN + x * UNIT

    def Y(y: float) -> float:
        return MARGIN + 20 + (H - y) * UNIT

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        "<defs>",
        '<pattern id="hatch" width="4" height="4" patternUnits="userSpaceOnUse" '
        'patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="4" stroke="black" stroke-width="1.5"/></pattern>',
        "</defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle">'
        f"{escape(format_pv(program).strip().replace(chr(10), '  '))}</text>",
    ]

    out.append('<g class="forbidden-area">')
    for i in range(W):
        for j in range(H):
            if cell_id(GridCell((i, j), {1, 2})) not in M.dims:
                out.append(
                    f'<rect class="forbidden" x="{X(i):.1f}" y="{Y(j + 1):.1f}" '
                    f'width="{UNIT}" height="{UNIT}" fill="{FORBIDDEN_FILL}"/>'
                )
    out.append("</g>")

    out.append('<g class="grid" stroke="#bbbbbb" stroke-width="1">')
    for a in M.arcs:
        (x0, y0), (x1, y1) = (parse_vertex_id(M.face(a, 1, e)) for e in (0, 1))
        out.append(f'<line x1="{X(x0):.1f}" y1="{Y(y0):.1f}" x2="{X(x1):.1f}" y2="{Y(y1):.1f}"/>')
    out.append("</g>")

    out.append('<g class="axes" stroke="black" stroke-width="1.5">')
    out.append(f'<line x1="{X(0):.1f}" y1="{Y(0):.1f}" x2="{X(W):.1f}" y2="{Y(0):.1f}"/>')
    out.append(f'<line x1="{X(0):.1f}" y1="{Y(0):.1f}" x2="{X(0):.1f}" y2="{Y(H):.1f}"/>')
    out.append("</g>")
    for k, act in enumerate(program.processes[0], 1):
        out.append(f'<text class="label" x="{X(k):.1f}" y="{Y(0) + 18:.1f}" text-anchor="middle">{escape(str(act))}</text>')
    for k, act in enumerate(program.processes[1], 1):
        out.append(f'<text class="label" x="{X(0) - 8:.1f}" y="{Y(k) + 4:.1f}" text-anchor="end">{escape(str(act))}</text>')

    init, final = initial_vertex(program), final_vertex(program, terminal_tick)
    unsafe = unsafe_states(M, final) if final in M.dims else frozenset(M.vertices)
    unreachable = unreachable_states(M, init) if init in M.dims else frozenset(M.vertices)
    for v in M.vertices:
        x, y = parse_vertex_id(v)
        if v in unsafe:
            out.append(
                f'<rect class="unsafe" x="{X(x) - 6:.1f}" y="{Y(y) - 6:.1f}" width="12" height="12" '
                f'fill="url(#hatch)" stroke="black"/>'
            )
        if v in unreachable:
            out.append(f'<circle class="unreachable" cx="{X(x):.1f}" cy="{Y(y):.1f}" r="8" fill="none" stroke="black"/>')

    if classes is not None:
        K = len(classes)
        for k, rep in enumerate(classes.representatives):
            shift = (k - (K - 1) / 2) * 3
            pts = " ".join(
                f"{X(x) + shift:.1f},{Y(y) - shift:.1f}" for x, y in map(parse_vertex_id, rep.vertices)
            )
            out.append(
                f'<polyline class="schedule" points="{pts}" fill="none" '
                f'stroke="{PALETTE[k % len(PALETTE)]}" stroke-width="2.5"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
