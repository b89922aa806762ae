"""Command-line driver.

Exit codes:

====  ==========================================================
0     success (no deadlock / all paths accepted / equivalent)
1     input error (unreadable file, PV syntax error, bad JSON)
2     analysis verdict: deadlock found, path rejected, not equivalent
3     precubical validation failure
4     size cap exceeded
5     unsupported rendering request
====  ==========================================================
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import DEFAULT_PATH_CAP, CapExceededError, UnknownVertexError, dihomotopy_classes
from .deform import DirectedMultigraph, GraphError, normalize, subdivide, t_equivalent
from .globegeo import GlobeGeometryError, GlobePoint, cube_to_globe, is_dipath, underlying_point
from .precubical import InvalidPrecubicalSet, PrecubicalSet, dumps, from_json, validate
from .pvlang import PvError, PvProgram, format_pv, parse_pv
from .render import RenderError, render_svg
from .report import build_report
from .semantics import DEFAULT_CELL_CAP, ResourceLimitError, final_vertex, initial_vertex, pv_to_precubical

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2
EXIT_INVALID = 3
EXIT_CAP = 4
EXIT_UNSUPPORTED = 5


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _is_json(path: str, text: str) -> bool:
    return path.endswith(".json") or text.lstrip().startswith("{")


def _load_json(text: str, path: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}") from exc


def _load_input(args) -> tuple[PvProgram | None, PrecubicalSet, str, str]:
    """Return (program or None, precubical set, initial vertex, final vertex)."""
    text = _read(args.input)
    tick = not getattr(args, "compact_grid", False)
    if _is_json(args.input, text):
        doc = _load_json(text, args.input)
        try:
            M = from_json(doc, force=args.force)
        except InvalidPrecubicalSet as exc:
            raise CliError(str(exc), EXIT_INVALID) from exc
        except ValueError as exc:
            raise CliError(f"{args.input}: {exc}") from exc
        init = args.init or doc.get("initial") or (M.vertices[0] if M.vertices else None)
        final = args.final or doc.get("final") or (M.vertices[-1] if M.vertices else None)
        if init is None:
            raise CliError(f"{args.input}: no vertices")
        return None, M, init, final
    try:
        program = parse_pv(text)
    except PvError as exc:
        raise CliError(f"{args.input}: {exc}") from exc
    M = pv_to_precubical(program, cap=args.cell_cap, terminal_tick=tick)
    init = args.init or initial_vertex(program)
    final = args.final or final_vertex(program, tick)
    return program, M, init, final


def cmd_analyze(args) -> int:
    program, M, init, final = _load_input(args)
    if not args.force:
        report = validate(M)
        if report:
            raise CliError(str(InvalidPrecubicalSet(report)), EXIT_INVALID)
    rep = build_report(
        M, init, final,
        program=format_pv(program).strip() if program else None,
        cap=args.cap,
        timing=args.timing,
    )
    sys.stdout.write(rep.dumps() + "\n" if args.format == "json" else rep.to_text())
    return EXIT_VERDICT if rep.has_deadlock else EXIT_OK


def cmd_render(args) -> int:
    program, M, init, final = _load_input(args)
    if program is None:
        raise CliError("render needs a PV program", EXIT_UNSUPPORTED)
    if program.n_processes != 2:
        raise CliError(f"rendering supports 2 processes, got {program.n_processes}", EXIT_UNSUPPORTED)
    classes = dihomotopy_classes(M, init, final, cap=args.cap) if final in M.dims else None
    svg = render_svg(program, M, classes, terminal_tick=not args.compact_grid)
    try:
        Path(args.output).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror}") from exc
    return EXIT_OK


def cmd_validate(args) -> int:
    args.force = True
    program, M, _, _ = _load_input(args)
    report = validate(M)
    if args.emit:
        Path(args.emit).write_text(dumps(M) + "\n", encoding="utf-8")
    if args.format == "json":
        doc = {"valid": not report, "counts": list(M.counts()), "violations": [str(v) for v in report]}
        sys.stdout.write(json.dumps(doc, indent=1) + "\n")
    else:
        sys.stdout.write("valid\n" if not report else "".join(f"{v}\n" for v in report))
    return EXIT_OK if not report else EXIT_INVALID


def _sample(obj, n: int | None) -> GlobePoint:
    if isinstance(obj, list):
        if n is not None and len(obj) != n:
            raise CliError(f"cube sample {obj} does not have {n} coordinates")
        return cube_to_globe(obj)
    return GlobePoint.from_json(obj)


def check_paths(paths, n: int | None = None, non_constant: bool = False) -> list[dict]:
    """Verdict for each sampled path of a globe (library entry point of ``globe-check``)."""
    out = []
    for k, raw in enumerate(paths):
        try:
            samples = [_sample(s, n) for s in raw]
        except (GlobeGeometryError, ValueError, KeyError, TypeError) as exc:
            raise CliError(f"path {k}: malformed sample: {exc}") from exc
        if not samples:
            raise CliError(f"path {k}: no samples")
        entry = {"index": k, "monotone": is_dipath(samples), "constant": all(s == samples[0] for s in samples)}
        entry["underlying_point"] = None
        verdict, reason = "accepted", None
        if not entry["monotone"]:
            verdict, reason = "rejected", "samples are not non-decreasing"
        elif entry["constant"] and non_constant:
            verdict, reason = "rejected", "non-contracting violation: constant path"
        elif samples[0].tag == "iota" and samples[-1].tag == "sigma" and any(s.is_interior for s in samples):
            entry["underlying_point"] = list(underlying_point(samples))
        entry["verdict"] = verdict
        if reason:
            entry["reason"] = reason
        out.append(entry)
    return out


def cmd_globe_check(args) -> int:
    doc = _load_json(_read(args.input), args.input)
    paths = doc.get("paths") if isinstance(doc, dict) else doc
    if not isinstance(paths, list):
        raise CliError("expected a list of paths or {\"paths\": [...]}")
    n = args.n if args.n is not None else (doc.get("n") if isinstance(doc, dict) else None)
    results = check_paths(paths, n=n, non_constant=args.non_constant)
    if args.format == "json":
        sys.stdout.write(json.dumps({"paths": results}, indent=1) + "\n")
    else:
        for r in results:
            extra = r.get("reason") or (f"base={r['underlying_point']}" if r["underlying_point"] is not None else "")
            sys.stdout.write(f"path {r['index']}: {r['verdict']} (monotone={r['monotone']}) {extra}\n".rstrip() + "\n")
    return EXIT_OK if all(r["verdict"] == "accepted" for r in results) else EXIT_VERDICT


def _load_graph(path: str) -> DirectedMultigraph:
    try:
        return DirectedMultigraph.from_json(_load_json(_read(path), path))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_deform(args) -> int:
    if args.action == "equiv":
        g1, g2 = _load_graph(args.graphs[0]), _load_graph(args.graphs[1])
        eq = t_equivalent(g1, g2)
        sys.stdout.write(json.dumps({"t_equivalent": eq}) + "\n")
        return EXIT_OK if eq else EXIT_VERDICT
    g = _load_graph(args.graphs[0])
    if args.action == "normalize":
        out = normalize(g)
    else:
        if args.arc is None:
            raise CliError("subdivide needs --arc")
        try:
            out = subdivide(g, args.arc, args.parts)
        except GraphError as exc:
            raise CliError(str(exc)) from exc
    sys.stdout.write(out.dumps() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvcube", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cap=True):
        p.add_argument("input", help="PV program (.pv) or precubical set (.hda.json); '-' for stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--force", action="store_true", help="skip validation of loaded JSON")
        p.add_argument("--init", help="initial vertex id (default: origin / first vertex)")
        p.add_argument("--final", help="final vertex id (default: far corner / last vertex)")
        p.add_argument("--compact-grid", action="store_true", help="no terminal tick after the last action")
        p.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
        if cap:
            p.add_argument("--cap", type=int, default=DEFAULT_PATH_CAP, help="maximum number of dipaths")

    p = sub.add_parser("analyze", help="deadlocks, unsafe/unreachable states and schedules")
    common(p)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("render", help="SVG progress graph of a 2-process program")
    common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("validate", help="check the cube axiom")
    common(p, cap=False)
    p.add_argument("--emit", help="also write the precubical set as hda/1 JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("globe-check", help="monotonicity and base point of sampled globe paths")
    p.add_argument("input")
    p.add_argument("--n", type=int, help="cube dimension of coordinate samples")
    p.add_argument("--non-constant", action="store_true", help="reject constant paths")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_globe_check)

    p = sub.add_parser("deform", help="subdivide / normalize / T-equivalence of 1-complexes")
    p.add_argument("action", choices=("subdivide", "normalize", "equiv"))
    p.add_argument("graphs", nargs="+", help="graph JSON file(s)")
    p.add_argument("--arc")
    p.add_argument("--parts", type=int, default=2)
    p.set_defaults(func=cmd_deform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "deform" and len(args.graphs) != (2 if args.action == "equiv" else 1):
        parser.error(f"deform {args.action} takes {2 if args.action == 'equiv' else 1} graph file(s)")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pvcube: error: {exc}", file=sys.stderr)
        return exc.code
    except (CapExceededError, ResourceLimitError) as exc:
        print(f"pvcube: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except RenderError as exc:
        print(f"pvcube: error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (UnknownVertexError, GraphError, GlobeGeometryError) as exc:
        print(f"pvcube: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
