"""Analysis reports: the full pipeline result in JSON or plain text."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

from . import analysis
from .precubical import SCHEMA, PrecubicalSet, skeleton_graph

__all__ = ["AnalysisReport", "build_report"]


@dataclass
class AnalysisReport:
    program: str | None
    counts: list[int]
    initial: str
    final: str
    final_allowed: bool
    deadlocks: list[str]
    unsafe: list[str]
    unreachable: list[str]
    dipath_count: int
    class_count: int
    classes: list[dict] = field(default_factory=list)
    timing: dict | None = None

    @property
    def has_deadlock(self) -> bool:
        return bool(self.deadlocks)

    def to_json(self) -> dict:
        doc = {"schema": SCHEMA, "kind": "report"}
        doc.update(asdict(self))
        if self.timing is None:
            del doc["timing"]
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def to_text(self) -> str:
        lines = []
        if self.program:
            lines.append(f"program:      {self.program}")
        lines.append("cells:        " + ", ".join(f"{c} in dim {d}" for d, c in enumerate(self.counts)))
        lines.append(f"initial:      {self.initial}")
        final = self.final if self.final_allowed else f"{self.final} (forbidden)"
        lines.append(f"final:        {final}")
        for label, vs in (("deadlocks", self.deadlocks), ("unsafe", self.unsafe), ("unreachable", self.unreachable)):
            lines.append(f"{label + ':':<14}{len(vs)}" + (f"  {' '.join(vs)}" if vs else ""))
        lines.append(f"dipaths:      {self.dipath_count}")
        lines.append(f"schedules:    {self.class_count}")
        for k, c in enumerate(self.classes, 1):
            lines.append(f"  [{k}] {c['size']} dipath(s), e.g. {' '.join(c['representative'])}")
        if self.timing:
            lines.append("timing:       " + ", ".join(f"{k}={v:.4f}s" for k, v in self.timing.items()))
        return "\n".join(lines) + "\n"


def build_report(
    M: PrecubicalSet,
    initial: str,
    final: str,
    program: str | None = None,
    cap: int = analysis.DEFAULT_PATH_CAP,
    timing: bool = False,
) -> AnalysisReport:
    """Run reachability, deadlock and schedule analysis on ``M``.

    A final state missing from ``M`` (forbidden by the semantics) is not an
    error: every state is then unsafe and there are no dipaths.
    """
    if initial not in M.dims or M.dims[initial] != 0:
        raise analysis.UnknownVertexError(initial)
    clock = time.perf_counter()
    stamps = {}
    order = {v: k for k, v in enumerate(M.vertices)}
    ordered = lambda vs: sorted(vs, key=order.__getitem__)

    unreachable = analysis.unreachable_states(M, initial)
    final_allowed = final in M.dims and M.dims[final] == 0
    if final_allowed:
        dead = analysis.deadlocks(M, final)
        unsafe = analysis.unsafe_states(M, final)
    else:
        g = skeleton_graph(M)
        dead = frozenset(v for v in M.vertices if g.out_degree(v) == 0)
        unsafe = frozenset(M.vertices)
    stamps["reachability"] = time.perf_counter() - clock

    classes = []
    n_paths = n_classes = 0
    if final_allowed:
        clock = time.perf_counter()
        sc = analysis.dihomotopy_classes(M, initial, final, cap=cap)
        n_paths, n_classes = sc.n_paths, len(sc)
        classes = [{"size": len(c), "representative": list(c[0].vertices)} for c in sc]
        stamps["schedules"] = time.perf_counter() - clock

    return AnalysisReport(
        program=program,
        counts=list(M.counts()),
        initial=initial,
        final=final,
        final_allowed=final_allowed,
        deadlocks=ordered(dead),
        unsafe=ordered(unsafe),
        unreachable=ordered(unreachable),
        dipath_count=n_paths,
        class_count=n_classes,
        classes=classes,
        timing=stamps if timing else None,
    )
