"""Grid semantics of PV programs as precubical sets.

Action ``k`` of a process completes at local time ``k``.  By default every
process also has a terminal tick after its last action, so process ``i``
lives on ``[0, L_i + 1]`` and all actions happen strictly inside its time
line; ``terminal_tick=False`` gives the compact grid ``[0, L_i]``.

The full grid complex has one cell per choice, in every coordinate, of
either a point ``v`` or a unit interval ``[v, v+1]``.
A cell is kept iff no resource is over-consumed at its interior
representative (midpoint of the spanned intervals).  Holding intervals are
open: a lock completed at ``p`` and released at ``v`` holds on ``p < t < v``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Sequence

from .precubical import PrecubicalSet
from .pvlang import LOCK, PvProgram

__all__ = [
    "DEFAULT_CELL_CAP",
    "GridCell",
    "HoldInterval",
    "ResourceLimitError",
    "hold_intervals",
    "hold_count",
    "cell_allowed",
    "grid_size",
    "grid_lengths",
    "pv_to_precubical",
    "cell_id",
    "parse_cell_id",
    "vertex_id",
    "parse_vertex_id",
    "initial_vertex",
    "final_vertex",
]

DEFAULT_CELL_CAP = 10**7


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds a configured size cap."""


@dataclass(frozen=True, order=True)
class GridCell:
    lower: tuple[int, ...]
    spanned: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(int(v) for v in self.lower))
        object.__setattr__(self, "spanned", frozenset(self.spanned))
        if any(not 1 <= i <= len(self.lower) for i in self.spanned):
            raise ValueError(f"spanned directions {sorted(self.spanned)} out of range")

    @property
    def dim(self) -> int:
        return len(self.spanned)

    @property
    def directions(self) -> tuple[int, ...]:
        return tuple(sorted(self.spanned))

    def midpoint(self) -> tuple[float, ...]:
        return tuple(v + 0.5 if i in self.spanned else float(v) for i, v in enumerate(self.lower, 1))

    def upper(self) -> tuple[int, ...]:
        return tuple(v + 1 if i in self.spanned else v for i, v in enumerate(self.lower, 1))

    def face(self, i: int, alpha: int) -> "GridCell":
        """Drop the i-th spanned direction (1-based), at its lower (0) or upper (1) end."""
        d = self.directions[i - 1]
        lower = list(self.lower)
        lower[d - 1] += alpha
        return GridCell(tuple(lower), self.spanned - {d})

    def within(self, lengths: Sequence[int]) -> bool:
        if len(lengths) != len(self.lower):
            return False
        return all(
            0 <= v <= L and (i not in self.spanned or v < L)
            for i, (v, L) in enumerate(zip(self.lower, lengths), 1)
        )


@dataclass(frozen=True)
class HoldInterval:
    process: int
    resource: str
    p: int
    v: float  # math.inf for a lock never released

    def __post_init__(self):
        if self.p < 1 or not self.v > self.p:
            raise ValueError(f"bad hold interval ({self.p}, {self.v})")

    def holds_at(self, t: float) -> bool:
        return self.p < t < self.v


def hold_intervals(program: PvProgram) -> list[HoldInterval]:
    """Pair every lock with its release (last-in first-out per resource)."""
    out = []
    for i, proc in enumerate(program.processes, 1):
        open_locks: dict[str, list[int]] = {}
        for k, act in enumerate(proc, 1):
            if act.kind == LOCK:
                open_locks.setdefault(act.resource, []).append(k)
            else:
                out.append(HoldInterval(i, act.resource, open_locks[act.resource].pop(), k))
        for r, stack in open_locks.items():
            out.extend(HoldInterval(i, r, p, math.inf) for p in stack)
    out.sort(key=lambda h: (h.process, h.resource, h.p))
    return out


def _holding_table(program: PvProgram):
    table: dict[tuple[int, str], list[HoldInterval]] = {}
    for h in hold_intervals(program):
        table.setdefault((h.process, h.resource), []).append(h)
    return table


def grid_lengths(program: PvProgram, terminal_tick: bool = True) -> tuple[int, ...]:
    """Extent of the grid along each process axis."""
    return tuple(L + 1 if terminal_tick else L for L in program.lengths)


def hold_count(program: PvProgram, i: int, r: str, t: float) -> int:
    """Number of locks of ``r`` held by process ``i`` (1-based) at local time ``t``.

    ``t`` may range over ``[0, L_i + 1]``; unreleased locks stay held after
    the last action.
    """
    if not 1 <= i <= program.n_processes:
        raise IndexError(f"no process {i}")
    L = program.lengths[i - 1] + 1
    if not 0 <= t <= L:
        raise ValueError(f"local time {t} outside [0, {L}]")
    return sum(h.holds_at(t) for h in _holding_table(program).get((i, r), ()))


def _allowed_at(program: PvProgram, table, point: Sequence[float]) -> bool:
    for r, cap in program.resources.items():
        total = 0
        for i, t in enumerate(point, 1):
            for h in table.get((i, r), ()):
                if h.p < t < h.v:
                    total += 1
        if total > cap:
            return False
    return True


def cell_allowed(program: PvProgram, c: GridCell) -> bool:
    """True iff no resource exceeds its capacity at the cell's midpoint."""
    bounds = grid_lengths(program)
    if not c.within(bounds):
        raise ValueError(f"{c} is outside the grid {bounds}")
    return _allowed_at(program, _holding_table(program), c.midpoint())


def grid_size(lengths: Sequence[int]) -> int:
    """Number of cells (all dimensions) of the full grid complex."""
    return math.prod(2 * L + 1 for L in lengths)


def vertex_id(point: Sequence[int]) -> str:
    return "(" + ",".join(str(int(v)) for v in point) + ")"


def cell_id(c: GridCell) -> str:
    if not c.spanned:
        return vertex_id(c.lower)
    return vertex_id(c.lower) + "+{" + ",".join(map(str, c.directions)) + "}"


_CELL_RE = re.compile(r"\((-?\d+(?:,-?\d+)*)\)(?:\+\{(\d+(?:,\d+)*)\})?")


def parse_cell_id(name: str) -> GridCell:
    m = _CELL_RE.fullmatch(name)
    if not m:
        raise ValueError(f"not a grid cell id: {name!r}")
    lower = tuple(int(v) for v in m.group(1).split(","))
    spanned = frozenset(int(d) for d in m.group(2).split(",")) if m.group(2) else frozenset()
    return GridCell(lower, spanned)


def parse_vertex_id(name: str) -> tuple[int, ...]:
    c = parse_cell_id(name)
    if c.spanned:
        raise ValueError(f"{name!r} is not a vertex")
    return c.lower


def initial_vertex(program: PvProgram) -> str:
    return vertex_id((0,) * program.n_processes)


def final_vertex(program: PvProgram, terminal_tick: bool = True) -> str:
    return vertex_id(grid_lengths(program, terminal_tick))


def _coordinate_choices(L: int):
    # (lower value, spanned?) in lexicographic order of lower, points before intervals
    for v in range(L + 1):
        yield v, False
        if v < L:
            yield v, True


def pv_to_precubical(
    program: PvProgram, cap: int = DEFAULT_CELL_CAP, terminal_tick: bool = True
) -> PrecubicalSet:
    """Compile ``program`` to the precubical set of its allowed grid cells.

    Cells are named by :func:`cell_id` and listed lexicographically by lower
    corner, then by spanned set.  Raises :class:`ResourceLimitError` when the
    full grid has more than ``cap`` cells.
    """
    lengths = grid_lengths(program, terminal_tick)
    total = grid_size(lengths)
    if total > cap:
        raise ResourceLimitError(f"grid has {total} cells, cap is {cap}")
    table = _holding_table(program)

    kept: list[GridCell] = []
    for combo in itertools.product(*(_coordinate_choices(L) for L in lengths)):
        lower = tuple(v for v, _ in combo)
        spanned = frozenset(i for i, (_, s) in enumerate(combo, 1) if s)
        mid = tuple(v + 0.5 if s else float(v) for v, s in combo)
        if _allowed_at(program, table, mid):
            kept.append(GridCell(lower, spanned))
    kept.sort(key=lambda c: (c.lower, c.directions))

    faces = {}
    for c in kept:
        name = cell_id(c)
        for i in range(1, c.dim + 1):
            for alpha in (0, 1):
                faces[(name, i, alpha)] = cell_id(c.face(i, alpha))
    return PrecubicalSet(((cell_id(c), c.dim) for c in kept), faces)
