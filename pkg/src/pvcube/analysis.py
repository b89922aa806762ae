"""Directed reachability and schedule analysis on a precubical set.

States are the vertices of ``M``, moves are its arcs (source ``d[0,1]``,
target ``d[1,1]``).  Two dipaths are dihomotopic when one can be turned into
the other by a chain of elementary flips across filled squares: for a
square ``s`` the two boundary routes ::

    d[0,2](s) . d[1,1](s)      and      d[0,1](s) . d[1,2](s)

are interchangeable inside any dipath.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .precubical import PrecubicalSet
from .semantics import ResourceLimitError

__all__ = [
    "DEFAULT_PATH_CAP",
    "Dipath",
    "ScheduleClasses",
    "UnknownVertexError",
    "CapExceededError",
    "UnionFind",
    "reachable",
    "coreachable",
    "unreachable_states",
    "unsafe_states",
    "deadlocks",
    "count_dipaths",
    "enumerate_dipaths",
    "flip_table",
    "dihomotopy_classes",
]

DEFAULT_PATH_CAP = 10**6


class UnknownVertexError(KeyError):
    pass


class CapExceededError(ResourceLimitError):
    pass


@dataclass(frozen=True)
class Dipath:
    """A directed edge path, stored both as vertices and as arcs."""

    vertices: tuple[str, ...]
    arcs: tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.arcs) + 1:
            raise ValueError("a dipath has one more vertex than arcs")

    def __len__(self):
        return len(self.arcs)

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]


@dataclass(frozen=True)
class ScheduleClasses:
    """Partition of the enumerated dipaths into dihomotopy classes.

    Each class is sorted lexicographically; its first member is the
    representative.  Classes are ordered by representative.
    """

    classes: tuple[tuple[Dipath, ...], ...]

    def __len__(self):
        return len(self.classes)

    def __iter__(self) -> Iterator[tuple[Dipath, ...]]:
        return iter(self.classes)

    @property
    def representatives(self) -> tuple[Dipath, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def n_paths(self) -> int:
        return sum(len(c) for c in self.classes)


class UnionFind:
    """Disjoint sets over ``range(n)`` with path halving and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.count -= 1
        return True


class _Moves:
    """Sorted forward and backward stars of the 1-skeleton."""

    def __init__(self, M: PrecubicalSet):
        self.order = {v: k for k, v in enumerate(M.vertices)}
        arc_order = {a: k for k, a in enumerate(M.arcs)}
        self.succ: dict[str, list[tuple[str, str]]] = {v: [] for v in M.vertices}
        self.pred: dict[str, list[tuple[str, str]]] = {v: [] for v in M.vertices}
        for a in M.arcs:
            s, t = M.face(a, 1, 0), M.face(a, 1, 1)
            self.succ[s].append((a, t))
            self.pred[t].append((a, s))
        key = lambda at: (self.order[at[1]], arc_order[at[0]])
        for stars in (self.succ, self.pred):
            for lst in stars.values():
                lst.sort(key=key)

    def check(self, *vertices: str) -> None:
        for v in vertices:
            if v not in self.order:
                raise UnknownVertexError(v)


def _closure(stars, start: str) -> frozenset[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for _, w in stars[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def reachable(M: PrecubicalSet, start: str) -> frozenset[str]:
    """Vertices forward-reachable from ``start`` (including itself)."""
    mv = _Moves(M)
    mv.check(start)
    return _closure(mv.succ, start)


def coreachable(M: PrecubicalSet, target: str) -> frozenset[str]:
    """Vertices from which ``target`` is forward-reachable."""
    mv = _Moves(M)
    mv.check(target)
    return _closure(mv.pred, target)


def unreachable_states(M: PrecubicalSet, init: str) -> frozenset[str]:
    return frozenset(M.vertices) - reachable(M, init)


def unsafe_states(M: PrecubicalSet, final: str) -> frozenset[str]:
    return frozenset(M.vertices) - coreachable(M, final)


def deadlocks(M: PrecubicalSet, final: str) -> frozenset[str]:
    """Non-final vertices without any outgoing arc."""
    mv = _Moves(M)
    mv.check(final)
    return frozenset(v for v in M.vertices if v != final and not mv.succ[v])


def _relevant(mv: _Moves, init: str, final: str) -> frozenset[str]:
    return _closure(mv.succ, init) & _closure(mv.pred, final)


def _count(mv: _Moves, init: str, final: str) -> int:
    live = _relevant(mv, init, final)
    if init not in live:
        return 0
    # Kahn order on the live subgraph; a leftover vertex means a cycle
    indeg = {v: 0 for v in live}
    for v in live:
        for _, w in mv.succ[v]:
            if w in live:
                indeg[w] += 1
    ready = deque(v for v in live if indeg[v] == 0)
    topo = []
    while ready:
        v = ready.popleft()
        topo.append(v)
        for _, w in mv.succ[v]:
            if w in live:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    if len(topo) != len(live):
        raise CapExceededError(f"infinitely many dipaths from {init} to {final} (directed cycle)")
    ways = {v: 0 for v in live}
    ways[init] = 1
    for v in topo:
        for _, w in mv.succ[v]:
            if w in live:
                ways[w] += ways[v]
    return ways[final]


def count_dipaths(M: PrecubicalSet, init: str, final: str) -> int:
    """Number of dipaths from ``init`` to ``final``, by dynamic programming."""
    mv = _Moves(M)
    mv.check(init, final)
    return _count(mv, init, final)


def _enumerate(mv: _Moves, init: str, final: str, cap: int) -> list[Dipath]:
    total = _count(mv, init, final)
    if total > cap:
        raise CapExceededError(f"{total} dipaths exceed the cap of {cap}")
    if total == 0:
        return []
    live = _relevant(mv, init, final)
    out: list[Dipath] = []
    verts = [init]
    arcs: list[str] = []

    # depth-first in sorted successor order yields lexicographic output
    def walk(v: str) -> None:
        if v == final:
            out.append(Dipath(tuple(verts), tuple(arcs)))
            return
        for a, w in mv.succ[v]:
            if w in live:
                verts.append(w)
                arcs.append(a)
                walk(w)
                verts.pop()
                arcs.pop()

    walk(init)
    return out


def enumerate_dipaths(
    M: PrecubicalSet, init: str, final: str, cap: int = DEFAULT_PATH_CAP
) -> list[Dipath]:
    """All dipaths ``init -> final``, lexicographically ordered by vertex sequence.

    Raises :class:`CapExceededError` if there are more than ``cap`` of them
    (or infinitely many).
    """
    mv = _Moves(M)
    mv.check(init, final)
    return _enumerate(mv, init, final, cap)


def flip_table(M: PrecubicalSet) -> dict[tuple[str, str], list[tuple[str, str]]]:
    """Map each two-arc boundary route of a square to the opposite route."""
    table: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for s in M.cubes(2):
        lower_first = (M.face(s, 2, 0), M.face(s, 1, 1))
        upper_first = (M.face(s, 1, 0), M.face(s, 2, 1))
        table.setdefault(lower_first, []).append(upper_first)
        table.setdefault(upper_first, []).append(lower_first)
    return table


def dihomotopy_classes(
    M: PrecubicalSet, init: str, final: str, cap: int = DEFAULT_PATH_CAP
) -> ScheduleClasses:
    """Partition the dipaths ``init -> final`` by elementary square flips."""
    mv = _Moves(M)
    mv.check(init, final)
    paths = _enumerate(mv, init, final, cap)
    index = {p.arcs: k for k, p in enumerate(paths)}
    flips = flip_table(M)
    uf = UnionFind(len(paths))
    for k, p in enumerate(paths):
        arcs = p.arcs
        for pos in range(len(arcs) - 1):
            for alt in flips.get((arcs[pos], arcs[pos + 1]), ()):
                j = index.get(arcs[:pos] + alt + arcs[pos + 2:])
                if j is not None:
                    uf.union(k, j)
    groups: dict[int, list[Dipath]] = {}
    for k, p in enumerate(paths):
        groups.setdefault(uf.find(k), []).append(p)
    # groups are created in order of their lexicographically least member
    return ScheduleClasses(tuple(tuple(g) for g in groups.values()))
