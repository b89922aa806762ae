"""Temporal deformation of 1-dimensional complexes.

Subdividing an arc into a chain of shorter arcs changes the 0-skeleton but
not the underlying directed space.  Two 1-complexes are T-equivalent here
iff they have isomorphic normal forms, where the normal form contracts
every unmarked pass-through node (exactly one arc in, exactly one arc out,
not carrying a loop).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import MultiDiGraphMatcher

from .precubical import SCHEMA, PrecubicalSet

__all__ = [
    "INITIAL",
    "FINAL",
    "MAX_EQUIV_NODES",
    "DirectedMultigraph",
    "GraphError",
    "SizeLimitError",
    "subdivide",
    "normalize",
    "t_equivalent",
    "from_precubical",
]

INITIAL = "initial"
FINAL = "final"
MAX_EQUIV_NODES = 50


class GraphError(ValueError):
    pass


class SizeLimitError(GraphError):
    pass


@dataclass(frozen=True)
class DirectedMultigraph:
    """Finite directed multigraph with named arcs and initial/final marks.

    ``nodes`` maps node name to its set of marks; ``arcs`` maps arc name to
    ``(source, target)``.  A node marked initial must have no incoming arc and
    a node marked final no outgoing arc.
    """

    nodes: Mapping[str, frozenset[str]]
    arcs: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        nodes = {str(k): frozenset(v) for k, v in self.nodes.items()}
        arcs = {str(k): (str(s), str(t)) for k, (s, t) in self.arcs.items()}
        for name, marks in nodes.items():
            unknown = marks - {INITIAL, FINAL}
            if unknown:
                raise GraphError(f"node {name!r} has unknown marks {sorted(unknown)}")
        for a, (s, t) in arcs.items():
            if s not in nodes or t not in nodes:
                raise GraphError(f"arc {a!r} has an endpoint outside the node set")
            if INITIAL in nodes[t]:
                raise GraphError(f"initial node {t!r} has incoming arc {a!r}")
            if FINAL in nodes[s]:
                raise GraphError(f"final node {s!r} has outgoing arc {a!r}")
        object.__setattr__(self, "nodes", MappingProxyType(nodes))
        object.__setattr__(self, "arcs", MappingProxyType(arcs))

    @classmethod
    def build(
        cls,
        arcs: Iterable[tuple[str, str, str]],
        nodes: Iterable[str] = (),
        initial: Iterable[str] = (),
        final: Iterable[str] = (),
    ) -> "DirectedMultigraph":
        """Convenience constructor from ``(name, source, target)`` triples."""
        arcs = list(arcs)
        names = list(nodes) + [v for _, s, t in arcs for v in (s, t)]
        initial, final = set(initial), set(final)
        marks = {}
        for v in names:
            marks.setdefault(v, frozenset(
                ({INITIAL} if v in initial else set()) | ({FINAL} if v in final else set())
            ))
        return cls(marks, {a: (s, t) for a, s, t in arcs})

    def in_arcs(self, v: str) -> list[str]:
        return [a for a, (_, t) in self.arcs.items() if t == v]

    def out_arcs(self, v: str) -> list[str]:
        return [a for a, (s, _) in self.arcs.items() if s == v]

    @property
    def initial(self) -> frozenset[str]:
        return frozenset(v for v, m in self.nodes.items() if INITIAL in m)

    @property
    def final(self) -> frozenset[str]:
        return frozenset(v for v, m in self.nodes.items() if FINAL in m)

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        for v, marks in self.nodes.items():
            g.add_node(v, marks=marks)
        for a, (s, t) in self.arcs.items():
            g.add_edge(s, t, key=a)
        return g

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "graph",
            "nodes": [{"id": v, "marks": sorted(m)} for v, m in self.nodes.items()],
            "arcs": [{"id": a, "source": s, "target": t} for a, (s, t) in self.arcs.items()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "DirectedMultigraph":
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise GraphError(f"unsupported schema {doc.get('schema')!r}")
        try:
            nodes = {n["id"]: frozenset(n.get("marks", ())) for n in doc["nodes"]}
            arcs = {a["id"]: (a["source"], a["target"]) for a in doc.get("arcs", [])}
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc!r}") from exc
        return cls(nodes, arcs)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _fresh(base: str, taken) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}~{k}" in taken:
        k += 1
    return f"{base}~{k}"


def subdivide(g: DirectedMultigraph, arc: str, k: int) -> DirectedMultigraph:
    """Replace ``arc`` by a chain of ``k`` arcs through ``k - 1`` new nodes.

    New arcs are named ``<arc>.1 .. <arc>.k`` and new nodes ``<arc>@1 ..``
    (suffixed further if a name is taken).
    """
    if arc not in g.arcs:
        raise GraphError(f"unknown arc {arc!r}")
    if k < 2:
        raise GraphError("subdivision needs at least 2 parts")
    s, t = g.arcs[arc]
    nodes = dict(g.nodes)
    arcs = {a: st for a, st in g.arcs.items() if a != arc}
    chain = [s]
    for m in range(1, k):
        v = _fresh(f"{arc}@{m}", nodes)
        nodes[v] = frozenset()
        chain.append(v)
    chain.append(t)
    for m in range(k):
        a = _fresh(f"{arc}.{m + 1}", arcs.keys() | {arc})
        arcs[a] = (chain[m], chain[m + 1])
    return DirectedMultigraph(nodes, arcs)


def _contractible(g_nodes, ins, outs, v) -> bool:
    return (
        not g_nodes[v]
        and len(ins[v]) == 1
        and len(outs[v]) == 1
        and ins[v][0] != outs[v][0]  # a self-loop is both; its base stays
    )


def normalize(g: DirectedMultigraph) -> DirectedMultigraph:
    """Contract unmarked pass-through nodes until none is left.

    Merging ``a: x -> v`` and ``b: v -> y`` yields one arc ``x -> y`` named
    ``a*b``.  Nodes carrying a loop are never removed, so a directed cycle
    of unmarked nodes ends as a single node with a loop.
    """
    nodes = dict(g.nodes)
    arcs = dict(g.arcs)
    ins: dict[str, list[str]] = {v: [] for v in nodes}
    outs: dict[str, list[str]] = {v: [] for v in nodes}
    for a, (s, t) in arcs.items():
        outs[s].append(a)
        ins[t].append(a)

    pending = [v for v in nodes if _contractible(nodes, ins, outs, v)]
    while pending:
        v = pending.pop()
        if v not in nodes or not _contractible(nodes, ins, outs, v):
            continue
        a, b = ins[v][0], outs[v][0]
        x, y = arcs[a][0], arcs[b][1]
        merged = _fresh(f"{a}*{b}", arcs)
        del arcs[a], arcs[b], nodes[v], ins[v], outs[v]
        outs[x].remove(a)
        ins[y].remove(b)
        arcs[merged] = (x, y)
        outs[x].append(merged)
        ins[y].append(merged)
        pending.extend(w for w in (x, y) if w != v)
    return DirectedMultigraph(nodes, arcs)


def t_equivalent(g1: DirectedMultigraph, g2: DirectedMultigraph, limit: int = MAX_EQUIV_NODES) -> bool:
    """Isomorphism of marked normal forms (arc names are ignored)."""
    n1, n2 = normalize(g1), normalize(g2)
    for n in (n1, n2):
        if len(n.nodes) > limit:
            raise SizeLimitError(f"normal form has {len(n.nodes)} nodes, limit is {limit}")
    if len(n1.nodes) != len(n2.nodes) or len(n1.arcs) != len(n2.arcs):
        return False
    if sorted(map(sorted, n1.nodes.values())) != sorted(map(sorted, n2.nodes.values())):
        return False
    G1, G2 = n1.to_networkx(), n2.to_networkx()
    deg = lambda G: sorted((G.in_degree(v), G.out_degree(v)) for v in G)
    if deg(G1) != deg(G2):
        return False
    matcher = MultiDiGraphMatcher(G1, G2, node_match=lambda a, b: a["marks"] == b["marks"])
    return matcher.is_isomorphic()


def from_precubical(M: PrecubicalSet, initial: Iterable[str] = (), final: Iterable[str] = ()) -> DirectedMultigraph:
    """1-skeleton of ``M`` as a marked directed multigraph."""
    arcs = [(a, M.face(a, 1, 0), M.face(a, 1, 1)) for a in M.arcs]
    return DirectedMultigraph.build(arcs, nodes=M.vertices, initial=initial, final=final)
