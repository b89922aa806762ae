"""Finite precubical sets (higher dimensional automata).

A precubical set is a graded family of cubes ``M_n`` with face maps
``d[alpha, i]: M_n -> M_{n-1}`` for ``alpha in {0, 1}`` and ``1 <= i <= n``,
subject to the cube axiom::

    d[a, i] d[b, j] == d[b, j-1] d[a, i]      for 1 <= i < j <= n

Face indices are 1-based throughout this package.  Cube identifiers are
opaque strings and the dimension of each cube is stored explicitly.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx

__all__ = [
    "SCHEMA",
    "PrecubicalSet",
    "PrecubicalMorphism",
    "Violation",
    "InvalidPrecubicalSet",
    "validate",
    "truncate",
    "standard_cube",
    "check_morphism",
    "skeleton_graph",
    "to_json",
    "from_json",
    "dumps",
    "loads",
]

SCHEMA = "hda/1"

FaceKey = tuple[str, int, int]  # (cube, i, alpha)


class InvalidPrecubicalSet(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"invalid precubical set: {head}{more}")


@dataclass(frozen=True)
class Violation:
    """One failed check.  ``kind`` is one of ``missing-face``,
    ``dangling-face``, ``wrong-dimension``, ``bad-index``, ``cube-axiom``,
    ``unmapped``, ``dimension-mismatch`` or ``not-commuting``."""

    kind: str
    cube: str
    i: int | None = None
    j: int | None = None
    alpha: int | None = None
    beta: int | None = None
    detail: str = ""

    def __str__(self):
        where = ", ".join(
            f"{k}={v}" for k, v in (("i", self.i), ("j", self.j), ("alpha", self.alpha), ("beta", self.beta))
            if v is not None
        )
        where = f" [{where}]" if where else ""
        detail = f": {self.detail}" if self.detail else ""
        return f"{self.kind} at {self.cube}{where}{detail}"


class PrecubicalSet:
    """Immutable finite precubical set.

    ``cells`` is an iterable of ``(id, dim)`` pairs; their order is kept and
    used for deterministic output.  ``faces`` maps ``(id, i, alpha)`` to the
    id of the face.  No validation happens here, see :func:`validate`.
    """

    __slots__ = ("_dims", "_by_dim", "_faces")

    def __init__(self, cells: Iterable[tuple[str, int]], faces: Mapping[FaceKey, str]):
        dims: dict[str, int] = {}
        for cid, dim in cells:
            if cid in dims:
                raise ValueError(f"duplicate cube id {cid!r}")
            if dim < 0:
                raise ValueError(f"negative dimension for {cid!r}")
            dims[cid] = int(dim)
        by_dim: dict[int, list[str]] = {}
        for cid, dim in dims.items():
            by_dim.setdefault(dim, []).append(cid)
        self._dims = MappingProxyType(dims)
        self._by_dim = {d: tuple(ids) for d, ids in sorted(by_dim.items())}
        self._faces = MappingProxyType(dict(faces))

    @property
    def dims(self) -> Mapping[str, int]:
        return self._dims

    @property
    def faces(self) -> Mapping[FaceKey, str]:
        return self._faces

    @property
    def dim(self) -> int:
        """Largest dimension with a nonempty cube set (-1 when empty)."""
        return max(self._by_dim, default=-1)

    def cubes(self, n: int) -> tuple[str, ...]:
        return self._by_dim.get(n, ())

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.cubes(0)

    @property
    def arcs(self) -> tuple[str, ...]:
        return self.cubes(1)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cubes(n)) for n in range(self.dim + 1))

    def face(self, cube: str, i: int, alpha: int) -> str:
        return self._faces[(cube, i, alpha)]

    def __contains__(self, cube) -> bool:
        return cube in self._dims

    def __len__(self) -> int:
        return len(self._dims)

    def __iter__(self):
        return iter(self._dims)

    def __eq__(self, other):
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return dict(self._dims) == dict(other._dims) and dict(self._faces) == dict(other._faces)

    def __hash__(self):
        return hash((frozenset(self._dims.items()), frozenset(self._faces.items())))

    def __repr__(self):
        return f"PrecubicalSet(counts={self.counts()})"


@dataclass(frozen=True)
class PrecubicalMorphism:
    source: PrecubicalSet
    target: PrecubicalSet
    maps: Mapping[str, str]


def _axiom_faces(M: PrecubicalSet, x: str, i: int, j: int, a: int, b: int):
    """Both sides of the cube-axiom instance, or None where a face is missing."""
    f = M.faces
    lhs_mid = f.get((x, j, b))
    rhs_mid = f.get((x, i, a))
    lhs = f.get((lhs_mid, i, a)) if lhs_mid is not None else None
    rhs = f.get((rhs_mid, j - 1, b)) if rhs_mid is not None else None
    return lhs, rhs


def validate(M: PrecubicalSet) -> list[Violation]:
    """Check face references and the cube axiom exhaustively.

    Returns an empty list iff ``M`` is a precubical set.  Cube-axiom failures
    are reported once per ``(x, i, j, alpha, beta)`` instance.
    """
    out: list[Violation] = []
    dims = M.dims
    for (cube, i, alpha), target in M.faces.items():
        if cube not in dims:
            out.append(Violation("dangling-face", cube, i=i, alpha=alpha, detail="face of unknown cube"))
            continue
        n = dims[cube]
        if alpha not in (0, 1) or not 1 <= i <= n:
            out.append(Violation("bad-index", cube, i=i, alpha=alpha, detail=f"cube has dimension {n}"))
            continue
        if target not in dims:
            out.append(Violation("dangling-face", cube, i=i, alpha=alpha, detail=f"unknown target {target!r}"))
        elif dims[target] != n - 1:
            out.append(
                Violation("wrong-dimension", cube, i=i, alpha=alpha,
                          detail=f"{target!r} has dimension {dims[target]}, expected {n - 1}")
            )
    for cube, n in dims.items():
        for i in range(1, n + 1):
            for alpha in (0, 1):
                if (cube, i, alpha) not in M.faces:
                    out.append(Violation("missing-face", cube, i=i, alpha=alpha))
    if out:
        # the axiom is only meaningful on well-formed face data
        return out

    for n in range(2, M.dim + 1):
        for x in M.cubes(n):
            for j in range(2, n + 1):
                for i in range(1, j):
                    for a, b in itertools.product((0, 1), repeat=2):
                        lhs, rhs = _axiom_faces(M, x, i, j, a, b)
                        if lhs != rhs:
                            out.append(
                                Violation("cube-axiom", x, i=i, j=j, alpha=a, beta=b,
                                          detail=f"{lhs!r} != {rhs!r}")
                            )
    return out


def truncate(M: PrecubicalSet, n: int) -> PrecubicalSet:
    """Keep cubes of dimension <= n and the faces between them."""
    cells = [(c, d) for c, d in M.dims.items() if d <= n]
    faces = {k: v for k, v in M.faces.items() if M.dims.get(k[0], n + 1) <= n}
    return PrecubicalSet(cells, faces)


def _cube_word_faces(word: str, i: int, alpha: int) -> str:
    # replace the i-th free coordinate by alpha
    k = -1
    for _ in range(i):
        k = word.index("*", k + 1)
    return word[:k] + str(alpha) + word[k + 1:]


def standard_cube(n: int) -> PrecubicalSet:
    """The representable precubical set of the standard n-cube.

    A p-cell is a word over ``{0, 1, *}`` of length ``n`` with ``p`` stars; the
    face ``d[alpha, i]`` fixes the i-th star to ``alpha``.  There are
    ``comb(n, p) * 2**(n - p)`` cells of dimension p.
    """
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    cells = []
    for p in range(n + 1):
        layer = sorted(
            "".join(w) for w in itertools.product("01*", repeat=n) if w.count("*") == p
        )
        assert len(layer) == comb(n, p) * 2 ** (n - p)
        cells.extend((w, p) for w in layer)
    faces = {
        (w, i, alpha): _cube_word_faces(w, i, alpha)
        for w, p in cells
        for i in range(1, p + 1)
        for alpha in (0, 1)
    }
    return PrecubicalSet(cells, faces)


def check_morphism(f: PrecubicalMorphism) -> list[Violation]:
    """Empty iff ``f`` is total, dimension-preserving and commutes with faces."""
    out: list[Violation] = []
    src, tgt, maps = f.source, f.target, f.maps
    for x, d in src.dims.items():
        if x not in maps:
            out.append(Violation("unmapped", x))
        elif maps[x] not in tgt.dims:
            out.append(Violation("unmapped", x, detail=f"image {maps[x]!r} not in target"))
        elif tgt.dims[maps[x]] != d:
            out.append(Violation("dimension-mismatch", x, detail=f"image {maps[x]!r} has dimension {tgt.dims[maps[x]]}"))
    if out:
        return out
    for (x, i, alpha), y in src.faces.items():
        lhs = maps.get(y)
        rhs = tgt.faces.get((maps[x], i, alpha))
        if lhs != rhs:
            out.append(Violation("not-commuting", x, i=i, alpha=alpha, detail=f"f(face)={lhs!r}, face(f)={rhs!r}"))
    return out


def skeleton_graph(M: PrecubicalSet) -> nx.MultiDiGraph:
    """Directed multigraph on ``M_0`` with one edge per arc, keyed by arc id.

    The source of an arc is its ``d[0, 1]`` face and the target its
    ``d[1, 1]`` face.
    """
    g = nx.MultiDiGraph()
    g.add_nodes_from(M.vertices)
    for arc in M.arcs:
        g.add_edge(M.face(arc, 1, 0), M.face(arc, 1, 1), key=arc)
    return g


def to_json(M: PrecubicalSet, **extra) -> dict:
    """Serialise to the ``hda/1`` schema; ``extra`` keys are added verbatim."""
    order = {c: k for k, c in enumerate(M.dims)}
    doc = {
        "schema": SCHEMA,
        "cells": [{"id": c, "dim": d} for c, d in M.dims.items()],
        "faces": [
            {"of": c, "i": i, "alpha": a, "to": t}
            for (c, i, a), t in sorted(
                M.faces.items(), key=lambda kv: (order.get(kv[0][0], -1), kv[0][1], kv[0][2])
            )
        ],
    }
    doc.update({k: v for k, v in extra.items() if v is not None})
    return doc


def from_json(doc: Mapping, force: bool = False) -> PrecubicalSet:
    """Load an ``hda/1`` document, refusing invalid sets unless ``force``."""
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ValueError(f"unsupported schema {schema!r}")
    try:
        cells = [(str(c["id"]), int(c["dim"])) for c in doc["cells"]]
        faces = {
            (str(f["of"]), int(f["i"]), int(f["alpha"])): str(f["to"]) for f in doc.get("faces", [])
        }
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed precubical JSON: {exc!r}") from exc
    M = PrecubicalSet(cells, faces)
    if not force:
        report = validate(M)
        if report:
            raise InvalidPrecubicalSet(report)
    return M


def dumps(M: PrecubicalSet, **extra) -> str:
    return json.dumps(to_json(M, **extra), indent=1)


def loads(text: str, force: bool = False) -> PrecubicalSet:
    return from_json(json.loads(text), force=force)
