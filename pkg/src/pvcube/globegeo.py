"""Globes, the cube-to-globe homeomorphism and the induced cube order.

``Glob(X)`` is ``X x [0, 1]`` with all of ``X x {0}`` collapsed to the
bottom point ``IOTA`` and all of ``X x {1}`` to the top point ``SIGMA``.
Its order: ``IOTA`` is below everything, ``SIGMA`` above everything, and two
interior points are comparable only when they share a base point.

The standard cube maps homeomorphically onto ``Glob(D^{n-1})``: the time
coordinate is the mean of the cube coordinates and the base point records
the direction and relative distance from the diagonal inside the slice
``C_s = {t : sum(t) = s}``.

Here ``X`` is always a disk ``D^k`` and points of it are numpy vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "BASE_TOL",
    "DIAGONAL_TOL",
    "ROUND_TRIP_TOL",
    "GlobePoint",
    "IOTA",
    "SIGMA",
    "interior",
    "GlobeGeometryError",
    "globe_leq",
    "h_map",
    "m_value",
    "cube_to_globe",
    "globe_to_cube",
    "leq_gl",
    "underlying_point",
    "is_dipath",
]

BASE_TOL = 1e-9
ROUND_TRIP_TOL = 1e-9
DIAGONAL_TOL = 1e-12


class GlobeGeometryError(ValueError):
    pass


@dataclass(frozen=True)
class GlobePoint:
    tag: str  # "iota", "sigma" or "interior"
    base: tuple[float, ...] | None = None
    time: float | None = None

    def __post_init__(self):
        if self.tag in ("iota", "sigma"):
            if self.base is not None or self.time is not None:
                raise GlobeGeometryError(f"{self.tag} carries no base point or time")
        elif self.tag == "interior":
            if self.base is None or self.time is None:
                raise GlobeGeometryError("interior points need a base and a time")
            if not 0.0 < self.time < 1.0:
                raise GlobeGeometryError(f"interior time must lie in (0, 1), got {self.time}")
            object.__setattr__(self, "base", tuple(float(b) for b in self.base))
            object.__setattr__(self, "time", float(self.time))
        else:
            raise GlobeGeometryError(f"unknown tag {self.tag!r}")

    @property
    def is_interior(self) -> bool:
        return self.tag == "interior"

    def to_json(self):
        if self.tag != "interior":
            return self.tag
        return {"base": list(self.base), "time": self.time}

    @classmethod
    def from_json(cls, obj) -> "GlobePoint":
        if obj in ("iota", "sigma"):
            return cls(obj)
        return cls("interior", tuple(obj["base"]), obj["time"])


IOTA = GlobePoint("iota")
SIGMA = GlobePoint("sigma")


def interior(base: Sequence[float], time: float) -> GlobePoint:
    return GlobePoint("interior", tuple(base), time)


def _same_base(x, y, tol: float = BASE_TOL) -> bool:
    return len(x) == len(y) and all(abs(a - b) <= tol for a, b in zip(x, y))


def globe_leq(p: GlobePoint, q: GlobePoint, tol: float = BASE_TOL) -> bool:
    """The closed partial order of ``Glob(X)``; bases compared per coordinate within ``tol``."""
    if p.tag == "iota" or q.tag == "sigma":
        return True
    if p.tag == "sigma" or q.tag == "iota":
        return False
    return _same_base(p.base, q.base, tol) and p.time <= q.time


def _as_cube_point(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if t.ndim != 1:
        raise GlobeGeometryError("a cube point is a 1-d coordinate vector")
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise GlobeGeometryError(f"{t.tolist()} is outside the unit cube")
    return t


def h_map(t) -> np.ndarray:
    """Linear projection ``R^n -> R^{n-1}`` whose kernel is the diagonal."""
    t = np.asarray(t, dtype=float)
    if t.size < 2:
        raise GlobeGeometryError("h is defined for n >= 2")
    return t[1:] - t.sum() / t.size


def _stretch(center: float, d: np.ndarray) -> float:
    # largest m >= 0 keeping center + m * d inside [0, 1] coordinatewise
    with np.errstate(divide="ignore"):
        up = np.where(d > 0, (1.0 - center) / d, np.inf)
        down = np.where(d < 0, center / -d, np.inf)
    return float(min(up.min(), down.min()))


def m_value(t) -> float:
    """Ratio of the diagonal-to-boundary segment to the diagonal-to-``t`` segment.

    Undefined on the diagonal, where :class:`GlobeGeometryError` is raised.
    """
    t = _as_cube_point(t)
    if np.linalg.norm(h_map(t)) < DIAGONAL_TOL:
        raise GlobeGeometryError("m is undefined on the diagonal")
    c = t.sum() / t.size
    return _stretch(c, t - c)


def cube_to_globe(t) -> GlobePoint:
    """Image of a cube point under the homeomorphism onto ``Glob(D^{n-1})``."""
    t = _as_cube_point(t)
    n = t.size
    if n < 2:
        raise GlobeGeometryError("the cube-to-globe map needs n >= 2")
    if np.all(t == 0.0):
        return IOTA
    if np.all(t == 1.0):
        return SIGMA
    time = float(t.sum() / n)
    h = h_map(t)
    norm = float(np.linalg.norm(h))
    if norm < DIAGONAL_TOL:
        return interior(np.zeros(n - 1), time)
    c = time
    m = _stretch(c, t - c)
    return interior(h / (m * norm), time)


def globe_to_cube(p: GlobePoint, n: int) -> np.ndarray:
    """Inverse of :func:`cube_to_globe` for dimension ``n``.

    The base point's direction fixes a ray in the slice through the diagonal
    point ``(time, ..., time)``; its norm is the fraction of the way to the
    slice boundary along that ray.
    """
    if n < 2:
        raise GlobeGeometryError("the cube-to-globe map needs n >= 2")
    if p.tag == "iota":
        return np.zeros(n)
    if p.tag == "sigma":
        return np.ones(n)
    b = np.asarray(p.base, dtype=float)
    if b.size != n - 1:
        raise GlobeGeometryError(f"base point has dimension {b.size}, expected {n - 1}")
    r = float(np.linalg.norm(b))
    if r > 1.0 + BASE_TOL:
        raise GlobeGeometryError(f"base point of norm {r} is outside the disk")
    c = p.time
    if r < DIAGONAL_TOL:
        return np.full(n, c)
    # lift the direction to the sum-zero hyperplane, where h acts as (d_2, ..., d_n)
    d = np.concatenate(([-b.sum()], b))
    t = c + min(r, 1.0) * _stretch(c, d) * d
    t = np.clip(t, 0.0, 1.0)
    back = cube_to_globe(t)
    if not back.is_interior or abs(back.time - c) > ROUND_TRIP_TOL or not _same_base(
        back.base, p.base, ROUND_TRIP_TOL
    ):
        raise GlobeGeometryError("inverse did not reproduce the globe point within tolerance")
    return t


def leq_gl(x, y, tol: float = BASE_TOL) -> bool:
    """Order on the cube pulled back from the globe."""
    x, y = _as_cube_point(x), _as_cube_point(y)
    if x.size != y.size:
        raise GlobeGeometryError("points live in cubes of different dimension")
    return globe_leq(cube_to_globe(x), cube_to_globe(y), tol)


def is_dipath(samples: Sequence[GlobePoint], tol: float = BASE_TOL) -> bool:
    """Consecutive samples are non-decreasing for the globe order."""
    return all(globe_leq(p, q, tol) for p, q in zip(samples, samples[1:]))


def underlying_point(samples: Sequence[GlobePoint], tol: float = BASE_TOL) -> tuple[float, ...]:
    """Base point shared by the interior part of a sampled dipath ``IOTA -> SIGMA``.

    Every non-constant dipath of a globe runs inside a single slice
    ``{x} x ]0, 1[``; this returns ``x``.
    """
    samples = list(samples)
    if not samples or samples[0].tag != "iota" or samples[-1].tag != "sigma":
        raise GlobeGeometryError("a dipath of the globe runs from iota to sigma")
    inner = [s for s in samples if s.is_interior]
    if not inner:
        raise GlobeGeometryError("path has no interior sample")
    base = inner[0].base
    for s in inner[1:]:
        if not _same_base(base, s.base, tol):
            raise GlobeGeometryError(f"inconsistent base points {base} and {s.base}")
    if not is_dipath(samples, tol):
        raise GlobeGeometryError("samples are not non-decreasing")
    return base
