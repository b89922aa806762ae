"""Parser and pretty-printer for PV programs.

A PV program is a parallel composition of straight-line processes, each a
sequence of semaphore acquisitions ``P r`` and releases ``V r``::

    #sem a 2        ; counting semaphore a with capacity 2
    Pa.Pb.Vb.Va | Pb.Pa.Va.Vb

Resources that are used but never declared default to capacity 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "LOCK",
    "UNLOCK",
    "Action",
    "PvProgram",
    "PvError",
    "PvSyntaxError",
    "PvValidationError",
    "parse_pv",
    "format_pv",
]

LOCK = "P"
UNLOCK = "V"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?[0-9]+")


class PvError(ValueError):
    """Base class for PV program errors."""


class PvSyntaxError(PvError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PvValidationError(PvError):
    pass


@dataclass(frozen=True)
class Action:
    kind: str
    resource: str

    def __post_init__(self):
        if self.kind not in (LOCK, UNLOCK):
            raise PvValidationError(f"unknown action kind {self.kind!r}")
        if not self.resource or not _IDENT.fullmatch(self.resource):
            raise PvValidationError(f"invalid resource name {self.resource!r}")

    def __str__(self):
        return f"{self.kind}{self.resource}"


@dataclass(frozen=True)
class PvProgram:
    """Validated PV program: resource capacities plus parallel processes."""

    resources: Mapping[str, int]
    processes: tuple[tuple[Action, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "resources", MappingProxyType(dict(self.resources)))
        object.__setattr__(self, "processes", tuple(tuple(p) for p in self.processes))
        _validate(self)

    def __eq__(self, other):
        if not isinstance(other, PvProgram):
            return NotImplemented
        return dict(self.resources) == dict(other.resources) and self.processes == other.processes

    def __hash__(self):
        return hash((tuple(sorted(self.resources.items())), self.processes))

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.processes)

    @property
    def n_processes(self) -> int:
        return len(self.processes)

    def __str__(self):
        return format_pv(self)

    @classmethod
    def from_processes(
        cls, processes: Iterable[Iterable[Action]], capacities: Mapping[str, int] | None = None
    ) -> "PvProgram":
        """Build a program, giving undeclared resources capacity 1."""
        processes = tuple(tuple(p) for p in processes)
        resources = dict(capacities or {})
        for proc in processes:
            for act in proc:
                resources.setdefault(act.resource, 1)
        return cls(resources, processes)


def _validate(program: PvProgram) -> None:
    if not program.processes:
        raise PvValidationError("program has no processes")
    for name, cap in program.resources.items():
        if not isinstance(cap, int) or isinstance(cap, bool) or cap <= 0:
            raise PvValidationError(f"capacity of {name!r} must be a positive integer, got {cap!r}")
    for k, proc in enumerate(program.processes, start=1):
        if not proc:
            raise PvValidationError(f"process {k} is empty")
        held: dict[str, int] = {}
        for pos, act in enumerate(proc, start=1):
            if act.resource not in program.resources:
                raise PvValidationError(f"process {k} uses undeclared resource {act.resource!r}")
            if act.kind == LOCK:
                held[act.resource] = held.get(act.resource, 0) + 1
            else:
                if held.get(act.resource, 0) <= 0:
                    raise PvValidationError(
                        f"process {k}, action {pos}: over-release of {act.resource!r}"
                    )
                held[act.resource] -= 1


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None) -> PvSyntaxError:
        return PvSyntaxError(message, *self.location(pos))

    def skip(self, newlines: bool = True) -> None:
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c == ";":
                end = text.find("\n", self.pos)
                self.pos = len(text) if end < 0 else end
            elif c in " \t\r" or (newlines and c == "\n"):
                self.pos += 1
            else:
                break

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern: re.Pattern, what: str) -> str:
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()


def parse_pv(source: str) -> PvProgram:
    """Parse PV source text into a validated :class:`PvProgram`.

    Raises :class:`PvSyntaxError` (with line/column) on malformed text and
    :class:`PvValidationError` on over-release, empty processes or
    non-positive capacities.
    """
    sc = _Scanner(source)
    declared: dict[str, int] = {}

    sc.skip()
    while sc.peek() == "#":
        start = sc.pos
        sc.pos += 1
        keyword = sc.match(_IDENT, "'sem' after '#'")
        if keyword != "sem":
            raise sc.error(f"unknown declaration #{keyword}", start)
        sc.skip(newlines=False)
        name = sc.match(_IDENT, "resource name")
        sc.skip(newlines=False)
        cap_pos = sc.pos
        cap = int(sc.match(_INT, "integer capacity"))
        if name in declared:
            raise sc.error(f"duplicate declaration of {name!r}", start)
        if cap <= 0:
            raise PvValidationError(
                "line {}, column {}: capacity of {!r} must be positive, got {}".format(
                    *sc.location(cap_pos), name, cap
                )
            )
        declared[name] = cap
        sc.skip(newlines=False)
        if sc.peek() not in ("\n", ""):
            raise sc.error("expected end of line after declaration")
        sc.skip()

    processes = []
    while True:
        proc = []
        while True:
            sc.skip()
            c = sc.peek()
            if c not in (LOCK, UNLOCK):
                if proc:
                    raise sc.error("expected an action after '.'")
                if c == "|" or processes:
                    raise sc.error("empty process")
                if c == "":
                    raise sc.error("expected an action (empty program)")
                raise sc.error(f"expected 'P' or 'V', found {c!r}")
            sc.pos += 1
            sc.skip()
            proc.append(Action(c, sc.match(_IDENT, "resource name after " + c)))
            sc.skip()
            if sc.peek() != ".":
                break
            sc.pos += 1
        processes.append(tuple(proc))
        if sc.peek() == "|":
            sc.pos += 1
            continue
        if sc.peek() == "":
            break
        raise sc.error(f"unexpected {sc.peek()!r}")

    return PvProgram.from_processes(processes, declared)


def format_pv(program: PvProgram) -> str:
    """Render ``program`` in the concrete syntax accepted by :func:`parse_pv`."""
    used = {a.resource for proc in program.processes for a in proc}
    lines = [
        f"#sem {name} {cap}"
        for name, cap in sorted(program.resources.items())
        if cap != 1 or name not in used
    ]
    lines.append(" | ".join(".".join(str(a) for a in proc) for proc in program.processes))
    return "\n".join(lines) + "\n"
