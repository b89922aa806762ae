import random
import sys

import pytest

from pvcube.pvlang import Action, PvProgram

SWISS = "Pa.Pb.Vb.Va | Pb.Pa.Va.Vb"
TWO_HOLES = "Pa.Va.Pb.Vb | Pa.Va.Pb.Vb"
CROSSED_HOLES = "Pb.Vb.Pa.Va | Pa.Va.Pb.Vb"


def random_program(rng: random.Random, n_procs=(1, 3), length=(1, 6), resources="abc", caps=(1, 2)):
    """A valid program: releases only of resources currently held."""
    procs = []
    for _ in range(rng.randint(*n_procs)):
        held: list[str] = []
        proc = []
        for _ in range(rng.randint(*length)):
            if held and rng.random() < 0.5:
                r = held.pop(rng.randrange(len(held)))
                proc.append(Action("V", r))
            else:
                r = rng.choice(resources)
                held.append(r)
                proc.append(Action("P", r))
        procs.append(proc)
    capacities = {r: rng.randint(*caps) for r in resources}
    return PvProgram.from_processes(procs, capacities)


def single_hole_program(rng: random.Random) -> PvProgram:
    """Two processes sharing one binary semaphore once; other actions are private."""
    procs = []
    for i in (1, 2):
        private = f"p{i}"
        chunk = lambda: [Action("P", private), Action("V", private)] * rng.randint(0, 1)
        procs.append(chunk() + [Action("P", "s")] + chunk() + [Action("V", "s")] + chunk())
    return PvProgram.from_processes(procs)


def hole_free_program(rng: random.Random) -> PvProgram:
    prog = random_program(rng, n_procs=(2, 2), length=(1, 5))
    return PvProgram.from_processes(prog.processes, {r: 99 for r in prog.resources})


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
