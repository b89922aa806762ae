import pytest

from pvcube.analysis import (
    CapExceededError,
    UnionFind,
    UnknownVertexError,
    count_dipaths,
    deadlocks,
    dihomotopy_classes,
    enumerate_dipaths,
    reachable,
    unreachable_states,
    unsafe_states,
)
from pvcube.precubical import PrecubicalSet, truncate, validate
from pvcube.pvlang import PvProgram, parse_pv
from pvcube.semantics import (
    GridCell,
    cell_id,
    final_vertex,
    initial_vertex,
    parse_cell_id,
    parse_vertex_id,
    pv_to_precubical,
)

from conftest import TWO_HOLES, CROSSED_HOLES, SWISS, hole_free_program, random_program, single_hole_program
from oracles import all_dipaths, allowed_cells, flip_classes, lattice_path_count


def compile_(src, tick=True):
    prog = parse_pv(src) if isinstance(src, str) else src
    M = pv_to_precubical(prog, terminal_tick=tick)
    return M, initial_vertex(prog), final_vertex(prog, tick)


def compile_live(rng, **kw):
    """A random program whose far corner is not forbidden (unreleased locks can block it)."""
    while True:
        prog = random_program(rng, **kw)
        M, init, final = compile_(prog)
        if final in M.dims:
            return prog, M, init, final


def oracle_partition(prog, tick=True, reverse=False):
    cells = allowed_cells(prog, tick)
    n = prog.n_processes
    end = tuple(len(p) + (1 if tick else 0) for p in prog.processes)
    paths = sorted(all_dipaths(cells, (0,) * n, end))
    seeds = paths[::-1] if reverse else paths
    return {frozenset(c) for c in flip_classes(cells, paths, seeds)}


def package_partition(M, init, final):
    return {frozenset(tuple(parse_vertex_id(v) for v in p.vertices) for p in cls)
            for cls in dihomotopy_classes(M, init, final)}


# ---- reachability, deadlocks ----

def test_swiss_reachability():
    M, init, final = compile_(SWISS)
    r = reachable(M, init)
    assert len(r) == 35 and "(3,3)" not in r
    assert unreachable_states(M, init) == {"(3,3)"}
    assert deadlocks(M, final) == {"(2,2)"}
    assert unsafe_states(M, final) == {"(2,2)"}


def test_swiss_compact_grid_has_the_same_trace():
    M, init, final = compile_(SWISS, tick=False)
    assert deadlocks(M, final) == {"(2,2)"}
    assert unsafe_states(M, final) == {"(2,2)"}
    assert unreachable_states(M, init) == {"(3,3)"}


def test_reachable_small_cases():
    M, init, _ = compile_("Pa.Va | Pa.Va", tick=False)
    assert len(reachable(M, init)) == 9
    V = truncate(M, 0)
    assert reachable(V, "(1,1)") == {"(1,1)"}


def test_unknown_vertex():
    M, _, final = compile_(SWISS)
    with pytest.raises(UnknownVertexError):
        reachable(M, "(9,9)")
    with pytest.raises(UnknownVertexError):
        deadlocks(M, "(6,6)")


def test_hole_free_programs_have_no_bad_states(rng):
    for _ in range(40):
        M, init, final = compile_(hole_free_program(rng))
        assert deadlocks(M, final) == set()
        assert unsafe_states(M, final) == set()
        assert unreachable_states(M, init) == set()


@pytest.mark.parametrize("src", [TWO_HOLES, CROSSED_HOLES])
def test_hole_programs_have_no_deadlock(src):
    M, _, final = compile_(src)
    assert deadlocks(M, final) == set()


def test_state_set_invariants(rng):
    for _ in range(120):
        _, M, init, final = compile_live(rng)
        dl, unsafe = deadlocks(M, final), unsafe_states(M, final)
        assert dl <= unsafe
        assert final not in dl
        assert init in reachable(M, init)
        # brute force: unsafe means final not reachable
        assert unsafe == {v for v in M.vertices if final not in reachable(M, v)}


# ---- dipaths ----

def test_full_grid_path_count():
    M, init, final = compile_("Pa.Va | Pb.Vb", tick=False)
    paths = enumerate_dipaths(M, init, final)
    assert len(paths) == 6 == lattice_path_count([2, 2])
    assert [p.vertices for p in paths] == sorted(p.vertices for p in paths)


def test_swiss_path_count_matches_dfs_oracle():
    prog = parse_pv(SWISS)
    M, init, final = compile_(prog)
    expected = sorted(all_dipaths(allowed_cells(prog), (0, 0), (5, 5)))
    got = [tuple(parse_vertex_id(v) for v in p.vertices) for p in enumerate_dipaths(M, init, final)]
    assert got == expected
    assert len(got) == count_dipaths(M, init, final) == 84


def test_single_process_has_one_path():
    M, init, final = compile_("Pa.Pb.Vb.Va")
    (p,) = enumerate_dipaths(M, init, final)
    assert p.start == "(0)" and p.end == "(5)" and len(p) == 5


def test_random_path_counts_match_oracle(rng):
    for _ in range(80):
        prog, M, init, final = compile_live(rng, n_procs=(1, 3), length=(1, 4))
        end = parse_vertex_id(final)
        assert count_dipaths(M, init, final) == len(all_dipaths(allowed_cells(prog), (0,) * len(end), end))


def test_cap():
    M, init, final = compile_(SWISS)
    with pytest.raises(CapExceededError, match="84"):
        enumerate_dipaths(M, init, final, cap=83)
    assert len(enumerate_dipaths(M, init, final, cap=84)) == 84


def test_cycle_is_reported_not_looped():
    M = PrecubicalSet(
        [("x", 0), ("y", 0), ("e", 1), ("f", 1), ("g", 1)],
        {("e", 1, 0): "x", ("e", 1, 1): "y", ("f", 1, 0): "y", ("f", 1, 1): "y",
         ("g", 1, 0): "x", ("g", 1, 1): "y"},
    )
    with pytest.raises(CapExceededError, match="cycle"):
        enumerate_dipaths(M, "x", "y")


def test_parallel_arcs_give_separate_paths():
    M = PrecubicalSet(
        [("x", 0), ("y", 0), ("e", 1), ("g", 1)],
        {("e", 1, 0): "x", ("e", 1, 1): "y", ("g", 1, 0): "x", ("g", 1, 1): "y"},
    )
    paths = enumerate_dipaths(M, "x", "y")
    assert [p.arcs for p in paths] == [("e",), ("g",)]
    assert len(dihomotopy_classes(M, "x", "y")) == 2


# ---- dihomotopy classes ----

@pytest.mark.parametrize("src, k", [(TWO_HOLES, 4), (CROSSED_HOLES, 3), (SWISS, 2), ("Pa.Va | Pb.Vb", 1), ("Pa.Va | Pa.Va", 2)])
def test_class_counts(src, k):
    assert len(dihomotopy_classes(*compile_(src))) == k
    assert len(dihomotopy_classes(*compile_(src, tick=False))) == k


def test_hole_free_is_one_class(rng):
    for _ in range(30):
        cls = dihomotopy_classes(*compile_(hole_free_program(rng)))
        assert len(cls) == 1


def test_single_hole_is_two_classes(rng):
    for _ in range(30):
        prog = single_hole_program(rng)
        assert len(dihomotopy_classes(*compile_(prog))) == 2
        assert len(oracle_partition(prog)) == 2


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_stacked_holes(k):
    proc = [a for r in "abc"[:k] for a in (f"P{r}", f"V{r}")] or ["Pz", "Vz"]
    src = ".".join(proc) + " | " + ".".join(proc)
    if k == 0:
        src = "#sem z 2\n" + src
    prog = parse_pv(src)
    assert len(dihomotopy_classes(*compile_(prog))) == 2**k == len(oracle_partition(prog))


def test_representatives_are_least_members():
    cls = dihomotopy_classes(*compile_(CROSSED_HOLES))
    for group, rep in zip(cls, cls.representatives):
        assert rep.vertices == min(p.vertices for p in group)
    reps = [r.vertices for r in cls.representatives]
    assert reps == sorted(reps)
    assert cls.n_paths == 252


def test_partitions_match_oracle_from_both_ends(rng):
    progs = [parse_pv(s) for s in (SWISS, TWO_HOLES, CROSSED_HOLES)]
    progs += [compile_live(rng, n_procs=(2, 3), length=(1, 3))[0] for _ in range(40)]
    for prog in progs:
        M, init, final = compile_(prog)
        got = package_partition(M, init, final)
        assert got == oracle_partition(prog) == oracle_partition(prog, reverse=True), prog


# ---- monotonicity under square mutation ----

def _with_square(M, lower, add):
    cell = GridCell(lower, {1, 2})
    name = cell_id(cell)
    dims = dict(M.dims)
    faces = dict(M.faces)
    if add:
        dims[name] = 2
        for i in (1, 2):
            for a in (0, 1):
                faces[(name, i, a)] = cell_id(cell.face(i, a))
    else:
        del dims[name]
        faces = {k: v for k, v in faces.items() if k[0] != name}
    return PrecubicalSet(dims.items(), faces)


def test_filling_a_square_never_adds_classes(rng):
    checked = 0
    for _ in range(60):
        _, M, init, final = compile_live(rng, n_procs=(2, 2), length=(1, 4))
        base = len(dihomotopy_classes(M, init, final))
        squares = {parse_cell_id(s).lower for s in M.cubes(2)}
        for lower in sorted(squares):
            smaller = _with_square(M, lower, add=False)
            assert len(dihomotopy_classes(smaller, init, final)) >= base
            checked += 1
        for v in M.vertices:
            lower = parse_vertex_id(v)
            c = GridCell(lower, {1, 2})
            if lower in squares or not all(cell_id(c.face(i, a)) in M.dims for i in (1, 2) for a in (0, 1)):
                continue
            bigger = _with_square(M, lower, add=True)
            assert validate(bigger) == []
            assert len(dihomotopy_classes(bigger, init, final)) <= base
            checked += 1
    assert checked > 100


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(3)
    assert uf.count == 3


def test_final_vertex_can_be_forbidden():
    # with a terminal tick, an unreleased lock at capacity 1 blocks the far corner
    prog = parse_pv("Pa | Pa")
    M, init, final = compile_(prog)
    assert final not in M.dims
    M2, init2, final2 = compile_(PvProgram({"a": 2}, prog.processes))
    assert count_dipaths(M2, init2, final2) == 6
