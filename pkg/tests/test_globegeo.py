import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from pvcube.globegeo import (
    IOTA,
    SIGMA,
    GlobeGeometryError,
    GlobePoint,
    cube_to_globe,
    globe_leq,
    globe_to_cube,
    h_map,
    interior,
    is_dipath,
    leq_gl,
    m_value,
    underlying_point,
)


def m_by_bisection(t):
    """The min-max stretch straight from its definition, by bisection per coordinate."""
    t = np.asarray(t, float)
    c = t.mean()
    best = np.inf
    for ti in t:
        if abs(ti - c) < 1e-15:
            continue
        lo, hi = 0.0, 1e6
        for _ in range(200):
            mid = (lo + hi) / 2
            if 0 <= c + mid * (ti - c) <= 1:
                lo = mid
            else:
                hi = mid
        best = min(best, lo)
    return best


unit = st.floats(0, 1, allow_nan=False)
inner = st.floats(0.01, 0.99, allow_nan=False)


def cube_points(n, elements=unit):
    return st.lists(elements, min_size=n, max_size=n)


globe_points = st.one_of(
    st.just(IOTA),
    st.just(SIGMA),
    st.builds(lambda b, t: interior(b, t), st.sampled_from([(0.0,), (0.5,), (-0.25,)]), st.floats(0.05, 0.95)),
)


# ---- the globe order ----

def test_order_examples():
    p = interior((0.1,), 0.3)
    assert globe_leq(IOTA, p) and globe_leq(IOTA, SIGMA) and globe_leq(p, SIGMA)
    assert not globe_leq(interior((0.1,), 0.3), interior((0.2,), 0.5))
    assert globe_leq(p, p)
    assert globe_leq(interior((0.1,), 0.3), interior((0.1,), 0.5))
    assert not globe_leq(SIGMA, p) and not globe_leq(p, IOTA)


@given(globe_points, globe_points, globe_points)
def test_order_axioms(p, q, r):
    assert globe_leq(p, p)
    if globe_leq(p, q) and globe_leq(q, p):
        assert p == q
    if globe_leq(p, q) and globe_leq(q, r):
        assert globe_leq(p, r)


def test_points_validate_and_serialize():
    with pytest.raises(GlobeGeometryError):
        interior((0.0,), 1.0)
    for p in (IOTA, SIGMA, interior((0.25, -0.5), 0.4)):
        assert GlobePoint.from_json(p.to_json()) == p


# ---- h and m ----

def test_h_examples():
    assert np.allclose(h_map([1, 0.5]), [-0.25])
    assert np.allclose(h_map([1, 0, 0]), [-1 / 3, -1 / 3])
    assert np.allclose(h_map([0.4] * 4), 0)


@given(st.integers(2, 5).flatmap(lambda n: cube_points(n)))
def test_h_kernel_is_the_diagonal(t):
    # h vanishes exactly on the diagonal: |h|_1 is squeezed between ptp/2 and (n-1) ptp
    t = np.array(t)
    h1 = np.abs(h_map(t)).sum()
    assert np.ptp(t) / 2 - 1e-12 <= h1 <= (t.size - 1) * np.ptp(t) + 1e-12


def test_m_examples():
    assert m_value([1, 0.5]) == pytest.approx(1)
    assert m_value([0.75, 0.25]) == pytest.approx(2)
    with pytest.raises(GlobeGeometryError, match="diagonal"):
        m_value([0.3, 0.3])


@given(st.integers(2, 4).flatmap(lambda n: cube_points(n)))
def test_m_matches_its_definition_and_is_at_least_one(t):
    assume(np.ptp(t) > 1e-6)
    m = m_value(t)
    assert m >= 1 - 1e-12
    assert m == pytest.approx(m_by_bisection(t), rel=1e-9)


@given(st.integers(2, 4).flatmap(lambda n: cube_points(n)), st.data())
def test_m_is_one_on_the_boundary(t, data):
    k = data.draw(st.integers(0, len(t) - 1))
    t[k] = data.draw(st.sampled_from([0.0, 1.0]))
    assume(np.ptp(t) > 1e-6)
    assert m_value(t) == pytest.approx(1, abs=1e-12)
    g = cube_to_globe(t)
    assert np.linalg.norm(g.base) == pytest.approx(1, abs=1e-12)


# ---- the homeomorphism ----

def test_cube_to_globe_examples():
    assert cube_to_globe([0, 0, 0]) == IOTA
    assert cube_to_globe([1, 1]) == SIGMA
    g = cube_to_globe([0.3, 0.3, 0.3])
    assert g.is_interior and g.time == pytest.approx(0.3) and np.allclose(g.base, 0)


def test_globe_to_cube_examples():
    assert np.array_equal(globe_to_cube(IOTA, 3), [0, 0, 0])
    assert np.array_equal(globe_to_cube(SIGMA, 2), [1, 1])
    assert np.allclose(globe_to_cube(interior((0, 0), 0.7), 3), [0.7] * 3)
    with pytest.raises(GlobeGeometryError, match="outside the disk"):
        globe_to_cube(interior((2.0,), 0.5), 2)
    with pytest.raises(GlobeGeometryError, match="dimension"):
        globe_to_cube(interior((0.1,), 0.5), 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_round_trip(n):
    rng = np.random.default_rng(n)
    pts = rng.random((2000, n))
    # include boundary points and near-corner points
    pts[::7, 0] = 0.0
    pts[::11, -1] = 1.0
    worst = max(np.linalg.norm(globe_to_cube(cube_to_globe(t), n) - t) for t in pts)
    assert worst < 1e-9


@pytest.mark.parametrize("n", [2, 3])
def test_injective_on_samples(n):
    rng = np.random.default_rng(100 + n)
    pts = rng.random((400, n))
    images = np.array([[g.time, *g.base] for g in map(cube_to_globe, pts)])
    for k in range(len(pts)):
        close = np.all(np.abs(images - images[k]) < 1e-9, axis=1)
        assert close.sum() == 1


# ---- the pulled-back cube order ----

def test_leq_gl_examples():
    assert leq_gl([0, 0], [0.9, 0.1])
    assert leq_gl([0.3, 0.5], [0.5, 0.7])
    assert not leq_gl([0.5, 0.7], [0.3, 0.5])
    assert not leq_gl([0.2, 0.8], [0.8, 0.2]) and not leq_gl([0.8, 0.2], [0.2, 0.8])


def test_diagonal_path_is_monotone():
    samples = [cube_to_globe([s, s, s]) for s in np.linspace(0, 1, 41)]
    assert is_dipath(samples)
    assert underlying_point(samples) == (0.0, 0.0)


def test_staircase_paths_order_sums_of_comparable_pairs():
    rng = np.random.default_rng(7)
    for _ in range(50):
        steps = rng.permutation([0] * 4 + [1] * 4)
        pts, cur = [np.zeros(2)], np.zeros(2)
        for d in steps:
            for _ in range(4):
                cur = cur.copy()
                cur[d] += 1 / 16
                pts.append(cur)
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                if leq_gl(pts[a], pts[b]):
                    assert pts[a].sum() <= pts[b].sum() + 1e-12
    # a staircase crossing the diagonal is not monotone for the pulled-back order
    stair = [[0, 0], [0.5, 0], [0.5, 0.5], [1, 0.5], [1, 1]]
    assert not is_dipath([cube_to_globe(p) for p in stair])
    # while the boundary staircase stays in one slice {-1} x ]0,1[
    edge = [[0, 0], [0.5, 0], [1, 0], [1, 0.5], [1, 1]]
    assert underlying_point([cube_to_globe(p) for p in edge]) == (-1.0,)


# ---- underlying point ----

def test_underlying_point_of_vertical_path():
    x0 = (0.3, -0.4)
    samples = [IOTA] + [interior(x0, t) for t in np.linspace(0.05, 0.95, 19)] + [SIGMA]
    assert underlying_point(samples) == x0


def test_underlying_point_is_parametrization_invariant():
    x0 = (0.6,)
    samples = [IOTA] + [interior(x0, s**2) for s in np.linspace(0.1, 0.9, 9)] + [SIGMA]
    assert underlying_point(samples) == x0


def test_underlying_point_errors():
    with pytest.raises(GlobeGeometryError, match="inconsistent"):
        underlying_point([IOTA, interior((0.1,), 0.3), interior((0.2,), 0.6), SIGMA])
    with pytest.raises(GlobeGeometryError, match="no interior"):
        underlying_point([IOTA, SIGMA])
    with pytest.raises(GlobeGeometryError):
        underlying_point([interior((0.1,), 0.3), SIGMA])


@settings(max_examples=50)
@given(st.lists(st.floats(-0.7, 0.7), min_size=1, max_size=3), st.lists(inner, min_size=1, max_size=10))
def test_retraction_undoes_the_vertical_inclusion(x, times):
    samples = [IOTA] + [interior(x, t) for t in sorted(times)] + [SIGMA]
    assert underlying_point(samples) == tuple(x)
