import numpy as np
import pytest
from sklearn.base import clone

from chainkit import GridIndex, NaiveScan, all_in_ellipse, build, count_in_ellipse
from chainkit.fractal import generate_chain
from chainkit.range_search import make_ellipse

BACKENDS = ["naive", "grid"]
E2 = make_ellipse((0, 0), (1, 0), 2.0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_empty_index(backend):
    idx = build(np.empty((0, 2)), backend)
    assert count_in_ellipse(idx, E2) == 0
    assert all_in_ellipse(idx, E2) == (True, None)
    assert idx.build_stats["count"] == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_collinear_points(backend):
    pts = [(x, 0.0) for x in range(5)]
    idx = build(pts, backend)
    assert count_in_ellipse(idx, make_ellipse((0, 0), (4, 0), 1.0)) == 5
    if backend == "grid":
        assert idx.shape_[1] == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_fractal_build_stats(backend):
    idx = build(generate_chain(6, 4).vertices, backend)
    assert idx.build_stats["count"] == 257
    assert idx.build_stats["memory_bytes"] > 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_count_examples(backend):
    idx = build([(0, 0), (1, 0), (0.5, 0.3), (0.5, 2)], backend)
    assert count_in_ellipse(idx, E2) == 3
    assert count_in_ellipse(idx, make_ellipse((0, 0), (1, 0), 1e9)) == 4


@pytest.mark.parametrize("backend", BACKENDS)
def test_all_in_examples(backend):
    assert all_in_ellipse(build([(0.5, 0.1)], backend), E2) == (True, None)
    ok, where = all_in_ellipse(build([(0.5, 0.1), (0.5, 5)], backend), E2)
    # 0-based index 1 is the second point
    assert not ok and where == 1


def test_all_in_reports_smallest_outside_index(rng):
    pts = rng.normal(size=(500, 2)) * 3
    e = make_ellipse((-0.5, 0.0), (0.5, 0.2), 2.5)
    for backend in BACKENDS:
        ok, where = all_in_ellipse(build(pts, backend), e)
        inside = build(pts, "naive")._inside(pts, e)
        assert not ok and where == int(np.flatnonzero(~inside)[0])


def test_unknown_backend():
    with pytest.raises(ValueError):
        build([(0, 0)], "kd")


def test_estimator_api():
    g = GridIndex(tol=1e-8)
    assert g.get_params() == {"tol": 1e-8, "scale": None}
    assert clone(g).tol == 1e-8
    assert NaiveScan().fit([(0, 0), (1, 1)]).n_points_ == 2


@pytest.mark.parametrize("m", [1, 7, 100, 2000])
def test_backends_agree_random(rng, m):
    pts = rng.normal(size=(m, 2))
    naive, grid = build(pts, "naive"), build(pts, "grid")
    for _ in range(200):
        f1, f2 = rng.normal(size=2), rng.normal(size=2)
        e = make_ellipse(f1, f2, 1.0 + 4.0 * rng.random())
        assert naive.count(e) == grid.count(e)
        assert naive.all_in(e) == grid.all_in(e)


def test_count_monotone_in_c(rng):
    pts = rng.normal(size=(300, 2))
    for backend in BACKENDS:
        idx = build(pts, backend)
        counts = [idx.count(make_ellipse((0, 0), (0.3, 0.4), c)) for c in np.linspace(1, 8, 30)]
        assert counts == sorted(counts)


def test_max_focal_sums_matches_scan(rng):
    pts = rng.random((60, 2))
    A, B = rng.random((7, 2)), rng.random((5, 2))
    for backend in BACKENDS:
        S = build(pts, backend).max_focal_sums(A, B)
        want = (np.hypot(*(A[:, None, None] - pts[None, :, None]).transpose(3, 0, 1, 2))
                + np.hypot(*(pts[None, :, None] - B[None, None, :]).transpose(3, 0, 1, 2))).max(axis=1)
        np.testing.assert_allclose(S, want, rtol=1e-15)
