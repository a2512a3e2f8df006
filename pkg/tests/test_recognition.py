import math

import numpy as np
import pytest
from sklearn.base import clone

from chainkit import (CChainRecognizer, PolygonalChain, build_tree, canonical_decomposition,
                      decide_c_chain, is_c_chain_bruteforce, min_c_bisect, min_c_bruteforce,
                      triple_ratio)
from chainkit.fractal import generate_chain

BACKENDS = ["naive", "grid"]


def test_tree_two_vertices():
    t = build_tree(PolygonalChain([(0, 0), (1, 0)]))
    assert (t.lo[0], t.hi[0]) == (1, 2)
    kids = [t.left[0], t.right[0]]
    assert [(t.lo[v], t.hi[v]) for v in kids] == [(1, 1), (2, 2)]
    assert all(t.is_leaf(v) for v in kids)


def test_tree_split_shares_middle_vertex():
    t = build_tree(PolygonalChain(np.random.default_rng(0).random((5, 2))))
    l, r = t.left[0], t.right[0]
    assert (t.lo[l], t.hi[l], t.lo[r], t.hi[r]) == (1, 3, 3, 5)


@pytest.mark.parametrize("n", [2, 3, 17, 257, 1000])
def test_tree_depth_and_point_sets(n):
    t = build_tree(PolygonalChain(np.c_[np.arange(n), np.zeros(n)]))
    assert t.depth <= math.ceil(math.log2(n)) + 1
    for v in range(len(t)):
        assert t.indexes[v].n_points_ == t.hi[v] - t.lo[v] + 1
    leaves = sorted(int(t.lo[v]) for v in range(len(t)) if t.is_leaf(v))
    # every vertex has a leaf; shared middles get two
    assert set(leaves) == set(range(1, n + 1))


def test_decomposition_examples():
    t = build_tree(PolygonalChain(np.c_[np.arange(8.0), np.zeros(8)]))
    pieces = canonical_decomposition(t, 3, 5)
    assert [(p.lo, p.hi) for p in pieces] == [(4, 4)]
    assert t.is_leaf(pieces[0].node)
    assert canonical_decomposition(t, 3, 4) == []
    full = canonical_decomposition(t, 1, 8)
    assert [x for p in full for x in range(p.lo, p.hi + 1)] == list(range(2, 8))


def _covered(pieces):
    return [x for p in pieces for x in range(p.lo, p.hi + 1)]


def test_decomposition_pieces_are_nodes():
    t = build_tree(PolygonalChain(np.c_[np.arange(40.0), np.zeros(40)]))
    for p in canonical_decomposition(t, 2, 37):
        assert (p.node_lo, p.node_hi) == (t.lo[p.node], t.hi[p.node])
        # the node may reach one shared vertex to the left of its piece
        assert p.node_lo in (p.lo, p.lo - 1) and p.node_hi == p.hi


def test_decomposition_random_large(rng):
    n = 1024
    t = build_tree(PolygonalChain(np.c_[np.arange(float(n)), np.zeros(n)]))
    for _ in range(300):
        i, k = sorted(rng.choice(np.arange(1, n + 1), 2, replace=False))
        if k < i + 2:
            continue
        pieces = canonical_decomposition(t, i, k)
        assert len(pieces) <= 22
        assert _covered(pieces) == list(range(i + 1, k))


def test_rectangles_match_decomposition():
    for n in (5, 9, 16, 33):
        t = build_tree(PolygonalChain(np.c_[np.arange(float(n)), np.zeros(n)]))
        owners = {}
        for v, (i0, i1, k0, k1) in enumerate(t.rects):
            for i in range(i0, i1 + 1):
                for k in range(k0, k1 + 1):
                    owners.setdefault((i, k), set()).add(v)
        for i in range(1, n + 1):
            for k in range(i + 2, n + 1):
                assert owners.pop((i, k)) == {p.node for p in canonical_decomposition(t, i, k)}
        assert not owners


@pytest.mark.parametrize("backend", BACKENDS)
def test_decide_fractal(backend):
    P = generate_chain(6, 4)
    assert decide_c_chain(P, 6.0, backend).is_c_chain
    out = decide_c_chain(P, 1.9, backend)
    assert not out
    w = out.witness
    assert triple_ratio(P, w.i, w.j, w.k) > 1.9
    assert w.ratio == triple_ratio(P, w.i, w.j, w.k)


@pytest.mark.parametrize("backend", BACKENDS)
def test_decide_q(Q, backend):
    assert decide_c_chain(Q, 2.5, backend)
    out = decide_c_chain(Q, 2.0, backend)
    assert (out.witness.i, out.witness.j, out.witness.k) == (1, 2, 4)


def test_decide_collinear_c1():
    P = PolygonalChain([(0, 0), (1, 0), (2.5, 0), (3, 0)])
    out = decide_c_chain(P, 1.0)
    assert out.is_c_chain and out.witness is None


def test_decide_c1_not_collinear_falls_back(Q):
    out = decide_c_chain(Q, 1.0)
    assert not out and out.witness.ratio > 1.0


def test_decide_unbounded():
    P = PolygonalChain([(0, 0), (1, 0), (0, 0), (3, 1)])
    out = decide_c_chain(P, 100.0)
    assert not out and out.witness.unbounded
    assert (out.witness.i, out.witness.k) == (1, 3)


def test_counters_on_success():
    n = 50
    P = PolygonalChain(np.c_[np.arange(float(n)), np.zeros(n)])
    out = decide_c_chain(P, 2.0)
    pairs = n * (n - 1) // 2 - (n - 1)
    assert out.pairs_tested == pairs
    assert pairs <= out.queries_issued <= pairs * (2 * math.ceil(math.log2(n)) + 2)


def test_recognizer_estimator_api(Q):
    r = CChainRecognizer(backend="naive", cache=False)
    assert r.get_params() == {"backend": "naive", "cache": False, "tol": 1e-9}
    assert clone(r).fit(Q).decide(3.0)
    with pytest.raises(Exception):
        CChainRecognizer().decide(2.0)


def test_decide_agrees_with_brute(rng):
    for _ in range(150):
        n = int(rng.integers(3, 40))
        P = PolygonalChain(rng.random((n, 2)))
        truth = min_c_bruteforce(P).value
        for backend in BACKENDS:
            rec = CChainRecognizer(backend=backend).fit(P)
            for c in 1 + 3 * rng.random(4):
                if abs(truth - c) <= 1e-6 * c:
                    continue
                out = rec.decide(c)
                assert out.is_c_chain == is_c_chain_bruteforce(P, c)[0]
                if not out:
                    assert out.witness.ratio > c


def test_min_c_bisect_examples(Q):
    assert min_c_bisect(Q, 1e-9).value == pytest.approx(1 + math.sqrt(2), abs=1e-8)
    res = min_c_bisect(PolygonalChain([(0, 0), (3, 1)]))
    assert res.value == 1.0 and res.witness is None
    P = generate_chain(8, 3)
    got = min_c_bisect(P, 1e-9).value
    assert got <= 8 and got == pytest.approx(min_c_bruteforce(P).value, rel=1e-9)


def test_min_c_bisect_bracket(Q):
    rec = CChainRecognizer().fit(Q)
    res = rec.min_c(1e-7)
    assert rec.decide(res.value)
    assert not rec.decide(res.value * (1 - 1e-7))


def test_min_c_bisect_unbounded():
    assert min_c_bisect([(0, 0), (1, 0), (0, 0)]).unbounded


def test_min_c_bisect_rejects_tiny_tol(Q):
    with pytest.raises(ValueError):
        min_c_bisect(Q, 1e-15)
