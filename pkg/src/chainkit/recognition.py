"""Deciding whether a chain is a c-chain, and finding its minimum c.

The chain is halved recursively into a balanced tree of subchains whose
neighbouring halves share their middle vertex. For a vertex pair (i, k) the
interior {i+1, ..., k-1} is covered by O(log n) maximal tree nodes, and the
pair satisfies the c-chain inequality for every interior j exactly when
each of those nodes lies inside the focal ellipse E(p_i, p_k, c).

For a fixed node, the pairs that use it as a canonical piece form a
rectangle of (i, k) values, so all queries against one node are answered
in a single batched call to its range-search index.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .chain import MinC, TripleWitness, as_chain, is_one_chain, triple_ratio
from .geometry import EPS_REL, FocalEllipse, pairwise_dist
from .range_search import build
from .validation import check_threshold

# upper bound on cached ratio entries per fitted recogniser
CACHE_LIMIT = 25_000_000


@dataclass(frozen=True)
class CanonicalPiece:
    """A tree node used to cover part of an interior interval.

    ``lo``..``hi`` is the part of the interval this piece accounts for; the
    node itself may extend one shared vertex further to the left.
    """

    node: int
    node_lo: int
    node_hi: int
    lo: int
    hi: int


@dataclass(frozen=True)
class DecisionOutcome:
    is_c_chain: bool
    witness: Optional[TripleWitness]
    queries_issued: int
    pairs_tested: int
    c: float = math.nan

    def __bool__(self):
        return self.is_c_chain


class RecursionTree:
    """Balanced halving of a chain with one range-search index per node.

    Node ``v`` spans the 1-based vertices ``lo[v]..hi[v]``. A node with at
    least three vertices splits at m = ceil((lo + hi) / 2) into [lo, m] and
    [m, hi]; a two-vertex node splits into its two single-vertex leaves.
    Nodes are numbered in preorder, so node 0 is the root.
    """

    def __init__(self, chain, backend="grid", tol=EPS_REL):
        self.chain = as_chain(chain)
        self.backend = backend
        self.tol = tol
        n = self.n = self.chain.n
        lo, hi, left, right, parent, depth = [], [], [], [], [], []
        stack = [(1, n, -1, 0, 0)]
        while stack:
            l, h, par, side, d = stack.pop()
            v = len(lo)
            lo.append(l)
            hi.append(h)
            left.append(-1)
            right.append(-1)
            parent.append(par)
            depth.append(d)
            if par >= 0:
                (left if side == 0 else right)[par] = v
            if h - l >= 2:
                m = (l + h + 1) // 2
                stack.append((m, h, v, 1, d + 1))
                stack.append((l, m, v, 0, d + 1))
            elif h - l == 1:
                stack.append((h, h, v, 1, d + 1))
                stack.append((l, l, v, 0, d + 1))
        self.lo = np.array(lo)
        self.hi = np.array(hi)
        self.left = np.array(left)
        self.right = np.array(right)
        self.parent = np.array(parent)
        self.node_depth = np.array(depth)
        self.depth = int(self.node_depth.max())
        V = self.chain.vertices
        scale = self.chain.scale
        self.indexes = [build(V[l - 1:h], backend, tol=tol, scale=scale)
                        for l, h in zip(lo, hi)]
        self.rects = self._rectangles()

    def __len__(self):
        return len(self.lo)

    def is_leaf(self, v):
        return self.left[v] < 0

    def _rectangles(self):
        """Per node, the inclusive (i0, i1, k0, k1) box of pairs for which
        it is a canonical piece (empty when i0 > i1 or k0 > k1)."""
        n = self.n
        lo, hi, parent, left = self.lo, self.hi, self.parent, self.left
        nonleaf = left >= 0
        # smallest non-leaf node starting at j, largest non-leaf node ending at j
        minstart = np.full(n + 2, n + 1)
        np.minimum.at(minstart, lo[nonleaf], hi[nonleaf])
        maxend = np.zeros(n + 2, dtype=int)
        np.maximum.at(maxend, hi[nonleaf], lo[nonleaf])
        rects = np.zeros((len(lo), 4), dtype=int)
        rects[:, 0] = 1
        for v in range(len(lo)):
            p = parent[v]
            if p < 0:
                rects[v] = (1, 0, 1, 0)
                continue
            if left[p] == v:
                r = [1, lo[v] - 1, hi[v] + 1, hi[p]]
            else:
                r = [lo[p], lo[v] - 1, hi[v] + 1, n]
            if not nonleaf[v]:
                j = lo[v]
                if left[p] == v:
                    # drop pairs where a larger node ending at j covers it, and
                    # the single-vertex interior, which the sibling leaf owns
                    r[0] = max(r[0], maxend[j])
                    r[1] = min(r[1], j - 2)
                else:
                    r[3] = min(r[3], minstart[j])
            rects[v] = r
        return rects

    def canonical_decomposition(self, i, k):
        """Maximal nodes covering the interior i+1..k-1 of the pair (i, k),
        left to right. Empty when k <= i + 1."""
        l, r = i + 1, k - 1
        if l > r:
            return []
        lo, hi = self.lo, self.hi
        picked = []
        stack = [0]
        while stack:
            v = stack.pop()
            if hi[v] < l or lo[v] > r:
                continue
            if l <= lo[v] and hi[v] <= r:
                picked.append(v)
                continue
            stack.append(self.right[v])
            stack.append(self.left[v])
        covered = set()
        for v in picked:
            if not self.is_leaf(v):
                covered.update((lo[v], hi[v]))
        pieces = []
        for v in picked:
            if self.is_leaf(v):
                if lo[v] in covered:
                    continue
                covered.add(lo[v])
            pieces.append(v)
        pieces.sort(key=lambda v: (lo[v], hi[v]))
        out, last = [], l - 1
        for v in pieces:
            out.append(CanonicalPiece(int(v), int(lo[v]), int(hi[v]),
                                      int(max(lo[v], last + 1)), int(hi[v])))
            last = hi[v]
        return out


def build_tree(P, backend="grid", tol=EPS_REL):
    return RecursionTree(P, backend, tol)


def canonical_decomposition(tree, i, k):
    return tree.canonical_decomposition(i, k)


class CChainRecognizer(BaseEstimator):
    """Decide the c-chain property, and find the minimum c, for one chain.

    Parameters
    ----------
    backend : {"grid", "naive"}
        Range-search backend used at every tree node.
    tol : float
        Relative slack on the ellipse threshold.
    cache : bool
        Keep the per-node ratio tables between ``decide`` calls. They do not
        depend on c, so bisection reuses them.
    """

    def __init__(self, backend="grid", tol=EPS_REL, cache=True):
        self.backend = backend
        self.tol = tol
        self.cache = cache

    def fit(self, X, y=None):
        self.chain_ = as_chain(X)
        self.tree_ = RecursionTree(self.chain_, self.backend, self.tol)
        self._ratios = {}
        self._cached = 0
        return self

    def _node_ratios(self, v):
        """Largest (|p_i p_j| + |p_j p_k|) / |p_i p_k| over the node's
        vertices j, for every pair in the node's rectangle."""
        if v in self._ratios:
            return self._ratios[v]
        i0, i1, k0, k1 = self.tree_.rects[v]
        V = self.chain_.vertices
        A, B = V[i0 - 1:i1], V[k0 - 1:k1]
        S = self.tree_.indexes[v].max_focal_sums(A, B)
        den = pairwise_dist(A, B)
        floor = self.chain_.floor
        degenerate = den <= floor
        R = np.divide(S, den, out=np.ones_like(S), where=~degenerate)
        if degenerate.any():
            R[degenerate & (S > floor)] = math.inf
        if self.cache and self._cached + R.size <= CACHE_LIMIT:
            self._ratios[v] = R
            self._cached += R.size
        return R

    def _active_nodes(self):
        r = self.tree_.rects
        return np.flatnonzero((r[:, 0] <= r[:, 1]) & (r[:, 2] <= r[:, 3]))

    def decide(self, c):
        check_is_fitted(self)
        c = check_threshold(c)
        P, tree = self.chain_, self.tree_
        n = P.n
        all_pairs = (n - 1) * (n - 2) // 2
        if n == 2:
            return DecisionOutcome(True, None, 0, 0, c)
        if c == 1.0 and is_one_chain(P):
            return DecisionOutcome(True, None, 0, 0, c)

        threshold = c * (1.0 + self.tol)
        active = self._active_nodes()
        rects = tree.rects
        best = None
        for v in active:
            bad = self._node_ratios(v) > threshold
            if not bad.any():
                continue
            rows, cols = np.nonzero(bad)
            i = rows + rects[v, 0]
            k = cols + rects[v, 2]
            key = (k - i) * (n + 1) + i
            a = int(np.argmin(key))
            if best is None or key[a] < best[0]:
                best = (int(key[a]), int(i[a]), int(k[a]))

        if best is None:
            areas = (rects[active, 1] - rects[active, 0] + 1) * (rects[active, 3] - rects[active, 2] + 1)
            return DecisionOutcome(True, None, int(areas.sum()), all_pairs, c)

        _, i, k = best
        d = k - i
        queries = 0
        for v in active:
            i0, i1, k0, k1 = rects[v]
            ii = np.arange(i0, i1 + 1)
            upto = np.minimum(k1, ii + d - 1 + (ii <= i))
            queries += int(np.clip(upto - k0 + 1, 0, None).sum())
        pairs = sum(n - e for e in range(2, d)) + i
        j, extra = self._descend(i, k, c)
        witness = TripleWitness(i, j, k, triple_ratio(P, i, j, k))
        return DecisionOutcome(False, witness, queries + extra, pairs, c)

    def _descend(self, i, k, c):
        """Smallest violating interior vertex of the failing pair (i, k)."""
        tree = self.tree_
        V = self.chain_.vertices
        e = FocalEllipse(tuple(V[i - 1]), tuple(V[k - 1]), c)
        extra = 0
        for piece in tree.canonical_decomposition(i, k):
            v = piece.node
            if tree.indexes[v].all_in(e)[0]:
                continue
            while not tree.is_leaf(v):
                extra += 1
                child = tree.left[v]
                v = child if not tree.indexes[child].all_in(e)[0] else tree.right[v]
            return int(tree.lo[v]), extra
        raise RuntimeError(f"pair ({i}, {k}) was reported failing but no piece fails")

    def min_c(self, rel_tol=1e-9):
        """Bisect on c using ``decide`` and return the certified upper end."""
        check_is_fitted(self)
        if not rel_tol >= 1e-12:
            raise ValueError(f"rel_tol must be >= 1e-12, got {rel_tol}")
        P = self.chain_
        if P.n == 2:
            return MinC(1.0, None, "bisect")
        first = self.decide(1.0)
        if first:
            return MinC(1.0, None, "bisect")
        hi = _upper_bracket(P)
        top = self.decide(hi)
        while not top:
            if top.witness.unbounded:
                return MinC(math.inf, top.witness, "bisect")
            hi *= 2.0
            top = self.decide(hi)
        lo, failing = 1.0, first
        while lo < hi * (1.0 - rel_tol):
            mid = math.sqrt(lo * hi)
            if mid <= lo or mid >= hi:
                break
            out = self.decide(mid)
            if out:
                hi = mid
            else:
                lo, failing = mid, out
        return MinC(hi, failing.witness, "bisect")


def _upper_bracket(P):
    """2 * diameter bound / closest distinct-vertex distance; every bounded
    triple ratio is at most this."""
    V = P.vertices
    span = V.max(axis=0) - V.min(axis=0)
    diag = math.hypot(*span)
    U = np.unique(V, axis=0)
    if len(U) < 2:
        return 2.0
    d, _ = cKDTree(U).query(U, k=2)
    closest = float(d[:, 1].min())
    return max(2.0, 2.0 * diag / closest) * (1.0 + 1e-6)


def decide_c_chain(P, c, backend="grid"):
    return CChainRecognizer(backend=backend).fit(P).decide(c)


def min_c_bisect(P, rel_tol=1e-9, backend="grid"):
    return CChainRecognizer(backend=backend).fit(P).min_c(rel_tol)
