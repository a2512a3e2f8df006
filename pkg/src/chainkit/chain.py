"""Polygonal chains and the exact, brute-force reference computations.

Vertex indices in every public result are 1-based.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import InvalidParams, ZeroBaseline
from .geometry import (EPS_ABS, EPS_REL, IntersectPolicy, Point, Segment,
                       pairwise_dist, segment_hits, segments_intersect)
from .validation import check_points, check_threshold

UNBOUNDED = math.inf


class PolygonalChain:
    """An immutable sequence of n >= 2 planar vertices."""

    __slots__ = ("_v",)

    def __init__(self, vertices):
        v = check_points(vertices, min_points=2, name="vertices")
        v = np.array(v, dtype=np.float64)
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self):
        return self._v

    @property
    def n(self):
        return len(self._v)

    def __len__(self):
        return len(self._v)

    def __iter__(self):
        return (Point(float(x), float(y)) for x, y in self._v)

    def vertex(self, i):
        """The i-th vertex, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexError(f"vertex index {i} out of range 1..{self.n}")
        return Point(float(self._v[i - 1, 0]), float(self._v[i - 1, 1]))

    def segment(self, s):
        return Segment(self.vertex(s), self.vertex(s + 1))

    @property
    def scale(self):
        return max(1.0, float(np.abs(self._v).max()))

    @property
    def floor(self):
        return EPS_ABS * self.scale

    @property
    def degenerate(self):
        """True when some consecutive vertices coincide."""
        return bool(np.any(np.all(self._v[1:] == self._v[:-1], axis=1)))

    def __eq__(self, other):
        if not isinstance(other, PolygonalChain):
            return NotImplemented
        return np.array_equal(self._v, other._v)

    def __hash__(self):
        return hash(self._v.tobytes())

    def __repr__(self):
        return f"PolygonalChain(n={self.n})"


def as_chain(P):
    return P if isinstance(P, PolygonalChain) else PolygonalChain(P)


@dataclass(frozen=True)
class TripleWitness:
    i: int
    j: int
    k: int
    ratio: float

    @property
    def unbounded(self):
        return math.isinf(self.ratio)

    def __str__(self):
        return f"{self.i} {self.j} {self.k} ratio {self.ratio:.8f}"


@dataclass(frozen=True)
class MinC:
    value: float
    witness: Optional[TripleWitness] = None
    method: str = "brute"

    @property
    def unbounded(self):
        return math.isinf(self.value)


def segment_lengths(P):
    v = as_chain(P).vertices
    return np.hypot(np.diff(v[:, 0]), np.diff(v[:, 1]))


def chain_length(P):
    return float(segment_lengths(P).sum())


def stretch_factor(P):
    P = as_chain(P)
    base = float(pairwise_dist(P.vertices[:1], P.vertices[-1:])[0, 0])
    if base <= P.floor:
        raise ZeroBaseline("endpoints coincide; stretch factor is undefined")
    return chain_length(P) / base


def _ratio(num, den, floor):
    if den <= floor:
        return UNBOUNDED if num > floor else 1.0
    return num / den


def triple_ratio(P, i, j, k):
    """(|p_i p_j| + |p_j p_k|) / |p_i p_k| for 1-based i < j < k."""
    P = as_chain(P)
    if not 1 <= i < j < k <= P.n:
        raise IndexError(f"need 1 <= i < j < k <= {P.n}, got ({i}, {j}, {k})")
    D = pairwise_dist(P.vertices[[i - 1, j - 1]], P.vertices[[j - 1, k - 1]])
    return float(_ratio(D[0, 0] + D[1, 1], D[0, 1], P.floor))


def min_c_bruteforce(P):
    """Largest triple ratio over all i < j < k, with the first maximiser.

    Theta(n^3) work, vectorised over (j, k) for each i. Ties resolve to the
    lexicographically smallest triple.
    """
    P = as_chain(P)
    n = P.n
    if n == 2:
        return MinC(1.0, None, "brute")
    D = pairwise_dist(P.vertices, P.vertices)
    floor = P.floor
    lower = np.tril(np.ones((n - 2, n - 2), dtype=bool), -1)
    best, arg = -1.0, None
    for i in range(n - 2):
        m = n - i - 2
        # rows: j = i+1 .. n-2, columns: k = i+2 .. n-1 (0-based)
        num = D[i, i + 1:n - 1, None] + D[i + 1:n - 1, i + 2:n]
        den = D[i, i + 2:n]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = num / den
        bad = den <= floor
        if bad.any():
            ratio[:, bad] = np.where(num[:, bad] > floor, UNBOUNDED, 1.0)
        np.copyto(ratio, -1.0, where=lower[:m, :m])
        flat = int(np.argmax(ratio))
        value = ratio.flat[flat]
        if value > best:
            r, col = divmod(flat, m)
            best, arg = float(value), (i + 1, i + r + 2, i + col + 3)
    return MinC(best, TripleWitness(*arg, best), "brute")


def is_c_chain_bruteforce(P, c):
    """(True, None) if every triple satisfies the c-chain inequality, else
    (False, witness) with the maximising triple."""
    c = check_threshold(c)
    res = min_c_bruteforce(P)
    if res.value <= c * (1.0 + EPS_REL):
        return True, None
    return False, res.witness


def is_one_chain(P):
    """Linear-time test for 1-chains: every vertex lies on the line p_1 p_n,
    in index order."""
    P = as_chain(P)
    v = P.vertices
    floor = P.floor
    d = v[-1] - v[0]
    length = math.hypot(*d)
    if length <= floor:
        return bool(np.all(np.abs(v - v[0]) <= floor))
    u = d / length
    rel = v - v[0]
    along = rel @ u
    perp = rel[:, 0] * u[1] - rel[:, 1] * u[0]
    return bool(np.all(np.abs(perp) <= floor) and np.all(np.diff(along) >= 0.0))


def is_simple(P):
    """(True, None) if only consecutive segments touch, and only at their
    shared endpoint; otherwise (False, (s, t)) with the lexicographically
    smallest offending pair of 1-based segment indices."""
    P = as_chain(P)
    v = P.vertices
    nseg = P.n - 1
    scale = P.scale
    tol = EPS_ABS * scale * scale
    lin = EPS_ABS * scale
    lo = np.minimum(v[:-1], v[1:])
    hi = np.maximum(v[:-1], v[1:])
    consecutive_bad = [
        segments_intersect(P.segment(s), P.segment(s + 1),
                           IntersectPolicy.IGNORE_SHARED_ENDPOINT, tol)
        for s in range(1, nseg)
    ]
    for s in range(nseg):
        if s + 1 < nseg and consecutive_bad[s]:
            return False, (s + 1, s + 2)
        if s + 2 >= nseg:
            continue
        # bounding-box prefilter before the exact test
        cand = np.nonzero(np.all(lo[s + 2:] <= hi[s] + lin, axis=1)
                          & np.all(hi[s + 2:] >= lo[s] - lin, axis=1))[0]
        if len(cand) == 0:
            continue
        t = cand + s + 2
        hits = segment_hits(v[s], v[s + 1], v[t], v[t + 1], tol, lin)
        if hits.any():
            return False, (s + 1, int(t[np.argmax(hits)]) + 1)
    return True, None


def transform(P, rotation=0.0, scale=1.0, translation=(0.0, 0.0)):
    """Rotate (radians) about the origin, scale, then translate."""
    if not scale > 0:
        raise InvalidParams(f"scale must be positive, got {scale}")
    P = as_chain(P)
    c, s = math.cos(rotation), math.sin(rotation)
    R = np.array([[c, -s], [s, c]])
    return PolygonalChain(scale * (P.vertices @ R.T) + np.asarray(translation, dtype=np.float64))
