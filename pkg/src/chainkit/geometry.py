"""Planar primitives: distances, orientation, segment intersection,
focal-ellipse membership and convex hulls.

Every comparison goes through the two module tolerances: ``EPS_REL`` for
ratios and ``EPS_ABS`` as an absolute floor, scaled by the magnitude of the
coordinates involved.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

EPS_REL = 1e-9
EPS_ABS = 1e-12


class Point(NamedTuple):
    x: float
    y: float


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class IntersectPolicy(str, enum.Enum):
    IGNORE_SHARED_ENDPOINT = "ignore_shared_endpoint"
    STRICT = "strict"


def magnitude(*points):
    """Coordinate scale used to lift ``EPS_ABS`` to the input's units."""
    m = 1.0
    for p in points:
        m = max(m, abs(p[0]), abs(p[1]))
    return m


def dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def pairwise_dist(A, B):
    """Distance matrix between the rows of A (a, 2) and B (b, 2)."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    return np.hypot(A[:, None, 0] - B[None, :, 0], A[:, None, 1] - B[None, :, 1])


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def degenerate(self):
        return self.a[0] == self.b[0] and self.a[1] == self.b[1]

    @property
    def length(self):
        return dist(self.a, self.b)


@dataclass(frozen=True)
class FocalEllipse:
    """Points whose focal distance sum is at most ``c * |f1 f2|``."""

    f1: Point
    f2: Point
    c: float

    def __post_init__(self):
        if not self.c >= 1.0:
            raise ValueError(f"ellipse threshold must be >= 1, got {self.c}")

    @property
    def focal_distance(self):
        return dist(self.f1, self.f2)

    def bbox(self, tol=EPS_REL, floor=None):
        """Axis-aligned box around the ellipse, padded for the tolerance.

        The box is the hull of the four corners of the focal-frame bounding
        rectangle, so it is conservative but never misses a member.
        """
        if floor is None:
            floor = EPS_ABS * magnitude(self.f1, self.f2)
        f = self.focal_distance
        cx = 0.5 * (self.f1[0] + self.f2[0])
        cy = 0.5 * (self.f1[1] + self.f2[1])
        if f <= floor:
            r = 2.0 * floor
            return cx - r, cy - r, cx + r, cy + r
        major = 0.5 * self.c * f * (1.0 + tol)
        minor = math.sqrt(max(major * major - 0.25 * f * f, 0.0))
        ux = (self.f2[0] - self.f1[0]) / f
        uy = (self.f2[1] - self.f1[1]) / f
        hx = major * abs(ux) + minor * abs(uy)
        hy = major * abs(uy) + minor * abs(ux)
        pad = 4.0 * floor + 1e-15 * (hx + hy)
        return cx - hx - pad, cy - hy - pad, cx + hx + pad, cy + hy + pad


def inside_mask(sums, focal, c, tol=EPS_REL, floor=EPS_ABS):
    """Vectorised focal-sum predicate.

    ``sums`` holds |p f1| + |p f2| and ``focal`` holds |f1 f2| (broadcastable).
    A degenerate focal segment (length <= floor) admits only points within
    the floor of the foci. Containment is closed.
    """
    sums = np.asarray(sums, dtype=np.float64)
    focal = np.asarray(focal, dtype=np.float64)
    degenerate = focal <= floor
    ratio = np.divide(sums, focal, out=np.zeros(np.broadcast(sums, focal).shape),
                      where=~degenerate)
    return np.where(degenerate, sums <= floor, ratio <= c * (1.0 + tol))


def ellipse_contains(e, p, tol=EPS_REL, scale=None):
    """Closed membership of ``p`` in the focal ellipse ``e``."""
    if scale is None:
        scale = magnitude(e.f1, e.f2, p)
    floor = EPS_ABS * scale
    s = dist(p, e.f1) + dist(p, e.f2)
    f = e.focal_distance
    if f <= floor:
        return s <= floor
    return s / f <= e.c * (1.0 + tol)


def _orientation_tol(*points):
    return EPS_ABS * magnitude(*points) ** 2


def cross(p, q, r):
    """Doubled signed area of the triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p, q, r, tol=None):
    if tol is None:
        tol = _orientation_tol(p, q, r)
    area = cross(p, q, r)
    if area > tol:
        return Orientation.LEFT
    if area < -tol:
        return Orientation.RIGHT
    return Orientation.COLLINEAR


def _on_box(p, a, b, tol):
    return (min(a[0], b[0]) - tol <= p[0] <= max(a[0], b[0]) + tol
            and min(a[1], b[1]) - tol <= p[1] <= max(a[1], b[1]) + tol)


def _same(p, q, tol):
    return abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol


def _overlap_length(a, b, c, d):
    """Length of the common part of two collinear segments."""
    ax = 0 if abs(b[0] - a[0]) + abs(d[0] - c[0]) >= abs(b[1] - a[1]) + abs(d[1] - c[1]) else 1
    lo = max(min(a[ax], b[ax]), min(c[ax], d[ax]))
    hi = min(max(a[ax], b[ax]), max(c[ax], d[ax]))
    if hi <= lo:
        return 0.0
    # project the axis overlap back onto the common line
    span = max(abs(b[ax] - a[ax]), abs(d[ax] - c[ax]))
    length = max(dist(a, b), dist(c, d))
    return (hi - lo) * (length / span if span > 0 else 1.0)


def segments_intersect(s1, s2, policy=IntersectPolicy.STRICT, tol=None):
    """Whether two closed segments share a point.

    Under ``IGNORE_SHARED_ENDPOINT`` a contact consisting of exactly one
    endpoint common to both segments is not reported; collinear overlap of
    positive length still is.
    """
    a, b = s1.a, s1.b
    c, d = s2.a, s2.b
    policy = IntersectPolicy(policy)
    scale = magnitude(a, b, c, d)
    if tol is None:
        tol = EPS_ABS * scale * scale
    lin = EPS_ABS * scale
    o1, o2 = orientation(a, b, c, tol), orientation(a, b, d, tol)
    o3, o4 = orientation(c, d, a, tol), orientation(c, d, b, tol)

    if policy is IntersectPolicy.IGNORE_SHARED_ENDPOINT:
        shared = [(p, q) for p in (a, b) for q in (c, d) if _same(p, q, lin)]
        if shared:
            collinear = all(o == Orientation.COLLINEAR for o in (o1, o2, o3, o4))
            if not collinear:
                if len(shared) > 1:
                    return True
                # two non-parallel segments meet in one point at most, unless
                # one is degenerate and lies on the other
                return False
            return _overlap_length(a, b, c, d) > lin

    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_box(c, a, b, lin)) or (o2 == 0 and _on_box(d, a, b, lin))
            or (o3 == 0 and _on_box(a, c, d, lin)) or (o4 == 0 and _on_box(b, c, d, lin)))


def segment_hits(a, b, C, D, tol, lin):
    """Vectorised strict test of segment ab against segments C[i]D[i]."""
    def orient(p, q, R):
        area = (q[0] - p[0]) * (R[:, 1] - p[1]) - (q[1] - p[1]) * (R[:, 0] - p[0])
        return np.where(area > tol, 1, np.where(area < -tol, -1, 0))

    def orient_rev(P, Q, r):
        area = (Q[:, 0] - P[:, 0]) * (r[1] - P[:, 1]) - (Q[:, 1] - P[:, 1]) * (r[0] - P[:, 0])
        return np.where(area > tol, 1, np.where(area < -tol, -1, 0))

    def on_box(P, A, B):
        return ((np.minimum(A[..., 0], B[..., 0]) - lin <= P[..., 0])
                & (P[..., 0] <= np.maximum(A[..., 0], B[..., 0]) + lin)
                & (np.minimum(A[..., 1], B[..., 1]) - lin <= P[..., 1])
                & (P[..., 1] <= np.maximum(A[..., 1], B[..., 1]) + lin))

    o1, o2 = orient(a, b, C), orient(a, b, D)
    o3, o4 = orient_rev(C, D, a), orient_rev(C, D, b)
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    hit |= (o1 == 0) & on_box(C, a, b)
    hit |= (o2 == 0) & on_box(D, a, b)
    hit |= (o3 == 0) & on_box(np.broadcast_to(a, C.shape), C, D)
    hit |= (o4 == 0) & on_box(np.broadcast_to(b, C.shape), C, D)
    return hit


def convex_hull_indices(points, tol=None):
    """Indices of the convex hull vertices, counterclockwise.

    Andrew's monotone chain. Points within ``tol`` (doubled area) of a hull
    edge are dropped; ``tol=0`` drops only exactly collinear points.
    """
    P = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    m = len(P)
    if m == 0:
        return []
    if tol is None:
        tol = EPS_ABS * max(1.0, float(np.abs(P).max())) ** 2
    order = np.lexsort((P[:, 1], P[:, 0]))
    pts = P.tolist()
    uniq = [int(order[0])]
    for idx in order[1:]:
        if pts[idx] != pts[uniq[-1]]:
            uniq.append(int(idx))
    if len(uniq) < 3:
        return uniq

    def half(seq):
        out = []
        for idx in seq:
            r = pts[idx]
            while len(out) >= 2:
                p, q = pts[out[-2]], pts[out[-1]]
                if (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) <= tol:
                    out.pop()
                else:
                    break
            out.append(idx)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        return [uniq[0], uniq[-1]]
    return hull


def convex_hull(points, tol=None):
    P = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return [Point(float(P[i, 0]), float(P[i, 1])) for i in convex_hull_indices(P, tol)]
