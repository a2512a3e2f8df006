"""Ellipse range counting over static point sets.

Two interchangeable backends sit behind one interface:

``NaiveScan``
    Tests every stored point.
``GridIndex``
    Buckets points in a uniform grid over their bounding box. Counting
    skips cells outside the query ellipse's bounding box and accepts whole
    cells whose four corners are inside. "All inside" queries are first
    decided on the convex hull of the stored points, since the focal sum is
    a convex function.

Both backends apply the same per-point predicate, so their answers agree
exactly.
"""

import math
import time

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .geometry import (EPS_ABS, EPS_REL, FocalEllipse, convex_hull_indices,
                       inside_mask, pairwise_dist)
from .validation import check_points

BACKENDS = ("naive", "grid")

# elements per temporary (rows x cols x points) block in batched queries
_BLOCK = 1 << 21


class _RangeCounter(BaseEstimator):
    """Shared plumbing: fitting, the per-point predicate, batch queries."""

    def __init__(self, tol=EPS_REL, scale=None):
        self.tol = tol
        self.scale = scale

    def _fit_common(self, X):
        X = check_points(X)
        self.points_ = X
        self.n_points_ = len(X)
        scale = self.scale
        if scale is None:
            scale = max(1.0, float(np.abs(X).max())) if len(X) else 1.0
        self.floor_ = EPS_ABS * scale
        return X

    def _inside(self, P, e):
        f1 = np.asarray(e.f1, dtype=np.float64)
        f2 = np.asarray(e.f2, dtype=np.float64)
        sums = (np.hypot(P[:, 0] - f1[0], P[:, 1] - f1[1])
                + np.hypot(P[:, 0] - f2[0], P[:, 1] - f2[1]))
        focal = np.hypot(f1[0] - f2[0], f1[1] - f2[1])
        return inside_mask(sums, focal, e.c, self.tol, self.floor_)

    @property
    def build_stats(self):
        check_is_fitted(self)
        return {"count": self.n_points_, "build_time": self.build_time_,
                "memory_bytes": self.memory_bytes_}

    def _probe_points(self):
        """Points whose focal sums decide an all-inside query."""
        return self.points_

    def max_focal_sums(self, A, B):
        """For every pair (A[a], B[b]) the largest |p A[a]| + |p B[b]| over
        the probe points; -inf when the set is empty."""
        check_is_fitted(self)
        H = self._probe_points()
        A = np.asarray(A, dtype=np.float64).reshape(-1, 2)
        B = np.asarray(B, dtype=np.float64).reshape(-1, 2)
        out = np.full((len(A), len(B)), -np.inf)
        if len(H) == 0 or out.size == 0:
            return out
        dA = pairwise_dist(A, H)
        dB = pairwise_dist(H, B)
        rows = max(1, _BLOCK // max(1, len(B) * len(H)))
        for s in range(0, len(A), rows):
            blk = dA[s:s + rows, :, None] + dB[None, :, :]
            out[s:s + rows] = blk.max(axis=1)
        return out

    def all_in_pairs(self, A, B, c):
        """Boolean matrix: does E(A[a], B[b], c) contain every point?"""
        S = self.max_focal_sums(A, B)
        focal = pairwise_dist(A, B)
        return inside_mask(np.maximum(S, 0.0), focal, c, self.tol, self.floor_) | (S == -np.inf)


class NaiveScan(_RangeCounter):
    """Linear scan over all stored points."""

    def fit(self, X, y=None):
        t = time.perf_counter()
        self._fit_common(X)
        self.build_time_ = time.perf_counter() - t
        self.memory_bytes_ = self.points_.nbytes
        return self

    def count(self, e):
        check_is_fitted(self)
        if self.n_points_ == 0:
            return 0
        return int(self._inside(self.points_, e).sum())

    def all_in(self, e):
        check_is_fitted(self)
        if self.n_points_ == 0:
            return True, None
        inside = self._inside(self.points_, e)
        if inside.all():
            return True, None
        return False, int(np.argmin(inside))


class GridIndex(_RangeCounter):
    """Uniform grid with cell size max(extent / ceil(sqrt(m)), floor)."""

    def fit(self, X, y=None):
        t = time.perf_counter()
        X = self._fit_common(X)
        m = len(X)
        if m == 0:
            self.origin_ = np.zeros(2)
            self.cell_ = 1.0
            self.shape_ = (1, 1)
            self.order_ = np.empty(0, dtype=np.intp)
            self.offsets_ = np.zeros(2, dtype=np.intp)
            self.hull_ = np.empty(0, dtype=np.intp)
        else:
            lo = X.min(axis=0)
            extent = float((X.max(axis=0) - lo).max())
            cell = max(extent / math.ceil(math.sqrt(m)), self.floor_)
            nx, ny = (np.floor((X.max(axis=0) - lo) / cell).astype(int) + 1)
            ix = np.minimum(((X[:, 0] - lo[0]) / cell).astype(int), nx - 1)
            iy = np.minimum(((X[:, 1] - lo[1]) / cell).astype(int), ny - 1)
            cid = ix * ny + iy
            self.origin_ = lo
            self.cell_ = cell
            self.shape_ = (int(nx), int(ny))
            self.order_ = np.argsort(cid, kind="stable")
            self.offsets_ = np.concatenate(
                ([0], np.cumsum(np.bincount(cid, minlength=nx * ny)))).astype(np.intp)
            self.hull_ = np.asarray(convex_hull_indices(X, tol=0.0), dtype=np.intp)
        self.build_time_ = time.perf_counter() - t
        self.memory_bytes_ = (X.nbytes + self.order_.nbytes + self.offsets_.nbytes
                              + self.hull_.nbytes)
        return self

    def _probe_points(self):
        return self.points_[self.hull_]

    def _classify(self, e):
        """Split candidate cells into fully-inside and boundary cells.

        Returns (ids of fully-inside cells, ids of boundary cells); every
        other cell lies outside the ellipse's bounding box.
        """
        nx, ny = self.shape_
        x0, y0, x1, y1 = e.bbox(self.tol, self.floor_)
        cell = self.cell_
        ox, oy = self.origin_
        i0 = max(int(math.floor((x0 - ox) / cell)), 0)
        i1 = min(int(math.floor((x1 - ox) / cell)), nx - 1)
        j0 = max(int(math.floor((y0 - oy) / cell)), 0)
        j1 = min(int(math.floor((y1 - oy) / cell)), ny - 1)
        if i0 > i1 or j0 > j1:
            empty = np.empty(0, dtype=np.intp)
            return empty, empty
        gi, gj = np.meshgrid(np.arange(i0, i1 + 1), np.arange(j0, j1 + 1), indexing="ij")
        ids = (gi * ny + gj).ravel()
        occupied = self.offsets_[ids + 1] > self.offsets_[ids]
        ids, gi, gj = ids[occupied], gi.ravel()[occupied], gj.ravel()[occupied]
        corners = np.stack([
            np.column_stack((ox + (gi + dx) * cell, oy + (gj + dy) * cell))
            for dx in (0, 1) for dy in (0, 1)
        ])
        full = self._inside(corners.reshape(-1, 2), e).reshape(4, -1).all(axis=0)
        return ids[full], ids[~full]

    def _members(self, ids):
        if len(ids) == 0:
            return np.empty(0, dtype=np.intp)
        return np.concatenate([self.order_[self.offsets_[c]:self.offsets_[c + 1]] for c in ids])

    def count(self, e):
        check_is_fitted(self)
        if self.n_points_ == 0:
            return 0
        full, partial = self._classify(e)
        total = int((self.offsets_[full + 1] - self.offsets_[full]).sum())
        idx = self._members(partial)
        if len(idx):
            total += int(self._inside(self.points_[idx], e).sum())
        return total

    def all_in(self, e):
        check_is_fitted(self)
        if self.n_points_ == 0:
            return True, None
        if self._inside(self.points_[self.hull_], e).all():
            return True, None
        full, partial = self._classify(e)
        keep = np.ones(self.n_points_, dtype=bool)
        keep[self._members(full)] = False
        idx = self._members(partial)
        keep[idx[self._inside(self.points_[idx], e)]] = False
        return False, int(np.flatnonzero(keep)[0])


def build(points, backend="grid", **params):
    """Fit the named backend on ``points``."""
    if backend == "naive":
        return NaiveScan(**params).fit(points)
    if backend == "grid":
        return GridIndex(**params).fit(points)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def count_in_ellipse(idx, e):
    return idx.count(e)


def all_in_ellipse(idx, e):
    """(True, None) or (False, smallest 0-based index of a point outside)."""
    return idx.all_in(e)


def make_ellipse(f1, f2, c):
    return FocalEllipse(tuple(map(float, f1)), tuple(map(float, f2)), float(c))
