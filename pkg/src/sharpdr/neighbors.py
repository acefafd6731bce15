"""Exact k-nearest-neighbor search with a deterministic tie-break rule.

Every neighbor ordering in this package is defined by the lexicographic key
(squared Euclidean distance, row index).  Squared distances are used
internally and square-rooted only at the API boundary; the squared values
are always computed as ``((a - b) ** 2).sum(axis=-1)`` so that independent
code paths (tree queries, rank tables, brute-force test oracles) agree
bit-for-bit.

The spatial index is a kd-tree.  Because the tree's own tie handling is
unspecified, queries gather a small candidate superset from the tree,
re-rank it under the canonical key, and fall back to an exhaustive radius
scan for the rare rows where a tie (or a last-ulp discrepancy) straddles
the candidate horizon.  Results are therefore identical to an O(m^2) scan,
tie-break included.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

# relative slack covering kd-tree vs. canonical distance rounding
_BOUNDARY_RTOL = 1e-9

_GATHER_CHUNK = 8192


class NeighborIndex:
    """Immutable exact-kNN index over m points in R^n.

    Safe for concurrent read-only queries; build is single-threaded.
    """

    def __init__(self, points: np.ndarray):
        pts = np.ascontiguousarray(np.asarray(points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("index requires a non-empty 2D point array")
        if not np.isfinite(pts).all():
            raise ValueError("index points must be finite")
        self.points = pts
        self._tree = cKDTree(pts)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_dims(self) -> int:
        return self.points.shape[1]

    def query_all(self, k: int, workers: int = 1
                  ) -> tuple[np.ndarray, np.ndarray]:
        """Self-excluded k nearest neighbors of every indexed point.

        Returns (indices, distances), each of shape (m, k), rows ordered by
        the canonical (squared distance, index) key.
        """
        m = self.n_points
        if not 1 <= k <= m - 1:
            raise ValueError(f"k must be in [1, {m - 1}], got {k}")
        # k+2 candidates: k plus self plus one boundary sentinel
        kq = min(k + 2, m)
        raw_dist, raw_idx = self._tree.query(self.points, k=kq, workers=workers)
        raw_idx = np.atleast_2d(raw_idx)
        raw_dist = np.atleast_2d(raw_dist)

        nb_idx = np.empty((m, k), dtype=np.int64)
        nb_sq = np.empty((m, k), dtype=np.float64)
        for lo in range(0, m, _GATHER_CHUNK):
            hi = min(lo + _GATHER_CHUNK, m)
            idx_c = raw_idx[lo:hi].astype(np.int64, copy=True)
            diff = self.points[idx_c] - self.points[lo:hi, None, :]
            sq = (diff ** 2).sum(axis=-1)
            self_mask = idx_c == np.arange(lo, hi)[:, None]
            sq[self_mask] = np.inf
            order = _lexorder(sq, idx_c)
            sq = np.take_along_axis(sq, order, axis=1)
            idx_c = np.take_along_axis(idx_c, order, axis=1)
            nb_idx[lo:hi] = idx_c[:, :k]
            nb_sq[lo:hi] = sq[:, :k]

        if kq < m:
            # a neighbor candidate beyond the tree horizon could canonically
            # outrank our k-th pick only if the boundary is (near-)tied
            horizon_sq = raw_dist[:, -1] ** 2
            unsafe = nb_sq[:, -1] >= horizon_sq * (1.0 - _BOUNDARY_RTOL)
            for i in np.nonzero(unsafe)[0]:
                idx_i, sq_i = self._query_exhaustive(int(i), k)
                nb_idx[i] = idx_i
                nb_sq[i] = sq_i
        return nb_idx, np.sqrt(nb_sq)

    def query(self, row: int, k: int) -> list[tuple[int, float]]:
        """Self-excluded k nearest neighbors of indexed point ``row``.

        A single-point index has no neighbors to return, so any query on
        it yields an empty list.
        """
        m = self.n_points
        if not 0 <= row < m:
            raise ValueError(f"row must be in [0, {m}), got {row}")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if m == 1:
            return []
        if k > m - 1:
            raise ValueError(f"k must be in [1, {m - 1}], got {k}")
        idx, sq = self._query_exhaustive(row, k)
        return [(int(i), float(np.sqrt(d))) for i, d in zip(idx, sq)]

    def _query_exhaustive(self, row: int, k: int
                          ) -> tuple[np.ndarray, np.ndarray]:
        """Canonical top-k via a radius scan around a tree upper bound."""
        m = self.n_points
        point = self.points[row]
        if k + 1 >= m:
            cand = np.arange(m)
        else:
            bound = self._tree.query(point, k=k + 1)[0][-1]
            radius = bound * (1.0 + _BOUNDARY_RTOL) + 1e-300
            cand = np.asarray(self._tree.query_ball_point(point, radius),
                              dtype=np.int64)
        cand = cand[cand != row]
        sq = ((self.points[cand] - point) ** 2).sum(axis=-1)
        order = np.lexsort((cand, sq))[:k]
        return cand[order], sq[order]


def _lexorder(sq: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Per-row argsort by (value, index); two stable sorts, vectorized."""
    by_idx = np.argsort(idx, axis=1, kind="stable")
    sq_by_idx = np.take_along_axis(sq, by_idx, axis=1)
    by_val = np.argsort(sq_by_idx, axis=1, kind="stable")
    return np.take_along_axis(by_idx, by_val, axis=1)


def build_index(points: np.ndarray) -> NeighborIndex:
    """Build an exact-kNN index; deterministic for identical input."""
    return NeighborIndex(points)


def query_knn(index: NeighborIndex, query_row: int, k: int
              ) -> list[tuple[int, float]]:
    """Ordered (row index, Euclidean distance) for the k nearest neighbors
    of an indexed point, self excluded, ties broken by ascending index."""
    return index.query(query_row, k)


def rank_rows(points: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Neighbor ranks of every point relative to each requested row.

    Entry (q, j) is the rank (1 = nearest) of point j among all points
    ordered by the canonical key around point ``rows[q]``; the self entry
    is 0 and carries no meaning.
    """
    pts = np.asarray(points, dtype=np.float64)
    m = pts.shape[0]
    rows = np.asarray(rows, dtype=np.int64)
    out = np.empty((rows.shape[0], m), dtype=np.int64)
    col = np.arange(m)
    for q, i in enumerate(rows):
        sq = ((pts - pts[i]) ** 2).sum(axis=-1)
        sq[i] = -1.0  # force self first, then drop it from the ranking
        order = np.lexsort((col, sq))
        ranks = np.empty(m, dtype=np.int64)
        ranks[order] = np.arange(m)
        ranks[i] = 0
        out[q] = ranks
    return out


def rank_matrix(points: np.ndarray) -> np.ndarray:
    """Full m x m neighbor-rank table (diagonal 0, unused).

    O(m^2) memory; intended for metric computation at desk scale.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("rank_matrix requires at least two points")
    if not np.isfinite(pts).all():
        raise ValueError("rank_matrix requires finite points")
    return rank_rows(pts, np.arange(pts.shape[0]))
