"""Neighborhood-based projection quality metrics and dataset traits.

The four metrics compare k-neighborhoods between a data space and an
embedding (or inspect a single labeled point set):

* trustworthiness -- penalizes false neighbors: points in the embedding's
  k-neighborhood of i that are not among i's k nearest data neighbors,
  weighted by how far down the data ranking they sit::

      Qt(k) = 1 - 2 / (N k (2N - 3k - 1)) * sum_i sum_{j in U_k(i)} (r(i,j) - k)

* continuity -- the mirror image: data neighbors missing from the
  embedding neighborhood, weighted by embedding ranks.

* jaccard_nn -- mean Jaccard similarity of the two k-neighbor sets.

* neighborhood_hit -- fraction of a point's k nearest neighbors sharing
  its class label, averaged over points; applicable to an embedding or to
  the (sharpened) data itself.

All neighborhoods are self-excluded and every ordering uses the package's
canonical (squared distance, row index) tie-break, which keeps the values
exactly reproducible; penalty sums are integer accumulations, so results
do not depend on chunking or worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataio import DataTable
from .neighbors import NeighborIndex, rank_rows
from .project import pca_fit

DEFAULT_K_GRID = (10, 25, 50, 100, 200, 400, 700, 1000)

_CHUNK = 512


def _points(x) -> np.ndarray:
    pts = np.asarray(x, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("expected a 2D point array")
    return pts


def _paired(data, embedding) -> tuple[np.ndarray, np.ndarray]:
    d = _points(data)
    e = _points(embedding)
    if d.shape[0] != e.shape[0]:
        raise ValueError(
            f"point sets must have equal cardinality, got {d.shape[0]} "
            f"and {e.shape[0]}"
        )
    if d.shape[0] < 2:
        raise ValueError("metrics need at least two points")
    return d, e


def max_k_trustworthiness(m: int) -> int:
    """Largest k the Qt/Qc normalizer admits (k < m/2)."""
    return (m - 1) // 2


def _check_k_rank(k: int, m: int) -> None:
    if not 1 <= k < m / 2:
        raise ValueError(f"k out of range: need 1 <= k < {m}/2, got {k}")


def _rank_penalty(rank_space: np.ndarray, knn_other: np.ndarray,
                  k: int) -> int:
    """Integer sum of (rank - k) over neighbors ranked beyond k."""
    total = 0
    for lo in range(0, rank_space.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, rank_space.shape[0])
        ranks = rank_rows(rank_space, np.arange(lo, hi))
        picked = np.take_along_axis(ranks, knn_other[lo:hi], axis=1)
        over = picked > k
        total += int((picked[over] - k).sum())
    return total


def trustworthiness(data, embedding, k: int) -> float:
    """Penalty for false neighbors; 1 is best, valid for 1 <= k < m/2."""
    d, e = _paired(data, embedding)
    m = d.shape[0]
    _check_k_rank(k, m)
    knn_emb = NeighborIndex(e).query_all(k)[0]
    penalty = _rank_penalty(d, knn_emb, k)
    return 1.0 - 2.0 * penalty / (m * k * (2 * m - 3 * k - 1))


def continuity(data, embedding, k: int) -> float:
    """Penalty for missing neighbors; 1 is best, valid for 1 <= k < m/2."""
    d, e = _paired(data, embedding)
    m = d.shape[0]
    _check_k_rank(k, m)
    knn_data = NeighborIndex(d).query_all(k)[0]
    penalty = _rank_penalty(e, knn_data, k)
    return 1.0 - 2.0 * penalty / (m * k * (2 * m - 3 * k - 1))


def jaccard_nn(data, embedding, k: int) -> float:
    """Mean Jaccard similarity of the k-neighbor sets in both spaces."""
    d, e = _paired(data, embedding)
    m = d.shape[0]
    if not 1 <= k <= m - 1:
        raise ValueError(f"k out of range: need 1 <= k <= {m - 1}, got {k}")
    knn_d = NeighborIndex(d).query_all(k)[0]
    knn_e = NeighborIndex(e).query_all(k)[0]
    inter = np.zeros(m, dtype=np.int64)
    scratch = np.zeros(m, dtype=bool)
    for i in range(m):
        scratch[knn_d[i]] = True
        inter[i] = int(scratch[knn_e[i]].sum())
        scratch[knn_d[i]] = False
    union = 2 * k - inter
    # exactly-rounded sum: the value is independent of accumulation order
    return math.fsum(inter / union) / m


def neighborhood_hit(points, labels, k: int) -> float:
    """Mean fraction of each point's k nearest neighbors sharing its label."""
    pts = _points(points)
    m = pts.shape[0]
    if labels is None:
        raise ValueError("neighborhood_hit requires labels for all rows")
    labels = np.asarray([str(v) for v in labels])
    if labels.shape[0] != m:
        raise ValueError(f"expected {m} labels, got {labels.shape[0]}")
    if not 1 <= k <= m - 1:
        raise ValueError(f"k out of range: need 1 <= k <= {m - 1}, got {k}")
    codes = np.unique(labels, return_inverse=True)[1]
    knn = NeighborIndex(pts).query_all(k)[0]
    hits = int((codes[knn] == codes[:, None]).sum())
    return hits / (m * k)


# ---------------------------------------------------------------------------
# metric report
# ---------------------------------------------------------------------------

@dataclass
class MetricReport:
    """Per-k metric values; None marks a metric invalid at that k."""

    ks: list[int]
    qt: list[float | None]
    qc: list[float | None]
    qj: list[float | None]
    qh: list[float | None]
    n_rows: int
    metadata: dict = field(default_factory=dict)

    def rows(self) -> list[tuple]:
        return list(zip(self.ks, self.qt, self.qc, self.qj, self.qh))

    def to_csv(self, path) -> None:
        lines = ["k,Qt,Qc,Qj,Qh"]
        for k, qt, qc, qj, qh in self.rows():
            cells = [str(k)] + [
                "" if v is None else repr(float(v)) for v in (qt, qc, qj, qh)
            ]
            lines.append(",".join(cells))
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "metadata": self.metadata,
            "values": [
                {"k": k, "Qt": qt, "Qc": qc, "Qj": qj, "Qh": qh}
                for k, qt, qc, qj, qh in self.rows()
            ],
        }


def metric_report(data: np.ndarray | None, embedding: np.ndarray | None,
                  labels: list[str] | None,
                  k_grid=DEFAULT_K_GRID,
                  metadata: dict | None = None) -> MetricReport:
    """Evaluate every applicable metric over a k grid.

    With both point sets: Qt/Qc/Qj (Qt/Qc only where k < m/2) plus Qh on
    the embedding when labels exist.  With a single point set: Qh only.
    Requested k values outside a metric's valid range yield None.
    """
    if data is None and embedding is None:
        raise ValueError("need at least one point set")
    ref = _points(embedding if embedding is not None else data)
    m = ref.shape[0]
    ks = sorted({int(k) for k in k_grid if 1 <= int(k) <= m - 1})
    if not ks:
        raise ValueError(f"no usable k in grid for m={m}")
    qt: list[float | None] = []
    qc: list[float | None] = []
    qj: list[float | None] = []
    qh: list[float | None] = []
    both = data is not None and embedding is not None
    hit_space = embedding if embedding is not None else data
    for k in ks:
        rank_ok = both and k < m / 2
        qt.append(trustworthiness(data, embedding, k) if rank_ok else None)
        qc.append(continuity(data, embedding, k) if rank_ok else None)
        qj.append(jaccard_nn(data, embedding, k) if both else None)
        qh.append(neighborhood_hit(hit_space, labels, k)
                  if labels is not None else None)
    return MetricReport(ks, qt, qc, qj, qh, m, dict(metadata or {}))


# ---------------------------------------------------------------------------
# dataset traits
# ---------------------------------------------------------------------------

@dataclass
class TraitReport:
    """Size / dimensionality / intrinsic-dimension / class-count traits."""

    n_rows: int
    size_class: str
    n_cols: int
    dim_class: str
    idr: float
    idr_class: str
    class_count: int | None = None
    class_count_class: str | None = None
    subclass_count: int | None = None
    subclass_count_class: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _size_class(n: int) -> str:
    if n <= 1000:
        return "small"
    return "medium" if n <= 3000 else "large"


def _dim_class(n: int) -> str:
    if n < 10:
        return "low"
    return "medium" if n < 100 else "high"


def _idr_class(v: float) -> str:
    if v < 0.1:
        return "low"
    return "medium" if v < 0.5 else "high"


def _class_count_class(g: int) -> str:
    if g <= 2:
        return "small"
    return "medium" if g <= 5 else "large"


def intrinsic_dimensionality_ratio(table: DataTable,
                                   variance: float = 0.95) -> float:
    """Fraction of principal components needed for the variance target."""
    model = pca_fit(table)
    cum = np.cumsum(model.explained_variance_ratio)
    d = int(np.searchsorted(cum, variance - 1e-12)) + 1
    return min(d, table.n_cols) / table.n_cols


def data_traits(table: DataTable,
                subclass_count: int | None = None) -> TraitReport:
    """Classify the table per the size/dimensionality/IDR/class taxonomy."""
    idr = intrinsic_dimensionality_ratio(table)
    report = TraitReport(
        n_rows=table.n_rows,
        size_class=_size_class(table.n_rows),
        n_cols=table.n_cols,
        dim_class=_dim_class(table.n_cols),
        idr=idr,
        idr_class=_idr_class(idr),
    )
    if table.labels is not None:
        g = len(set(table.labels))
        report.class_count = g
        report.class_count_class = _class_count_class(g)
    if subclass_count is not None:
        report.subclass_count = subclass_count
        report.subclass_count_class = _class_count_class(subclass_count)
    return report
