"""Built-in projection methods: random projection, classical and landmark
MDS, and PCA (projection, variance pre-reduction, intrinsic-dimension
support).

All methods are deterministic given (input, seed).  Eigen- and component
vectors follow a fixed sign convention (the entry of largest magnitude is
made positive) so outputs are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataio import DataTable, Embedding

# eigenvalues below this fraction of the largest are treated as zero
_EIG_RTOL = 1e-9

_GS_RANK_TOL = 1e-12
_GS_MAX_RETRIES = 10


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    """Symmetric Euclidean distance matrix with an exactly zero diagonal."""
    pts = np.asarray(points, dtype=np.float64)
    sq = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
    np.fill_diagonal(sq, 0.0)
    return np.sqrt(sq)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        i = int(np.argmax(np.abs(out[:, j])))
        if out[i, j] < 0:
            out[:, j] = -out[:, j]
    return out


# ---------------------------------------------------------------------------
# random projection
# ---------------------------------------------------------------------------

@dataclass
class RpMatrix:
    """n x s projection matrix with orthonormal columns."""

    matrix: np.ndarray
    seed: int | None

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.float64)


def _gram_schmidt(m: np.ndarray) -> np.ndarray | None:
    """Modified Gram-Schmidt; None when a column is (numerically) dependent."""
    q = m.astype(np.float64, copy=True)
    for j in range(q.shape[1]):
        v = q[:, j]
        for i in range(j):
            v -= (q[:, i] @ v) * q[:, i]
        norm = np.sqrt(v @ v)
        if norm < _GS_RANK_TOL:
            return None
        q[:, j] = v / norm
    return q


def random_projection_matrix(n: int, s: int, seed: int | None = None
                             ) -> RpMatrix:
    """Seeded Gaussian matrix with columns orthonormalized."""
    if s > n:
        raise ValueError(f"target dimension s={s} exceeds data dimension n={n}")
    rng = np.random.default_rng(seed)
    for _ in range(_GS_MAX_RETRIES):
        q = _gram_schmidt(rng.normal(size=(n, s)))
        if q is not None:
            return RpMatrix(q, seed)
    raise ValueError(
        f"random projection draw was rank deficient {_GS_MAX_RETRIES} times"
    )


def random_projection(table: DataTable, s: int = 2,
                      seed: int | None = None) -> Embedding:
    """Project onto s random orthonormal directions; deterministic per seed."""
    rp = random_projection_matrix(table.n_cols, s, seed)
    coords = table.points @ rp.matrix
    return Embedding.for_table(table, coords, "rp", {"seed": seed, "s": s})


# ---------------------------------------------------------------------------
# classical / landmark MDS
# ---------------------------------------------------------------------------

def _check_distance_matrix(dist: np.ndarray) -> np.ndarray:
    d = np.asarray(dist, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    if d.shape[0] < 2:
        raise ValueError("distance matrix needs at least two points")
    if not np.isfinite(d).all():
        raise ValueError("distance matrix must be finite")
    if (d < 0).any():
        raise ValueError("distances must be non-negative")
    if np.abs(np.diagonal(d)).max() > 0:
        raise ValueError("distance matrix must have a zero diagonal")
    if not np.allclose(d, d.T, rtol=0, atol=1e-9 * max(1.0, d.max())):
        raise ValueError("distance matrix must be symmetric")
    return d


def _cmds_eig(dist: np.ndarray, s: int
              ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Double-center, eigendecompose, keep the significant top-s pairs.

    Returns (coords m x s, eigvals length s, eigvecs m x s); components
    beyond the positive-spectrum rank are zero-padded so degenerate inputs
    (collinear points, two points) still embed.
    """
    d = _check_distance_matrix(dist)
    m = d.shape[0]
    sq = d ** 2
    row = sq.mean(axis=1, keepdims=True)
    col = sq.mean(axis=0, keepdims=True)
    b = -0.5 * (sq - row - col + sq.mean())
    b = 0.5 * (b + b.T)
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    lam_max = eigvals[0]
    if not lam_max > 0:
        raise ValueError("insufficient intrinsic dimension: "
                         "no positive eigenvalue in the centered matrix")
    rank = int((eigvals > _EIG_RTOL * lam_max).sum())
    keep = min(s, rank)
    vals = np.zeros(s)
    vecs = np.zeros((m, s))
    vals[:keep] = eigvals[:keep]
    vecs[:, :keep] = _fix_signs(eigvecs[:, :keep])
    coords = vecs * np.sqrt(vals)
    return coords, vals, vecs


def classical_mds(dist: np.ndarray, s: int = 2) -> np.ndarray:
    """Embed a symmetric distance matrix into s dimensions.

    Exact on Euclidean-realizable input: re-deriving pairwise distances
    from the coordinates reproduces the matrix.
    """
    coords, _, _ = _cmds_eig(dist, s)
    return coords


def _pick_landmarks(n: int, count: int, seed: int | None,
                    selection: str, points: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if selection == "random":
        return np.sort(rng.choice(n, size=count, replace=False))
    if selection == "maxmin":
        # greedy farthest-point traversal from a random start
        chosen = [int(rng.integers(n))]
        best = ((points - points[chosen[0]]) ** 2).sum(axis=-1)
        while len(chosen) < count:
            nxt = int(np.argmax(best))
            chosen.append(nxt)
            cand = ((points - points[nxt]) ** 2).sum(axis=-1)
            best = np.minimum(best, cand)
        return np.sort(np.asarray(chosen, dtype=np.int64))
    raise ValueError(f"unknown landmark selection '{selection}'")


def landmark_mds(table: DataTable, s: int = 2, landmark_ratio: float = 0.05,
                 seed: int | None = None,
                 selection: str = "random") -> Embedding:
    """Classical MDS on a landmark subset plus distance triangulation.

    Landmarks keep their MDS coordinates; every other point x is placed at
    y = -1/2 * Lp (delta_x - delta_mean), where delta_x holds x's squared
    distances to the landmarks, delta_mean the per-landmark mean of squared
    landmark distances, and the rows of Lp are v_j^T / sqrt(lambda_j).
    With landmark_ratio=1 this reduces to classical MDS on the full table.
    """
    n = table.n_rows
    count = max(s + 1, int(round(landmark_ratio * n)))
    if count > n:
        raise ValueError(
            f"landmark count {count} exceeds table size {n} "
            f"(ratio {landmark_ratio})"
        )
    pts = table.points
    landmarks = _pick_landmarks(n, count, seed, selection, pts)
    lm_pts = pts[landmarks]
    lm_dist = pairwise_distances(lm_pts)
    lm_coords, vals, vecs = _cmds_eig(lm_dist, s)

    coords = np.empty((n, s))
    coords[landmarks] = lm_coords
    rest = np.setdiff1d(np.arange(n), landmarks, assume_unique=True)
    if rest.size:
        # rows of the triangulation operator; zero rows for padded components
        with np.errstate(divide="ignore"):
            inv_sqrt = np.where(vals > 0, 1.0 / np.sqrt(vals), 0.0)
        lp = vecs * inv_sqrt  # (m_l, s), column j = v_j / sqrt(lambda_j)
        delta_mean = (lm_dist ** 2).mean(axis=1)
        sq = ((pts[rest][:, None, :] - lm_pts[None, :, :]) ** 2).sum(axis=-1)
        coords[rest] = -0.5 * (sq - delta_mean) @ lp
    return Embedding.for_table(
        table, coords, "lmds",
        {"seed": seed, "ratio": landmark_ratio, "landmarks": int(count),
         "selection": selection})


# ---------------------------------------------------------------------------
# PCA
# ---------------------------------------------------------------------------

@dataclass
class PcaModel:
    """Mean-centered PCA basis with explained-variance bookkeeping."""

    mean: np.ndarray
    components: np.ndarray  # n x n, orthonormal columns, variance order
    explained_variance_ratio: np.ndarray  # length n, non-increasing, sums to 1


def pca_fit(table: DataTable) -> PcaModel:
    """SVD-based PCA of the mean-centered table."""
    if table.n_rows < 2:
        raise ValueError("PCA requires at least two rows")
    x = table.points
    mean = x.mean(axis=0)
    xc = x - mean
    n = table.n_cols
    # thin SVD yields all n right vectors when N >= n; otherwise take the
    # full decomposition so the component basis stays n x n orthonormal
    _, sing, vt = np.linalg.svd(xc, full_matrices=table.n_rows < n)
    components = _fix_signs(vt.T)
    var = np.zeros(n)
    var[:sing.shape[0]] = sing ** 2
    total = var.sum()
    if total > 0:
        ratio = var / total
    else:  # constant table: call it one degenerate component
        ratio = np.zeros(n)
        ratio[0] = 1.0
    return PcaModel(mean, components, ratio)


def pca_transform(model: PcaModel, table: DataTable, s: int = 2) -> Embedding:
    """Project the table onto the model's leading s components."""
    if s > model.components.shape[1]:
        raise ValueError(f"s={s} exceeds fitted dimension")
    coords = (table.points - model.mean) @ model.components[:, :s]
    return Embedding.for_table(table, coords, "pca", {"s": s})


def components_for_variance(model: PcaModel, fraction: float) -> int:
    """Smallest leading component count reaching the variance fraction."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    cum = np.cumsum(model.explained_variance_ratio)
    d = int(np.searchsorted(cum, fraction - 1e-12)) + 1
    return min(d, model.components.shape[1])


def reduce_variance(table: DataTable, fraction: float) -> DataTable:
    """PCA-reduce the table to the fewest components keeping ``fraction``
    of total variance; labels pass through."""
    model = pca_fit(table)
    d = components_for_variance(model, fraction)
    coords = (table.points - model.mean) @ model.components[:, :d]
    return table.with_points(coords, names=[f"pc{j + 1}" for j in range(d)])
