"""Seeded synthetic benchmark generators.

The five mixture presets reproduce the standard five-cluster benchmark
layouts (N=5K, n=20 by default):

* type1 -- equal-variance clusters with an even spread of inter-cluster
  distances (centers on a regular simplex frame);
* type2 -- even center spread, unequal intra-cluster densities;
* type3 -- skewed center spacing (a chain with growing gaps);
* type4 -- two pairs of nearby subclusters plus one isolated cluster;
* type5 -- type1 with Gaussian noise added at SNR = 10 dB.

The exact center coordinates are this library's own reconstruction; tests
rely on the qualitative structure (cluster counts, densities, metric
deltas), not on specific positions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataio import DataTable

MIXTURE_PRESETS = ("type1", "type2", "type3", "type4")
NOISY_PRESET = "type5"
SPECIAL_KINDS = ("lognormal2d", "hypersphere_outliers", "uniform_cube")

# tuned so clusters are distinct but their tails interact: sharpening has
# measurable headroom at neighborhood sizes up to the cluster size.  Center
# frames spread the between-cluster variance over several axes so that the
# sharpening step's per-column normalization cannot crush the separating
# direction.
_PRESET_SEP = 5.0


@dataclass
class ClusterSpec:
    center: np.ndarray
    stdev: np.ndarray  # scalar or per-dimension
    count: int
    label: str

    def __post_init__(self):
        self.center = np.atleast_1d(np.asarray(self.center, dtype=np.float64))
        self.stdev = np.atleast_1d(np.asarray(self.stdev, dtype=np.float64))
        if self.count < 1:
            raise ValueError("cluster count must be >= 1")
        if (self.stdev <= 0).any():
            raise ValueError("cluster stdev must be > 0")


@dataclass
class MixtureSpec:
    n_dims: int
    clusters: list[ClusterSpec]
    seed: int | None = None

    def __post_init__(self):
        if self.n_dims < 1:
            raise ValueError("n_dims must be >= 1")
        if not self.clusters:
            raise ValueError("need at least one cluster")
        for c in self.clusters:
            if c.center.shape[0] != self.n_dims:
                raise ValueError("cluster center dimension mismatch")
            if c.stdev.shape[0] not in (1, self.n_dims):
                raise ValueError("stdev must be scalar or per-dimension")


def gen_mixture(spec: MixtureSpec) -> DataTable:
    """Sample the Gaussian mixture; labels are the cluster ids."""
    rng = np.random.default_rng(spec.seed)
    blocks = []
    labels: list[str] = []
    for c in spec.clusters:
        stdev = np.broadcast_to(c.stdev, (spec.n_dims,))
        blocks.append(rng.normal(c.center, stdev, size=(c.count, spec.n_dims)))
        labels.extend([c.label] * c.count)
    return DataTable(np.concatenate(blocks), labels=labels)


def _frame_centers(n_dims: int, count: int, sep: float) -> np.ndarray:
    """Pairwise-equidistant centers: sep * e_i for the first ``count`` axes."""
    centers = np.zeros((count, n_dims))
    for i in range(count):
        centers[i, i] = sep
    return centers


def preset_spec(name: str, n_points: int = 5000, n_dims: int = 20,
                seed: int | None = None) -> MixtureSpec:
    """Mixture layout for presets type1..type4 (type5 = type1 + noise)."""
    if name not in MIXTURE_PRESETS:
        raise ValueError(
            f"unknown preset '{name}', expected one of "
            f"{MIXTURE_PRESETS + (NOISY_PRESET,)}"
        )
    n_clusters = 5
    per = n_points // n_clusters
    counts = [per] * n_clusters
    counts[-1] += n_points - per * n_clusters
    sep = _PRESET_SEP

    if name == "type1":
        centers = _frame_centers(n_dims, n_clusters, sep)
        stdevs = [1.0] * n_clusters
    elif name == "type2":
        # in 20 dimensions density scales with stdev^-20, so this mild
        # spread already separates per-cluster densities by factor ~400
        centers = _frame_centers(n_dims, n_clusters, sep)
        stdevs = [0.85, 0.925, 1.0, 1.075, 1.15]
    elif name == "type3":
        # a chain through successive axes with growing gaps: adjacent
        # center distances 5.5 / 7 / 10 / 14 give the skewed spread
        gaps = np.array([5.5, 7.0, 10.0, 14.0]) * (sep / 5.0)
        centers = np.zeros((n_clusters, n_dims))
        for i, g in enumerate(gaps, start=1):
            centers[i] = centers[i - 1]
            centers[i, i - 1] += g
        stdevs = [1.0] * n_clusters
    else:  # type4: two close pairs of subclusters plus one isolated cluster
        base = sep * 1.6
        centers = np.zeros((n_clusters, n_dims))
        centers[0, 0] = base
        centers[1, 0] = base
        centers[1, 3] = 3.0
        centers[2, 1] = base
        centers[3, 1] = base
        centers[3, 4] = 3.0
        centers[4, 2] = base
        stdevs = [1.0] * n_clusters
    clusters = [
        ClusterSpec(centers[i], np.array([stdevs[i]]), counts[i], f"c{i}")
        for i in range(n_clusters)
    ]
    return MixtureSpec(n_dims, clusters, seed)


def gen_preset(name: str, seed: int | None = None, n_points: int = 5000,
               n_dims: int = 20) -> DataTable:
    """Generate a preset data set; type5 applies SNR-10 noise to type1."""
    if name == NOISY_PRESET:
        base = gen_mixture(preset_spec("type1", n_points, n_dims, seed))
        noise_seed = None if seed is None else seed + 1_000_003
        return add_noise_snr(base, 10.0, seed=noise_seed)
    return gen_mixture(preset_spec(name, n_points, n_dims, seed))


def signal_power(points: np.ndarray) -> float:
    """Mean squared deviation from the per-column means (total variance)."""
    pts = np.asarray(points, dtype=np.float64)
    return float(((pts - pts.mean(axis=0)) ** 2).mean())


def add_noise_snr(table: DataTable, snr_db: float,
                  seed: int | None = None) -> DataTable:
    """Add i.i.d. Gaussian noise at the requested signal-to-noise ratio.

    The noise variance solves SNR = 10 log10(Ps / sigma^2) with Ps the
    table's total variance; labels are unchanged.
    """
    if not np.isfinite(snr_db):
        raise ValueError("snr_db must be finite")
    rng = np.random.default_rng(seed)
    sigma2 = signal_power(table.points) / 10.0 ** (snr_db / 10.0)
    noise = rng.normal(0.0, np.sqrt(sigma2), size=table.points.shape)
    return table.with_points(table.points + noise, names=table.names)


def _uniform_in_ball(rng: np.random.Generator, count: int, n_dims: int,
                     radius: float) -> np.ndarray:
    """Exactly uniform samples in an n-ball: Gaussian direction, U^(1/n) radius."""
    direction = rng.normal(size=(count, n_dims))
    direction /= np.sqrt((direction ** 2).sum(axis=1))[:, None]
    r = radius * rng.uniform(size=count) ** (1.0 / n_dims)
    return direction * r[:, None]


def _on_sphere(rng: np.random.Generator, count: int, n_dims: int,
               radius: float) -> np.ndarray:
    direction = rng.normal(size=(count, n_dims))
    direction /= np.sqrt((direction ** 2).sum(axis=1))[:, None]
    return direction * radius


def gen_special(kind: str, params: dict | None = None,
                seed: int | None = None) -> DataTable:
    """Non-mixture benchmark data sets.

    * ``lognormal2d`` -- 2D log-normal(mu=0, sigma=1) clusters placed by
      multiplicative shifts (keeps every value positive).
    * ``hypersphere_outliers`` -- points uniform in an n-ball of the given
      radius plus a few outliers pinned to a fixed outer sphere.
    * ``uniform_cube`` -- structureless uniform samples in a hypercube.
    """
    params = dict(params or {})
    rng = np.random.default_rng(seed)
    if kind == "lognormal2d":
        n_points = int(params.pop("n_points", 10_000))
        n_clusters = int(params.pop("clusters", 3))
        scale = float(params.pop("scale", 6.0))
        _reject_extra(kind, params)
        per = n_points // n_clusters
        counts = [per] * n_clusters
        counts[-1] += n_points - per * n_clusters
        blocks, labels = [], []
        for c in range(n_clusters):
            shift = 1.0 + scale * c
            blocks.append(shift * np.exp(rng.normal(size=(counts[c], 2))))
            labels.extend([f"c{c}"] * counts[c])
        return DataTable(np.concatenate(blocks), labels=labels)
    if kind == "hypersphere_outliers":
        n_points = int(params.pop("n_points", 5000))
        n_dims = int(params.pop("n_dims", 20))
        radius = float(params.pop("radius", 1.0))
        n_outliers = int(params.pop("n_outliers", 10))
        outlier_radius = float(params.pop("outlier_radius", 5.0))
        _reject_extra(kind, params)
        inliers = _uniform_in_ball(rng, n_points, n_dims, radius)
        outliers = _on_sphere(rng, n_outliers, n_dims, outlier_radius)
        labels = ["inlier"] * n_points + ["outlier"] * n_outliers
        return DataTable(np.concatenate([inliers, outliers]), labels=labels)
    if kind == "uniform_cube":
        n_points = int(params.pop("n_points", 10_000))
        n_dims = int(params.pop("n_dims", 20))
        low = float(params.pop("low", 0.0))
        high = float(params.pop("high", 1.0))
        _reject_extra(kind, params)
        return DataTable(rng.uniform(low, high, size=(n_points, n_dims)))
    raise ValueError(f"unknown kind '{kind}', expected one of {SPECIAL_KINDS}")


def _reject_extra(kind: str, params: dict) -> None:
    if params:
        raise ValueError(f"unknown parameters for {kind}: {sorted(params)}")
