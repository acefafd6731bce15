"""sharpdr: sharpen high-dimensional clusters before projecting them.

The package advects points along their local kernel-density gradient
(adaptive-bandwidth Epanechnikov, neighbors recomputed every iteration),
projects with built-in methods (random projection, classical and landmark
MDS, PCA), and scores any projection with neighborhood-based quality
metrics.  A JSON bundle format carries projections to the bundled
browser-based labeling tool and back.
"""

from .dataio import (
    DataTable,
    Embedding,
    LabelAssignment,
    read_bundle,
    read_label_csv,
    read_table,
    write_bundle,
    write_label_csv,
    write_table,
)
from .neighbors import NeighborIndex, build_index, query_knn, rank_matrix
from .project import (
    PcaModel,
    RpMatrix,
    classical_mds,
    landmark_mds,
    pca_fit,
    pca_transform,
    random_projection,
    reduce_variance,
)
from .quality import (
    MetricReport,
    TraitReport,
    continuity,
    data_traits,
    jaccard_nn,
    metric_report,
    neighborhood_hit,
    trustworthiness,
)
from .sharpen import (
    LgcParams,
    SharpenedResult,
    density_gradient,
    lgc_sharpen,
    normalize_minmax,
)
from .synthetic import (
    ClusterSpec,
    MixtureSpec,
    add_noise_snr,
    gen_mixture,
    gen_preset,
    gen_special,
)
from .datasets import DatasetDescriptor, load_dataset

__version__ = "0.1.0"

__all__ = [
    "DataTable", "Embedding", "LabelAssignment",
    "read_table", "write_table", "read_bundle", "write_bundle",
    "read_label_csv", "write_label_csv",
    "NeighborIndex", "build_index", "query_knn", "rank_matrix",
    "LgcParams", "SharpenedResult", "density_gradient", "lgc_sharpen",
    "normalize_minmax",
    "RpMatrix", "PcaModel", "random_projection", "classical_mds",
    "landmark_mds", "pca_fit", "pca_transform", "reduce_variance",
    "MetricReport", "TraitReport", "trustworthiness", "continuity",
    "jaccard_nn", "neighborhood_hit", "metric_report", "data_traits",
    "MixtureSpec", "ClusterSpec", "gen_mixture", "gen_preset", "gen_special",
    "add_noise_snr",
    "DatasetDescriptor", "load_dataset",
    "__version__",
]
