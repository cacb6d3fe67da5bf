"""hyperlap: hypergraph Laplacian eigenmaps with a face-recognition-style
evaluation pipeline.

Core flow: build a hypergraph (directly or from a point cloud via kNN
hyperedges), assemble one of the three Laplacians (combinatorial, symmetric
normalized, random walk), embed vertices into the low eigenvectors, then
classify embedded coordinates with kNN or kernel ridge regression.
"""

from .classify import (
    EmptyTrainingSetError,
    KrrModel,
    LabeledPoints,
    LengthMismatchError,
    SingularSystemError,
    accuracy,
    knn_predict,
    krr_fit,
    krr_predict,
)
from .construction import WEIGHTINGS, PointCloud, knn_hyperedges, pairwise_distances
from .harness import (
    CLASSIFIERS,
    NORMALIZATIONS,
    EmptyFileError,
    ExperimentReport,
    InconsistentWidthError,
    InsufficientClassSizeError,
    LabeledDataset,
    MalformedRowError,
    flatten_image,
    load_csv,
    loads_csv,
    normalize_features,
    run_experiment,
    stratified_split,
)
from .hypergraph import (
    DegreeVectors,
    Hypergraph,
    HypergraphError,
    IsolatedVertexError,
    KTooLargeError,
    NonPositiveWeightError,
    OutOfRangeVertexError,
    SingletonHyperedgeError,
    build_hypergraph,
    connected_components,
    degrees,
    hypergraph_from_json,
    hypergraph_to_json,
    incidence_dense,
)
from .laplacian import (
    COMBINATORIAL,
    RANDOM_WALK,
    SYMMETRIC,
    VARIANTS,
    LaplacianMatrix,
    combinatorial_laplacian,
    laplacian,
    random_walk_laplacian,
    symmetric_laplacian,
)
from .spectral import (
    AUTO_RULES,
    ZERO_EIGENVALUE_TOL,
    DegenerateSpectrumError,
    Embedding,
    NoConvergenceError,
    NotSymmetricError,
    SpectralDecomposition,
    eig_symmetric,
    eigenmap,
    eigenmap_basis,
    embedding_from_basis,
    embedding_to_csv,
    select_k_components,
    select_k_eigengap,
)

__version__ = "0.1.0"
