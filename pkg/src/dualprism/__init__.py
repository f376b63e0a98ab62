"""Spectral graph augmentation that edits only the high-frequency end of
the Laplacian spectrum, plus tools to measure what augmentations do to
graph structure."""

from .augment import (
    AugmentConfig,
    AugmentationRecord,
    AugType,
    binarize,
    dp_augment,
    drop_edge,
    drop_node,
)
from .datasets import (
    Dataset,
    random_graph,
    read_edge_list,
    read_json,
    read_tudataset,
    write_edge_list,
    write_json,
    write_tudataset,
)
from .errors import (
    ConfigError,
    DegenerateGraph,
    DimensionMismatch,
    DimensionTooSmall,
    DisconnectedGraph,
    DualPrismError,
    EdgeStateMismatch,
    InconsistentIndicator,
    MalformedFile,
    MissingFile,
    NonConvergence,
)
from .graph import Graph, adjacency, degree_matrix, laplacian, max_degree, toy_graph
from .properties import (
    PropertyDelta,
    PropertyProfile,
    diameter_bounds,
    fiedler_value,
    property_delta,
    property_profile,
)
from .spectral import (
    Spectrum,
    edge_flip_deltas,
    eigendecompose,
    laplacian_spectrum,
    reconstruct,
    spectral_l2_distance,
    zero_eigenvalue_multiplicity,
)

__version__ = "0.1.0"

__all__ = [
    "adjacency",
    "AugmentationRecord",
    "AugmentConfig",
    "AugType",
    "binarize",
    "ConfigError",
    "Dataset",
    "DegenerateGraph",
    "degree_matrix",
    "diameter_bounds",
    "DimensionMismatch",
    "DimensionTooSmall",
    "DisconnectedGraph",
    "dp_augment",
    "drop_edge",
    "drop_node",
    "DualPrismError",
    "edge_flip_deltas",
    "EdgeStateMismatch",
    "eigendecompose",
    "fiedler_value",
    "Graph",
    "InconsistentIndicator",
    "laplacian",
    "laplacian_spectrum",
    "MalformedFile",
    "max_degree",
    "MissingFile",
    "NonConvergence",
    "property_delta",
    "property_profile",
    "PropertyDelta",
    "PropertyProfile",
    "random_graph",
    "read_edge_list",
    "read_json",
    "read_tudataset",
    "reconstruct",
    "spectral_l2_distance",
    "Spectrum",
    "toy_graph",
    "write_edge_list",
    "write_json",
    "write_tudataset",
    "zero_eigenvalue_multiplicity",
]
