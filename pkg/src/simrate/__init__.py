"""Similarity-rate analysis of multiplex networks.

Pipeline: per-layer Jaccard similarity for every node pair, a least-squares
trend through the sorted similarities, a rate ``exp(b/k)`` per pair, a
weighted graph of those rates, Louvain communities, and overlap against a
weighted ground-truth graph.
"""

from .community import Partition, exhaustive_best_partition, louvain, modularity
from .integration import (
    ConfigError,
    WeightedGraph,
    build_essentiality_network,
    build_rate_network,
)
from .multiplex import (
    Layer,
    MultiplexNetwork,
    ParseError,
    layer_stats,
    load_multiplex,
    loads_multiplex,
    neighbors,
)
from .similarity import (
    LineFit,
    SimilarityVector,
    fit_line,
    jaccard,
    similarity_rate,
    similarity_vector,
)
from .validation import edge_frequency, overlap_rate, overlap_report, write_reports

__all__ = [
    "ConfigError",
    "Layer",
    "LineFit",
    "MultiplexNetwork",
    "ParseError",
    "Partition",
    "SimilarityVector",
    "WeightedGraph",
    "build_essentiality_network",
    "build_rate_network",
    "edge_frequency",
    "exhaustive_best_partition",
    "fit_line",
    "jaccard",
    "layer_stats",
    "load_multiplex",
    "loads_multiplex",
    "louvain",
    "modularity",
    "neighbors",
    "overlap_rate",
    "overlap_report",
    "similarity_rate",
    "similarity_vector",
    "write_reports",
]
