"""growgraph: growing networks with tunable small-world, scale-free and
community structure, plus a metric and community-detection toolkit."""

__version__ = "0.1.0"

from .community import (MergeDendrogram, SubclusterResult, compare_partitions,
                        detect_communities, subcluster)
from .generate import (GenParams, GenTrace, generate, generate_holme_kim,
                       replay_trace)
from .graph import Graph, Partition, induced_subgraph
from .metrics import (MetricsReport, avg_clustering, avg_path_length,
                      build_report, fit_alpha, modularity, per_community_stats,
                      relative_density, transitivity)
from .sampling import (DegreeIndex, NoCandidateError, RngStream, bernoulli,
                       pa_select_global, pa_select_in_community,
                       pa_select_neighbor)

__all__ = [
    "__version__",
    "Graph", "Partition", "induced_subgraph",
    "RngStream", "DegreeIndex", "NoCandidateError", "bernoulli",
    "pa_select_global", "pa_select_in_community", "pa_select_neighbor",
    "GenParams", "GenTrace", "generate", "generate_holme_kim", "replay_trace",
    "MetricsReport", "avg_clustering", "avg_path_length", "build_report",
    "fit_alpha", "modularity", "per_community_stats", "relative_density",
    "transitivity",
    "MergeDendrogram", "SubclusterResult", "detect_communities", "subcluster",
    "compare_partitions",
]
