"""AS-level Internet topology construction and metric analysis."""

from .compare import (
    GraphDelta,
    exclusive_degree_distribution,
    graph_delta,
    reduced_pair,
)
from .errors import (
    AstopoError,
    ConvergenceError,
    DisconnectedGraphError,
    EmptyGraphError,
    FitError,
    GraphBuildError,
    ParseError,
    UndefinedMetricError,
)
from .fit import PowerLawFit, fit_power_law
from .global_metrics import (
    BetweennessResult,
    DistanceStats,
    SpectrumResult,
    avg_distance_by_degree,
    betweenness,
    distance_distribution,
    edge_betweenness_by_degrees,
    node_betweenness_by_degree,
    spectrum_top,
)
from .graph import (
    AsGraph,
    Asn,
    build_from_edges,
    connected_components,
    edge_lines,
    giant_component,
    induced_subgraph,
    merge,
    write_edge_file,
)
from .ingest import (
    DEFAULT_POLICY,
    AsPath,
    FilterPolicy,
    RpslRecord,
    is_filtered,
    parse_adjacency,
    parse_as_paths,
    parse_rpsl,
    paths_to_graph,
    rpsl_to_graph,
)
from .local_metrics import (
    DegreeDistribution,
    JddMatrix,
    NeighborDegree,
    assortativity,
    average_degree,
    avg_neighbor_degree,
    clustering_summaries,
    conditional_degree,
    degree_distribution,
    jdd,
    local_clustering,
    power_law_max_degree,
    rich_club,
)
from .summary import MetricSummary, SummaryBundle, compute_summary
from .synth import gnp, random_connected, scale_free

__version__ = "0.1.0"
