"""Player collaboration and club transfer network analytics."""

from .analysis import NetworkStats, cohort_rankings, degree_histogram, network_stats
from .centrality import (
    ScoreTable,
    betweenness_oracle,
    betweenness_weighted,
    pagerank_oracle,
    pagerank_weighted,
)
from .ingest import AnalysisConfig, Dataset, load_config, load_dataset, validate_dataset
from .netbuild import (
    DirectedWeightedGraph,
    UndirectedWeightedGraph,
    build_club_network,
    build_player_network,
    club_importance,
    player_edge_weight,
)

__version__ = "0.1.0"
