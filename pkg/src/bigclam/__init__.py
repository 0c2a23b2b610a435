"""Overlapping community detection on undirected graphs.

Pipeline: conductance-test seeding -> per-row projected gradient ascent
on a sparse affiliation matrix -> threshold extraction of the community
cover (serial, threaded, or transposed).  Ships with a planted-instance
generator, a cover comparator that ignores ordering, and a per-stage
profiler with a stage-dominance estimate.
"""

from .community_assoc import (CaOptions, Cover, ProbeCounter, affiliation_threshold,
                              community_strengths, extract_parallel, extract_serial,
                              extract_transposed)
from .cover_io import (EqualityReport, canonicalize, compare_covers, read_cover,
                       write_cover)
from .errors import BigClamError
from .gradient_ascent import (GaConfig, GaStats, fit, row_gradient,
                              row_log_likelihood, run_epoch, total_log_likelihood,
                              update_row)
from .graph import Graph, NetworkStats, load_edge_list, write_edge_list
from .profiling import (DominanceResult, RunReport, StageTimer, StageTimings,
                        dominance_predicate, emit_report, parse_report, r_of)
from .seeding import (init_affiliations, locally_minimal_neighborhoods,
                      neighborhood_conductance)
from .sparse import (MAX_WEIGHT, AffiliationMatrix, SparseRow, read_snapshot,
                     write_snapshot)
from .synth import PlantSpec, avg_f1, generate_graph, plant_cover

__version__ = "0.1.0"

__all__ = [
    "AffiliationMatrix",
    "BigClamError",
    "CaOptions",
    "Cover",
    "DominanceResult",
    "EqualityReport",
    "GaConfig",
    "GaStats",
    "Graph",
    "MAX_WEIGHT",
    "NetworkStats",
    "PlantSpec",
    "ProbeCounter",
    "RunReport",
    "SparseRow",
    "StageTimer",
    "StageTimings",
    "affiliation_threshold",
    "avg_f1",
    "canonicalize",
    "community_strengths",
    "compare_covers",
    "dominance_predicate",
    "emit_report",
    "extract_parallel",
    "extract_serial",
    "extract_transposed",
    "fit",
    "generate_graph",
    "init_affiliations",
    "load_edge_list",
    "locally_minimal_neighborhoods",
    "neighborhood_conductance",
    "parse_report",
    "plant_cover",
    "r_of",
    "read_cover",
    "read_snapshot",
    "row_gradient",
    "row_log_likelihood",
    "run_epoch",
    "total_log_likelihood",
    "update_row",
    "write_cover",
    "write_edge_list",
    "write_snapshot",
]
