"""Tournaments and near-semicomplete digraphs: connectivity, cycles, partitions.

Graphs are stored as bitset rows (one Python int per vertex), so most
routines accept a ``within`` bitmask instead of building induced subgraphs.
"""

from .connectivity import (
    ConnectivityReport,
    MengerCertificate,
    PathSystem,
    connectivity_report,
    diameter,
    distances_from,
    glue_check,
    is_k_linked,
    is_strongly_connected,
    is_strongly_k_connected,
    local_connectivity,
    pair_k_connected,
    set_k_connected,
    shortest_path,
    strongly_connected_components,
)
from .core import (
    Digraph,
    Tournament,
    as_tournament,
    bits,
    canonical_digest,
    count_labeled_tournaments,
    cycle_digraph,
    dumps,
    enumerate_labeled_tournaments,
    from_compact,
    from_dict,
    induced_subdigraph,
    labeled_tournament,
    load,
    loads,
    make_tournament,
    mask_of,
    paley_tournament,
    random_digraph,
    random_tournament,
    save,
    to_compact,
    to_dict,
    to_dot,
    transitive_tournament,
)
from .dominating import (
    DominatingStructure,
    SparseLinkagePair,
    almost_dominating,
    disjoint_dominating_structures,
    near_semicomplete_defect,
    residue,
    sparse_linkage,
)
from .errors import (
    BadLength,
    BadModulus,
    BadSizes,
    BadSpec,
    ConsistencyError,
    DoublePair,
    DuplicateEndpoints,
    InvalidTournament,
    MissingPair,
    NoMatching,
    NotFoundExhaustive,
    NotStronglyConnected,
    OutOfRange,
    PinConflict,
    SearchIncomplete,
    SelfArc,
    TooLarge,
    TooLargeForExhaustive,
    TourneyError,
    UnbalancedSides,
)
from .extremal import (
    ExtremalCertificate,
    ExtremalSpec,
    certify_extremal,
    extremal_tournament,
    is_minimally_strongly_k_connected,
)
from .factors import CycleFactor, FactorSpec, factor_oracle, find_factor, max_transitive_subtournament, verify_factor
from .hamiltonicity import Cycle, camion_cycle, moon_cycle, two_cycle_partition
from .pipeline import (
    BipartiteGraph,
    HallResult,
    PartitionCertificate,
    PathLinkSpec,
    distribute_vertices,
    hall_matching,
    hamiltonian_path,
    linked_paths_with_lengths,
    partition_k_connected,
)
from .results import SearchResult, Status

__version__ = "0.1.0"
