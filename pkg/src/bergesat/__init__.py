"""Berge-star saturation numbers and linear nearly-regular uniform hypergraphs."""

from .bergedetect import (
    BergeWitness,
    PatternGraph,
    bipartite_max_matching,
    contains_berge,
    contains_berge_star,
    find_berge,
    find_berge_star,
    max_star_at,
    validate_witness,
)
from .confmodel import (
    Configuration,
    DefectReport,
    SamplerStats,
    collapse,
    count_defects,
    greedy_linear_nearly_regular,
    nearly_regular_degree_sequence,
    num_configurations,
    poisson_experiment,
    sample_configuration,
    sample_linear_nearly_regular,
    trial_configuration,
)
from .hypercore import (
    DegreeSequence,
    Hypergraph,
    PseudoHypergraph,
    degree_sequence_of,
    is_linear,
    new_hypergraph,
    non_edges,
    parse_hypergraph,
    serialize_hypergraph,
)
from .starsat import (
    SatFormulaResult,
    SaturationVerdict,
    brute_force_min_saturated,
    build_saturated_clique,
    build_saturated_star,
    is_berge_saturated,
    sat_star_value,
)

__version__ = "0.1.0"
