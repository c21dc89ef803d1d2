"""Block spectrum of RNA pseudoknot gamma-structures.

Exact counting series, dominant-singularity constants, longest- and
short-block laws, block-type probabilities, an exhaustive enumeration
oracle and an exact block-sequence sampler.
"""
from .algebraic import BivariatePolynomial, build_Q
from .diagram import BlockRecord, Component, Diagram, blocks, classify_block_type, components, genus, shadow
from .laws import (
    NegBinomialParams,
    Pmf,
    TypeProbabilities,
    block_type_limit_prob,
    longest_arc_bound,
    longest_block_asymptotic_pmf,
    longest_block_exact_dist,
    longest_block_limit_dist,
    longest_block_limit_pmf,
    longest_block_moments,
    short_block_exact_dist,
    short_block_limit_law,
    tail_probability,
)
from .oracle import EnumerationStats, enumerate_structures
from .params import ConsistencyError, InvalidParameters, StructureParams
from .sampler import BlockSampler, BlockSequenceSample, sample_block_sequence
from .series import PowerSeries
from .singularity import SingularityData, coefficient_asymptotics, find_dominant_singularity, singular_constants, singularity_data
from .system import (
    SeriesBundle,
    bivariate_block_count_series,
    block_type_series,
    solve_system,
    truncated_structure_series,
)

__version__ = "0.1.0"
