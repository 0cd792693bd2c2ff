"""A-priori cover-size bounds for 0-1 set covering matrices.

The package certifies, before any solving, that a matrix admits a cover
of size k: a uniformly random k-subset of columns misses every row
simultaneously with probability below 1, so some k-subset covers them
all. Variants trade tightness against generality (plain union bound,
exact hypergeometric tail, pair/triple overlap refinement, two-block
decompositions), and seeded generators plus greedy/exact solvers let the
certificates be audited end to end.

Figure rendering lives in scpbound.plots and is imported on demand so
the core library stays dependency-light at import time.
"""

from .bounds import (
    BoundResult,
    HomogeneousBounds,
    exact_uncovered_prob,
    first_moment_bound,
    homogeneous_bound,
    homogeneous_bound_certified,
    homogeneous_threshold,
    hypergeometric_first_moment_bound,
)
from .decomp import (
    BlockDecomposition,
    DecompositionBound,
    alpha_star,
    decomposed_bound,
    decomposed_bound_from_densities,
    make_decomposition,
    perfect_block_bound,
    search_split,
    symmetric_bordered_bound,
)
from .errors import (
    DecompositionOrderingError,
    InfeasibleInstanceError,
    InternalInvariantError,
    ParseError,
    RowLimitError,
    ScpboundError,
)
from .experiment import ExperimentPlan, ExperimentReport, run_experiment
from .gen import GenSpec, PlantedInstance, gen_constant_density, gen_karp, gen_planted, generate
from .matrix import (
    BinaryMatrix,
    OverlapTable,
    RowProfile,
    from_rows,
    overlap_table,
    pair_overlap,
    parse_matrix,
    permute,
    row_profile,
    serialize_matrix,
    triple_overlap,
)
from .refine import (
    ROUNDED_REFINED_CONSTANT,
    BonferroniEvaluator,
    BonferroniWitness,
    bonferroni_bound,
    bonferroni_condition,
    constant_density_refined_bound,
    truncated_series_root,
)
from .rng import SplitMix64
from .solve import CoverSolution, exact_cover, greedy_cover

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "BlockDecomposition",
    "BoundResult",
    "BonferroniEvaluator",
    "BonferroniWitness",
    "CoverSolution",
    "DecompositionBound",
    "DecompositionOrderingError",
    "ExperimentPlan",
    "ExperimentReport",
    "GenSpec",
    "HomogeneousBounds",
    "InfeasibleInstanceError",
    "InternalInvariantError",
    "OverlapTable",
    "ParseError",
    "PlantedInstance",
    "ROUNDED_REFINED_CONSTANT",
    "RowLimitError",
    "RowProfile",
    "ScpboundError",
    "SplitMix64",
    "alpha_star",
    "bonferroni_bound",
    "bonferroni_condition",
    "constant_density_refined_bound",
    "decomposed_bound",
    "decomposed_bound_from_densities",
    "exact_cover",
    "exact_uncovered_prob",
    "first_moment_bound",
    "from_rows",
    "gen_constant_density",
    "gen_karp",
    "gen_planted",
    "generate",
    "greedy_cover",
    "homogeneous_bound",
    "homogeneous_bound_certified",
    "homogeneous_threshold",
    "hypergeometric_first_moment_bound",
    "make_decomposition",
    "overlap_table",
    "pair_overlap",
    "parse_matrix",
    "perfect_block_bound",
    "permute",
    "row_profile",
    "run_experiment",
    "search_split",
    "serialize_matrix",
    "symmetric_bordered_bound",
    "triple_overlap",
    "truncated_series_root",
]
