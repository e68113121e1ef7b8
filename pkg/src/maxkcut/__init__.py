"""Max-k-Cut toolkit.

Solve the standard vector relaxation of Max-k-Cut with a low-rank method,
round it with the disc, simplex, Frieze-Jerrum, or uniform scheme, and check
the closed-form cut probabilities and approximation guarantees by Monte
Carlo.  See the README for the CLI (`maxkcut solve/round/ratio-table/
verify/pipeline`).
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .formulas import (
    PUBLISHED_DKPW,
    PUBLISHED_FJ,
    DiscPair,
    MonteCarloEstimate,
    RatioReport,
    angle_cdf,
    approximation_guarantee,
    cut_probability,
    empirical_cdf_gap,
    gamma_samples,
    mc_angle_cdf,
    mc_cut_probability,
    modk_probability,
    ratio_table,
    ratio_table_csv,
    ratio_table_rows,
    worst_case_ratio,
)
from .graph import (
    GraphFormatError,
    WeightedGraph,
    complete_graph,
    cut_value,
    parse_graph,
    serialize_graph,
)
from .rounding import (
    SCHEMES,
    AngleAssignment,
    DiscEmbedding,
    EdgeCutStats,
    Partition,
    TrialResult,
    build_discs,
    disc_rounding_angles,
    edge_cut_frequencies,
    iter_label_blocks,
    label_histogram,
    round_disc,
    round_frieze_jerrum,
    round_simplex,
    round_uniform,
    run_trials,
)
from .sdp import (
    FeasibilityReport,
    SdpProblem,
    SdpSolution,
    load_gram,
    load_solution,
    parse_gram_text,
    save_solution,
    solution_from_dict,
    solution_to_dict,
    solve,
    validate,
)
from .simplex import SimplexVertices, build_simplex, nearest_vertex

__version__ = "0.1.0"
