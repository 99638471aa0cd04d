"""Exact counting, entropy-derived bounds and verification sweeps for
small graphs, matrices, set families and joint distributions."""

from .bounds import (
    Comparison,
    FractionalWeights,
    RootProductBound,
    Verdict,
    binom_sum_bound,
    bregman_bound,
    coin_lower_bounds,
    colorings_bip_bound,
    compare_exact,
    embed_upper_bound,
    fractional_cover,
    fractional_independence,
    homs_bip_bound,
    hstar_build,
    kahn_lovasz_bound,
    loomis_whitney_check,
    matching_asymptotic_reference,
    nonbip_order_bound,
)
from .caps import CapExceeded
from .count import (
    CountResult,
    body_volume_and_projections,
    colorings,
    colorings_kdd_closed,
    cycle_cover_sums,
    embed_count,
    hom_count,
    hom_kdd_closed,
    independent_sets_of_size,
    independent_sets_total,
    is_distinguishing,
    matchings_kdd_formula,
    matchings_of_size,
    matchings_total,
    max_triangle_intersecting,
    min_distinguishing,
    perfect_matchings,
    permanent,
    trace,
)
from .dist_entropy import (
    CoverFamily,
    FiniteDistribution,
    JointDistribution,
    PartialOrder,
    binary_entropy,
    binomial_half_entropy,
    check_chain_rule,
    check_conditional_shearer,
    check_dropping,
    check_shearer,
    check_subadditivity,
    check_surprise_axioms,
    chernoff_tail_check,
    conditional_entropy,
    entropy,
    marginal,
)
from .graphs import (
    Graph,
    LatticeBody,
    SetFamily,
    ZeroOneMatrix,
    canonical_form,
    enumerate_bipartite_regular,
    enumerate_graphs,
    enumerate_regular,
    make_named,
    parse_named,
    read_graph,
    write_graph,
)
from .verify import CheckSpec, Report, run_check, sweep

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CheckSpec",
    "Comparison",
    "CountResult",
    "CoverFamily",
    "FiniteDistribution",
    "FractionalWeights",
    "Graph",
    "JointDistribution",
    "LatticeBody",
    "PartialOrder",
    "Report",
    "RootProductBound",
    "SetFamily",
    "Verdict",
    "ZeroOneMatrix",
    "binary_entropy",
    "binom_sum_bound",
    "binomial_half_entropy",
    "body_volume_and_projections",
    "bregman_bound",
    "canonical_form",
    "check_chain_rule",
    "check_conditional_shearer",
    "check_dropping",
    "check_shearer",
    "check_subadditivity",
    "check_surprise_axioms",
    "chernoff_tail_check",
    "coin_lower_bounds",
    "colorings",
    "colorings_bip_bound",
    "colorings_kdd_closed",
    "compare_exact",
    "conditional_entropy",
    "cycle_cover_sums",
    "embed_count",
    "embed_upper_bound",
    "entropy",
    "enumerate_bipartite_regular",
    "enumerate_graphs",
    "enumerate_regular",
    "fractional_cover",
    "fractional_independence",
    "hom_count",
    "hom_kdd_closed",
    "homs_bip_bound",
    "hstar_build",
    "independent_sets_of_size",
    "independent_sets_total",
    "is_distinguishing",
    "kahn_lovasz_bound",
    "loomis_whitney_check",
    "make_named",
    "marginal",
    "matching_asymptotic_reference",
    "matchings_kdd_formula",
    "matchings_of_size",
    "matchings_total",
    "max_triangle_intersecting",
    "min_distinguishing",
    "nonbip_order_bound",
    "parse_named",
    "perfect_matchings",
    "permanent",
    "read_graph",
    "run_check",
    "sweep",
    "trace",
    "write_graph",
    "__version__",
]
