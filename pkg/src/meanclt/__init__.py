"""Zero-bias transforms, exact L1 distances and Stein functionals for finite-support laws."""

from .dist import (
    FiniteDist,
    LatticeInfo,
    MomentSummary,
    convolve,
    iid_sum,
    lattice_span,
    mix,
    moments,
    normalized_sum,
    point_mass,
    rademacher,
    scale,
    standardize,
    standardized_bernoulli,
    two_point,
)
from .functionals import (
    FunctionalReport,
    a_functional,
    b_functional,
    functional_report,
    psi_lower_bound,
    zolotarev_ratio,
)
from .harness import (
    BoundReport,
    D3GridSpec,
    SearchResult,
    asymptotic_sweep,
    lower_bound_sweep,
    search_d3,
    verify_bound,
)
from .mixtures import (
    MixtureDecomposition,
    ThreePointSplit,
    coupling_bound_check,
    qp_inequality_gap,
    reduce_to_d3,
    three_point_split,
    two_point_mixture,
)
from .wasserstein import (
    inverse_cdf,
    w1,
    w1_by_coupling,
    w1_pwl_normal,
    w1_step_normal,
    w1_step_pwl,
    w1_step_step,
)
from .zerobias import ZeroBiasDist, zb_mean_abs, zero_bias, zero_bias_mixture

__all__ = [
    "a_functional",
    "asymptotic_sweep",
    "b_functional",
    "BoundReport",
    "convolve",
    "coupling_bound_check",
    "D3GridSpec",
    "FiniteDist",
    "functional_report",
    "FunctionalReport",
    "iid_sum",
    "inverse_cdf",
    "lattice_span",
    "LatticeInfo",
    "lower_bound_sweep",
    "mix",
    "MixtureDecomposition",
    "moments",
    "MomentSummary",
    "normalized_sum",
    "point_mass",
    "psi_lower_bound",
    "qp_inequality_gap",
    "rademacher",
    "reduce_to_d3",
    "scale",
    "search_d3",
    "SearchResult",
    "standardize",
    "standardized_bernoulli",
    "three_point_split",
    "ThreePointSplit",
    "two_point",
    "two_point_mixture",
    "verify_bound",
    "w1",
    "w1_by_coupling",
    "w1_pwl_normal",
    "w1_step_normal",
    "w1_step_pwl",
    "w1_step_step",
    "zb_mean_abs",
    "zero_bias",
    "zero_bias_mixture",
    "ZeroBiasDist",
    "zolotarev_ratio",
]

__version__ = "0.1.0"
