"""Degree statistics of lcms of q-analogs over random integer sets.

Submodules: ``arith`` (sieved arithmetic tables), ``qpoly`` (exact polynomial
oracles), ``model`` (random-set sampling and exact enumeration), ``moments``
(closed-form and asymptotic moments, C1, v(alpha)), ``cli`` (experiment
harness).
"""

from .arith import ArithTables, build_tables, gcd_lcm, phi_pair_summatory, phi_summatory, tau_summatory
from .errors import ResourceLimitError
from .model import (
    ExactDistribution,
    ModelParams,
    MonteCarloSummary,
    SampleResult,
    bitset,
    degree_statistic,
    enumerate_exact,
    indicator,
    monte_carlo,
    sample_set,
    sample_stream,
)
from .moments import (
    C1Estimate,
    MomentReport,
    TruncationConfig,
    VAlphaEstimate,
    alpha_factor,
    c1_constant,
    dilog,
    expectation_asymptotic,
    expectation_exact,
    expectation_grouped,
    moment_report,
    rho_bounds,
    s_infinity_members,
    v_alpha,
    variance_exact,
    variance_upper_envelope,
)
from .qpoly import IntPoly, cyclotomic, lcm_degree_oracle, poly_divexact, poly_gcd, poly_lcm, poly_mul, q_analog

__all__ = [
    "ArithTables",
    "C1Estimate",
    "ExactDistribution",
    "IntPoly",
    "ModelParams",
    "MomentReport",
    "MonteCarloSummary",
    "ResourceLimitError",
    "SampleResult",
    "TruncationConfig",
    "VAlphaEstimate",
    "alpha_factor",
    "bitset",
    "build_tables",
    "c1_constant",
    "cyclotomic",
    "degree_statistic",
    "dilog",
    "enumerate_exact",
    "expectation_asymptotic",
    "expectation_exact",
    "expectation_grouped",
    "gcd_lcm",
    "indicator",
    "lcm_degree_oracle",
    "moment_report",
    "monte_carlo",
    "phi_pair_summatory",
    "phi_summatory",
    "poly_divexact",
    "poly_gcd",
    "poly_lcm",
    "poly_mul",
    "q_analog",
    "rho_bounds",
    "s_infinity_members",
    "sample_set",
    "sample_stream",
    "tau_summatory",
    "v_alpha",
    "variance_exact",
    "variance_upper_envelope",
]

__version__ = "0.1.0"
