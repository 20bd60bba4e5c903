"""Mean residual life of hazard-specified lifetime distributions.

Thin Python surface over the C++ core: hazard model catalog, jet arithmetic,
the adaptive-quadrature oracle, and the asymptotic expansion with exact
coefficient tables.
"""

from ._core import (  # noqa: F401
    HazardModel,
    Jet,
    LimitDiagnostics,
    QuadResult,
    ThetaSequence,
    __version__,
    c_monomials,
    c_polynomial_text,
    c_term,
    c_value,
    cumulative_hazard,
    de1_residual,
    default_catalog,
    derivative,
    exp,
    hyp1_check,
    limit_diagnostics,
    mrl_expansion,
    mrl_quadrature,
    parse_model,
    pow,
    reciprocal,
    sin_cos,
    survival,
    theta_monomials,
    theta_polynomial_text,
    theta_terms,
    theta_via_coefficients,
)
