"""Solver for linear equations over continuous rational functions on the plane.

Given continuous rational f_1, ..., f_r and phi on R^2, decides whether the
equation f_1*y_1 + ... + f_r*y_r = phi has a continuous solution (the
pointwise test) and, when it does, constructs continuous *rational*
solutions phi_i with exact algebraic identity certificates and numeric
continuity certificates.
"""

from .bipoly import BiPoly, PolynomialError, arith, multi_gcd, poly_gcd, resultant
from .config import ProbeConfig
from .exprparse import ParseError, parse_expr
from .points import AlgebraicPoint, IntervalBox, ZeroSetError, common_real_zeros, univ_real_roots
from .pointwise import PTReport, check_pt, divide_out, factor_common, find_constants
from .ratfun import (
    CRFun,
    FailureReport,
    LimitVerdict,
    RatFun,
    certify_continuous,
    crf_arith,
    limit_test,
    locally_bounded,
    p_set,
    reduce,
)
from .solver import (
    GlueData,
    Inconclusive,
    LocalSolution,
    PTFailure,
    Solution,
    chart_polys,
    glue,
    local_solution,
    lojasiewicz_exponent,
    solve,
)
from .verifier import (
    Certificate,
    confirm_witness,
    verify_all,
    verify_continuity,
    verify_identity,
    verify_pole_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicPoint", "BiPoly", "CRFun", "Certificate", "FailureReport", "GlueData",
    "Inconclusive", "IntervalBox", "LimitVerdict", "LocalSolution", "PTFailure", "PTReport",
    "ParseError", "PolynomialError", "ProbeConfig", "RatFun", "Solution", "ZeroSetError",
    "arith", "certify_continuous", "chart_polys", "check_pt", "common_real_zeros",
    "confirm_witness", "crf_arith", "divide_out", "factor_common", "find_constants", "glue",
    "limit_test", "local_solution", "locally_bounded", "lojasiewicz_exponent", "multi_gcd",
    "p_set", "parse_expr", "poly_gcd", "reduce", "resultant", "solve", "univ_real_roots",
    "verify_all", "verify_continuity", "verify_identity", "verify_pole_bound",
]
