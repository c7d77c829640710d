"""Exact star products with separation of variables on CP^N and CH^N."""
from .combinatorics import alpha, beta, c_covariant, coeff_a, ladder_coefficient, stirling2
from .expr import ExprSyntaxError, format_ring, parse_expr, ring_to_json
from .fock import (
    FockIndex,
    FockVector,
    Generator,
    fock_mul,
    fock_to_ring,
    ladder_apply,
    ladder_apply_unnormalized,
    matrix_rep,
    ring_to_fock,
    structure_constant,
)
from .oracles import HypParams, bordemann_F, closed_form_product, hyp_expand, numeric_residual
from .radicals import Radical, RadicalClashError
from .report import Report
from .ring import RingElem, Space, dbarphi, dphi, vacuum
from .scalars import HTrunc, PoleError, RationalH, expand_series
from .star import (
    HSeries,
    NotInFockSpace,
    NotTerminating,
    TruncationModeError,
    star_covariant,
    star_exact,
    star_exact_fock,
    star_trunc,
    star_trunc_right,
)
from .suites import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "alpha",
    "beta",
    "c_covariant",
    "coeff_a",
    "ladder_coefficient",
    "stirling2",
    "ExprSyntaxError",
    "format_ring",
    "parse_expr",
    "ring_to_json",
    "FockIndex",
    "FockVector",
    "Generator",
    "fock_mul",
    "fock_to_ring",
    "ladder_apply",
    "ladder_apply_unnormalized",
    "matrix_rep",
    "ring_to_fock",
    "structure_constant",
    "HypParams",
    "bordemann_F",
    "closed_form_product",
    "hyp_expand",
    "numeric_residual",
    "Radical",
    "RadicalClashError",
    "Report",
    "RingElem",
    "Space",
    "dbarphi",
    "dphi",
    "vacuum",
    "HTrunc",
    "PoleError",
    "RationalH",
    "expand_series",
    "HSeries",
    "NotInFockSpace",
    "NotTerminating",
    "TruncationModeError",
    "star_covariant",
    "star_exact",
    "star_exact_fock",
    "star_trunc",
    "star_trunc_right",
    "SuiteConfig",
    "run_suite",
]
