"""Numerics for the degenerate Cauchy-type area operator attached to the
model vector field d/dt - i|t|^sigma d/dx.

The package provides the coupled exponent algebra, graded tensor grids,
adaptive quadrature for the weakly singular kernel integrals, the area
operator itself with its identity and regularity checks, a relaxed Picard
solver for semilinear right-hand sides, and the similarity (factorization)
decomposition of solutions of Lu = au + b*conj(u).
"""

__version__ = "0.1.0"

from .exponents import ExponentSet, make_exponents
from .grids import Domain, Grid, GridFunction, lp_norm, sup_norm, make_grid
from .fields import VectorFieldSpec, make_field_spec, eval_Z, apply_L
from .quadrature import (
    QuadratureConfig,
    QuadResult,
    integrate_I,
    integrate_H,
    integrate_delta,
    integrate_weighted_cauchy,
)
from .operator import (
    OperatorResult,
    apply_TZ,
    verify_solution,
    sup_bound_check,
    green_identity_check,
    pompeiu_reconstruct,
    holder_scan,
    lq_membership,
)
from .lemmas import (
    ScanReport,
    scan_lemma,
    CounterexamplePair,
    make_counterexample,
    counterexample_norms,
)
from .semilinear import (
    NonlinearRHS,
    SolveOutcome,
    make_rhs,
    picard_solve,
    contraction_certificate,
    linear_solve,
    bounded_rhs_solve,
)
from .similarity import decompose, construct, holomorphy_witness

__all__ = [
    "ExponentSet",
    "make_exponents",
    "Domain",
    "Grid",
    "GridFunction",
    "make_grid",
    "lp_norm",
    "sup_norm",
    "VectorFieldSpec",
    "make_field_spec",
    "eval_Z",
    "apply_L",
    "QuadratureConfig",
    "QuadResult",
    "integrate_I",
    "integrate_H",
    "integrate_delta",
    "integrate_weighted_cauchy",
    "OperatorResult",
    "apply_TZ",
    "verify_solution",
    "sup_bound_check",
    "green_identity_check",
    "pompeiu_reconstruct",
    "holder_scan",
    "lq_membership",
    "ScanReport",
    "scan_lemma",
    "CounterexamplePair",
    "make_counterexample",
    "counterexample_norms",
    "NonlinearRHS",
    "SolveOutcome",
    "make_rhs",
    "picard_solve",
    "contraction_certificate",
    "linear_solve",
    "bounded_rhs_solve",
    "decompose",
    "construct",
    "holomorphy_witness",
]
