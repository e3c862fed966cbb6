"""Exact certificates of universality for quaternary quadratic forms.

The pipeline: a definite rational quaternion algebra, a norm-Euclidean order
inside it, prime elements found by congruence seeds and right gcds, unit
associates landing in diagonal lattices, and exact product laws to stitch
primes together.  Everything is integer or Fraction arithmetic; every public
result is a certificate that can be re-verified independently.
"""

from .algebra import AlgebraMismatchError, AlgebraParams, Quat, conj, mul, norm, trace
from .associates import (
    AssociateWitness,
    CoverageError,
    ResidueTable,
    find_associate,
    find_residue_without_one_sided,
    residue_certificate,
)
from .euclid import (
    DeltaBoundError,
    DivisionResult,
    EuclideanFailureError,
    GcdWitness,
    NearestResult,
    div_rem,
    nearest_element,
    right_gcd,
    verify_delta,
)
from .nonexist import DescentState, descent_step, search_imaginary_unit
from .order import (
    DiagonalModule,
    MulTable,
    NotClosedError,
    Order,
    OrderReport,
    builtin_orders,
    get_order,
    verify_order,
)
from .parser import ParseError, Session, evaluate, format_expr, parse
from .represent import (
    BruteTable,
    Form,
    FormPlan,
    RepCert,
    ScanReport,
    UnsupportedCompositionError,
    UnsupportedFormError,
    compose,
    euler_halve,
    is_norm_quaternionic,
    plan_for,
    prime_norm_element,
    represent,
    solve_congruence,
    supported_forms,
    universality_scan,
)
from .units import UnitSet, coefficient_bounds, enumerate_units, units_of

__version__ = "0.1.0"

__all__ = [
    "AlgebraMismatchError", "AlgebraParams", "Quat", "conj", "mul", "norm", "trace",
    "AssociateWitness", "CoverageError", "ResidueTable", "find_associate",
    "find_residue_without_one_sided", "residue_certificate",
    "DeltaBoundError", "DivisionResult", "EuclideanFailureError", "GcdWitness",
    "NearestResult", "div_rem", "nearest_element", "right_gcd", "verify_delta",
    "DescentState", "descent_step", "search_imaginary_unit",
    "DiagonalModule", "MulTable", "NotClosedError", "Order", "OrderReport",
    "builtin_orders", "get_order", "verify_order",
    "ParseError", "Session", "evaluate", "format_expr", "parse",
    "BruteTable", "Form", "FormPlan", "RepCert", "ScanReport",
    "UnsupportedCompositionError", "UnsupportedFormError", "compose", "euler_halve",
    "is_norm_quaternionic", "plan_for", "prime_norm_element", "represent",
    "solve_congruence", "supported_forms", "universality_scan",
    "UnitSet", "coefficient_bounds", "enumerate_units", "units_of",
    "__version__",
]
