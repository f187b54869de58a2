"""Exact arithmetic over F_q[T] and brute-force verification of Menon-type gcd-sum identities."""

from .budget import BudgetExceeded
from .chars import (
    AdditiveCharacter,
    DirichletCharacter,
    additive_character,
    characters,
    conductor,
    primitive_lift,
    unit_group,
)
from .gf import FieldElement, FieldError, FieldSpec, ff_make, parse_field
from .identity import (
    PreconditionError,
    GcdSumInstance,
    VerificationReport,
    estimate_cost,
    gcd_sum_lhs,
    gcd_sum_rhs,
    verify_gcd_sum,
)
from .multfunc import euler_phi, get_function, moebius, phi_k_brute, phi_k_formula
from .polyring import Poly, PolyError, PolyParseError, divisors, factorize, format_poly, parse_poly

__all__ = [
    "AdditiveCharacter", "BudgetExceeded", "DirichletCharacter", "FieldElement", "FieldError",
    "FieldSpec", "Poly", "PolyError", "PolyParseError", "PreconditionError", "GcdSumInstance",
    "VerificationReport", "additive_character", "characters", "conductor", "divisors",
    "estimate_cost", "euler_phi", "factorize", "ff_make", "format_poly", "get_function",
    "moebius", "parse_field", "parse_poly", "phi_k_brute", "phi_k_formula", "primitive_lift",
    "gcd_sum_lhs", "gcd_sum_rhs", "unit_group", "verify_gcd_sum",
]
