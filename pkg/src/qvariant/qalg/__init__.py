"""Exact arithmetic: Laurent polynomials, truncated series, q-Pochhammer algebra, bases."""

from .basis import BasisDescriptor, BasisKind, basis_expand, basis_project, combine
from .pochhammer import (
    euler_expand,
    inv_euler_expand,
    q_binomial_weight,
    q_pochhammer,
    rising_factorial,
)
from .poly import (
    LaurentPoly,
    X,
    as_rational,
    format_rational,
    poly_add,
    poly_mul,
    poly_scale_arg,
)
from .series import LSeries, binomial_power

__all__ = [
    "BasisDescriptor",
    "BasisKind",
    "LSeries",
    "LaurentPoly",
    "X",
    "as_rational",
    "basis_expand",
    "basis_project",
    "binomial_power",
    "combine",
    "euler_expand",
    "format_rational",
    "inv_euler_expand",
    "poly_add",
    "poly_mul",
    "poly_scale_arg",
    "q_binomial_weight",
    "q_pochhammer",
    "rising_factorial",
]
