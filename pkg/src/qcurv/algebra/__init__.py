"""Exact arithmetic tower used by every other module."""

from .cyclotomic import (
    BadPlace,
    BadReason,
    CycloElem,
    CyclotomicField,
    cyclotomic,
    cyclotomic_coeffs,
    cyclotomic_field,
    phi_split,
    reduce_q,
)
from .fraction import DivisionByZero, FractionField, RatFunc, fraction_field
from .matrix import (
    SingularMatrix,
    block,
    clear_denominators,
    det,
    ff_inverse,
    identity,
    inverse,
    is_identity,
    kron,
    mat_add,
    mat_map,
    mat_sub,
    matmul,
    nonsingular,
    scalar_matrix,
    transpose,
    zeros,
)
from .poly import Poly, PolyRing, QPoly, gcd, lcm, poly_ring, xgcd
from .rational import QQ
from .tower import Tower, delta, place_field, subst_qx, tower
