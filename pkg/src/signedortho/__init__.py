"""Polynomials orthogonal on [-1, 1] against the signed weight
x^(2q+1) (1-x^2)^alpha (1-x): construction, identity checks and certified zeros."""

__version__ = "0.1.0"

from .families import (
    FamilyParams,
    GGParams,
    RecurrencePair,
    check_identity,
    gg_poly,
    p_family_ttrr,
    p_poly_hyper,
    p_poly_ttrr,
    ttrr_beta,
    ttrr_gamma,
)
from .numerics import ModeConfig, ModeError, binomial, pochhammer
from .orthogonality import gram_schmidt_oracle, signed_inner, verify_orthogonality
from .polynomials import Poly
from .zeros import RootSet, check_interlacing, find_zeros, largest_zero_chain
