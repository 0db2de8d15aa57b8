"""Exact computations in the restricted Lie algebras W_n and S_n over finite fields."""

from .autgrp import (
    Automorphism,
    act,
    bukong_degeneration,
    compose,
    identity_autom,
    is_special,
    jacobian_det,
    make_autom,
    random_autom,
)
from .derlie import (
    Derivation,
    apply_derivation,
    bracket,
    centralizer_dim,
    constants_subring,
    divergence,
    filtration_degree,
    p_power,
    rho_matrix,
)
from .errors import AmbientMismatch, FieldMismatch, InvariantViolation
from .ffield import DualScalar, Scalar, field, field_arith, frobenius_pth_root
from .invariants import (
    InvariantVector,
    PPolynomial,
    is_nilpotent,
    jordan_chevalley,
    m_adx_image_dim,
    minimal_p_polynomial,
    phi_differential,
    phi_vector,
    quotient_s,
    quotient_w,
    regularity_classify,
)
from .linalg import charpoly, mat_power, rank_kernel
from .slices import SliceElement, delta_eps, kernel_K_and_image, omega_element, tangent_decomposition
from .special import Membership, SnContext, dij_generator, sigma_embed, sn_basis, sn_contains, sn_context, torus_tn
from .truncpoly import Ambient, TruncPoly, ambient, min_degree, partial_derivative, poly_mul

__version__ = "0.1.0"
