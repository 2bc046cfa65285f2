"""Exact period polynomials and Hecke matrices for Bianchi forms over Euclidean Q(sqrt(-D))."""

from __future__ import annotations

from .hecke import (
    HeckeMatrix,
    eigenspace_in_w,
    epsilon_factor,
    hecke_matrix,
    joint_eigenspace_in_w,
    t_block,
)
from .hurwitz import CFExpansion, Mat2, expand, generators
from .linalg import KMatrix, SubspaceBasis, charpoly, kernel
from .periods import c_to_r, cusp_matrix, r_to_c, transport_matrix
from .polyspace import PolyKK, apply_group_word, slash_matrix
from .quadfield import (
    FIELDS,
    DomainError,
    Field,
    QuadElem,
    QuadInt,
    canonical_associate,
    divisors,
    get_field,
    nearest_int,
    parse_elem,
    phi_tilde,
    residues,
    sigma_tilde,
)
from .relations import wkk_basis

__all__ = [
    "FIELDS",
    "CFExpansion",
    "DomainError",
    "Field",
    "HeckeMatrix",
    "KMatrix",
    "Mat2",
    "PolyKK",
    "QuadElem",
    "QuadInt",
    "SubspaceBasis",
    "apply_group_word",
    "c_to_r",
    "canonical_associate",
    "charpoly",
    "cusp_matrix",
    "divisors",
    "eigenspace_in_w",
    "epsilon_factor",
    "expand",
    "generators",
    "get_field",
    "hecke_matrix",
    "joint_eigenspace_in_w",
    "kernel",
    "nearest_int",
    "parse_elem",
    "phi_tilde",
    "r_to_c",
    "residues",
    "sigma_tilde",
    "slash_matrix",
    "t_block",
    "transport_matrix",
    "wkk_basis",
]

__version__ = "0.1.0"
