"""Exact lattice computations for hyper-Kahler-type Beauville-Bogomolov
lattices: Gram-matrix arithmetic, vector enumeration, isometries, rank-2
wall-and-chamber geometry, Clifford algebras with the Kuga-Satake trace
polarization, and primitive embeddings.
"""

from .errors import LatticeError
from .lattice import (
    IntegralLattice,
    LatticeVector,
    Signature,
    bilinear,
    determinant,
    direct_sum,
    discriminant_group_order,
    divisibility,
    fujiki_degree,
    is_period_point,
    make_lattice,
    norm,
    orthogonal_complement,
    signature,
    standard,
    twist,
)

__version__ = "0.1.0"

__all__ = [
    "IntegralLattice",
    "LatticeError",
    "LatticeVector",
    "Signature",
    "bilinear",
    "determinant",
    "direct_sum",
    "discriminant_group_order",
    "divisibility",
    "fujiki_degree",
    "is_period_point",
    "make_lattice",
    "norm",
    "orthogonal_complement",
    "signature",
    "standard",
    "twist",
]
