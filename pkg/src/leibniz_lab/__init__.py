"""Exact-arithmetic classification lab for low-dimensional solvable Leibniz
algebras with small derived subalgebra.

Scalars are Gaussian rationals extended by named formal parameters; every
computation (structure constants, bilinear forms, congruence invariants,
classification tables) is exact.
"""

from .algebra import StructureConstants, bracket, verify_leibniz
from .blocks import CanonicalBlock, algebra_from_blocks, canonical_block_matrix
from .pencil import PencilInvariants, canonical_decomposition, is_congruent
from .scalars import QI, ParameterConstraint, Scalar

__version__ = "0.1.0"

__all__ = [
    "CanonicalBlock",
    "ParameterConstraint",
    "PencilInvariants",
    "QI",
    "Scalar",
    "StructureConstants",
    "algebra_from_blocks",
    "bracket",
    "canonical_block_matrix",
    "canonical_decomposition",
    "is_congruent",
    "verify_leibniz",
]
