"""Littelmann path crystals, diagram foldings and virtual crystals."""

from .crystal_graph import CrystalGraph, check_axioms, generate, is_isomorphic, tensor
from .crystal_ops import epsilon, lower_path, phi, raise_path
from .errors import CapExceededError, DomainError
from .folding import Folding, check_conditions, psi, standard_foldings, virtualize_path
from .paths import Path
from .root_data import RootDatum, Weight, cartan_datum

__version__ = "0.1.0"

__all__ = [
    "CapExceededError", "CrystalGraph", "DomainError", "Folding", "Path", "RootDatum", "Weight",
    "cartan_datum", "check_axioms", "check_conditions", "epsilon", "generate", "is_isomorphic",
    "lower_path", "phi", "psi", "raise_path", "standard_foldings", "tensor", "virtualize_path",
]
