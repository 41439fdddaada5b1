"""Exact computations around cluster algebras of geometric type, valued
quivers, modulations by number fields, and preprojective algebras."""

from .exchange_matrix import ExchangeMatrix, Symmetrizer, find_symmetrizer, mutate_matrix, mutate_sequence
from .laurent import LaurentPoly, NotDivisible, div_exact
from .modulation import (Bimodule, DualizingPair, ModQuiverDims, central_element, dual_basis, make_dualizing_pair,
                         product_pair, semi_modulated_mutate)
from .numberfield import RATIONALS, NumberField, make_field_algebra
from .preprojective import ModulatedGraph, graded_dims, graph_from_valuations, is_dynkin
from .seeds import Seed, explore, initial_seed, is_finite_type, mutate_seed, verify_subcluster
from .valued_quiver import ValuedQuiver, from_matrix, mutate_quiver, to_matrix

__all__ = [
    "ExchangeMatrix", "Symmetrizer", "find_symmetrizer", "mutate_matrix", "mutate_sequence",
    "LaurentPoly", "NotDivisible", "div_exact",
    "Bimodule", "DualizingPair", "ModQuiverDims", "central_element", "dual_basis", "make_dualizing_pair",
    "product_pair", "semi_modulated_mutate",
    "RATIONALS", "NumberField", "make_field_algebra",
    "ModulatedGraph", "graded_dims", "graph_from_valuations", "is_dynkin",
    "Seed", "explore", "initial_seed", "is_finite_type", "mutate_seed", "verify_subcluster",
    "ValuedQuiver", "from_matrix", "mutate_quiver", "to_matrix",
]

__version__ = "0.1.0"
