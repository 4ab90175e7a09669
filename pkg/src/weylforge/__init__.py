"""Characters, sum formulas and decomposition data for reductive groups in positive characteristic."""
from .charalg import (ChiSum, VirtualCharacter, chi, dimension, expand_in_basis, full_weights,
                      nabla_character, tensor, weyl_dimension)
from .decomp import (DecompositionBranchSet, fixture_simple_characters, simple_character,
                     simple_character_candidates, solve_decomposition)
from .errors import WeylforgeError
from .filtrate import FiltrationOutcome, ScenarioVerdict, good_filtration_test, tmc_scenario
from .jantzen import jsf, jsf_in_simple_basis
from .levi import levi_propagation, levi_subsystem, restrict_character
from .rootsys import RootSystem, build_root_system, parse_system
from .weylact import dot_reflect, is_linked, linked_below, orbit, straighten, to_dominant

__version__ = "0.1.0"

__all__ = [
    "ChiSum", "VirtualCharacter", "chi", "dimension", "expand_in_basis", "full_weights",
    "nabla_character", "tensor", "weyl_dimension",
    "DecompositionBranchSet", "fixture_simple_characters", "simple_character",
    "simple_character_candidates", "solve_decomposition",
    "WeylforgeError",
    "FiltrationOutcome", "ScenarioVerdict", "good_filtration_test", "tmc_scenario",
    "jsf", "jsf_in_simple_basis",
    "levi_propagation", "levi_subsystem", "restrict_character",
    "RootSystem", "build_root_system", "parse_system",
    "dot_reflect", "is_linked", "linked_below", "orbit", "straighten", "to_dominant",
]
