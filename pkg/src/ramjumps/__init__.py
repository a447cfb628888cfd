"""Upper ramification jumps of Galois extensions of k((t)) with group G(F_p), the unipotent
group of block matrices [[A(x), y], [0, 1]].

The public entry points are re-exported here; see the submodules for details.
"""
from .artin_schreier import ReducedRep, character_sweep, conductor, reduce
from .errors import RamificationError
from .gfq import FqElem, FqField
from .herbrand import PLFunction, as_psi, pl_compose, pl_eval, pl_invert
from .jumps import JumpProfile, jump_set, omega, r2_special, r_top, s_diag
from .laurent import DifferentialRep, LaurentField, LaurentSeries
from .normalize import DefiningPair, check_conditions, normalize
from .tower import ASLayer, LayeredElem, build_layer, oracle_r
from .unipotent import GElem, UnipotentGroup

__all__ = [
    "ASLayer", "DefiningPair", "DifferentialRep", "FqElem", "FqField", "GElem",
    "JumpProfile", "LaurentField", "LaurentSeries", "LayeredElem", "PLFunction",
    "RamificationError", "ReducedRep", "UnipotentGroup", "as_psi", "build_layer",
    "character_sweep", "check_conditions", "conductor", "jump_set", "normalize", "omega",
    "oracle_r", "pl_compose", "pl_eval", "pl_invert", "r2_special", "r_top", "reduce",
    "s_diag",
]
