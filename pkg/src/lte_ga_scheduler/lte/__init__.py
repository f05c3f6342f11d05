"""Radio resource abstractions, synthetic channel and synthetic traffic."""
from .channel import CqiMatrix, build_efficiency_matrix, init_cqi, step_cqi
from .mcs import McsTable, load_mcs_table
from .traffic import DemandVector, UePopulation, generate_demands

__all__ = [
    "CqiMatrix",
    "DemandVector",
    "McsTable",
    "UePopulation",
    "build_efficiency_matrix",
    "generate_demands",
    "init_cqi",
    "load_mcs_table",
    "step_cqi",
]
