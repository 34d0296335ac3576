"""Finite pregroups, their universal groups and existential equivalence."""
from . import constructions, equations, equivalence, folang, fostruct, kernels, pregroup, ugroup
from .constructions import FiniteGroup, HnnSpec, cyclic_group
from .fostruct import FiniteStructure, Signature
from .pregroup import Pregroup, SPregroup, check_axioms
from .ugroup import UElement, canonical, equivalent

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "FiniteStructure", "HnnSpec", "Pregroup", "SPregroup", "Signature", "UElement",
    "canonical", "check_axioms", "constructions", "cyclic_group", "equations", "equivalence",
    "equivalent", "folang", "fostruct", "kernels", "pregroup", "ugroup",
]
