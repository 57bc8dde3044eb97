"""Cut complexes of Stone spaces: construction, invariants and reconstruction."""
from .cuts import Cut, CutGraph, complex_graph, enumerate_cuts
from .space import Cantor, ClopenSet, Convergent, Finite, Frame, PrefixMap, Subspace, Union

__version__ = "0.1.0"

__all__ = [
    "Cantor",
    "ClopenSet",
    "Convergent",
    "Cut",
    "CutGraph",
    "Finite",
    "Frame",
    "PrefixMap",
    "Subspace",
    "Union",
    "complex_graph",
    "enumerate_cuts",
]
