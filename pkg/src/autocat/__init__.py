"""Exact detection and classification of autocatalytic cores in reaction networks."""

__version__ = "0.1.0"

from .network import (Reaction, ReactionNetwork, SubNetwork, catalysts_of, food_waste,
                      is_well_formed, net_stoich, reverse_reaction, reversible_extension, submatrix)
from .algebra import ChildSelection, RationalMatrix, cs_matrix, is_semipositive
from .formats import parse, load, format_network
from .cores import (CoreKind, CoreReport, SearchBounds, enumerate_autocatalytic_cores,
                    enumerate_cs_cores, enumerate_mas, is_hard)

__all__ = [
    "ChildSelection", "CoreKind", "CoreReport", "RationalMatrix", "Reaction", "ReactionNetwork",
    "SearchBounds", "SubNetwork", "catalysts_of", "cs_matrix", "enumerate_autocatalytic_cores",
    "enumerate_cs_cores", "enumerate_mas", "food_waste", "format_network", "is_hard",
    "is_semipositive", "is_well_formed", "load", "net_stoich", "parse", "reverse_reaction",
    "reversible_extension", "submatrix",
]
