"""Core and CS-core search, hardness, MAS and unit-stoichiometry analysis."""
from .analysis import (Hardness, MinimalAutocatalyticSet, UnitClass, UnitClassification,
                       contributing_dichotomy_check, core_graph, drainable_circuits, enumerate_mas,
                       extra_as_circuit,
                       hardness, is_hard, membership_report, reversible_extension_cores,
                       unit_stoich_classify)
from .search import (CoreKind, CoreReport, SearchBounds, classify_cs_core,
                     enumerate_autocatalytic_cores, enumerate_cs_cores, enumerate_extra_cs_cores,
                     is_autocatalytic_sub, is_extra_cs_candidate, single_reaction_cores,
                     unique_cs_of_core)

__all__ = [
    "CoreKind", "CoreReport", "Hardness", "MinimalAutocatalyticSet", "SearchBounds", "UnitClass",
    "UnitClassification", "classify_cs_core", "contributing_dichotomy_check", "core_graph",
    "drainable_circuits", "enumerate_autocatalytic_cores", "enumerate_cs_cores",
    "enumerate_extra_cs_cores", "enumerate_mas", "extra_as_circuit", "hardness", "is_autocatalytic_sub",
    "is_extra_cs_candidate", "is_hard", "membership_report", "reversible_extension_cores",
    "single_reaction_cores", "unique_cs_of_core", "unit_stoich_classify",
]
