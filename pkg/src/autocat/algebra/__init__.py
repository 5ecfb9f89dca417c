"""Exact linear algebra on stoichiometric and CS matrices."""
from .childsel import ChildSelection, cs_matrix, perfect_matchings
from .lp import SemipositivityCertificate, is_semipositive, reduce_columns_semipositive
from .matrix import (RationalMatrix, det, det_sign, dependency_graph, is_irreducible,
                     is_metzler, metzler_part, rank)
from .spectral import CharPoly, char_poly, perron_root, perron_unstable

__all__ = [
    "CharPoly", "ChildSelection", "RationalMatrix", "SemipositivityCertificate",
    "char_poly", "cs_matrix", "dependency_graph", "det", "det_sign", "is_irreducible",
    "is_metzler", "is_semipositive", "metzler_part", "perfect_matchings", "perron_root",
    "perron_unstable", "rank", "reduce_columns_semipositive",
]
