"""Exact tools for pairwise cross t-intersecting families of subsets."""

from .errors import CapError, HypothesisError, LemmaViolation, ParameterError, XfamError
from .family import Family, FamilySeq, canonicalize, is_pairwise_cross_t_intersecting, norm
from .formulas import katona_M, main_bound

__all__ = [
    "CapError", "HypothesisError", "LemmaViolation", "ParameterError", "XfamError",
    "Family", "FamilySeq", "canonicalize", "is_pairwise_cross_t_intersecting", "norm",
    "katona_M", "main_bound",
]
__version__ = "0.1.0"
