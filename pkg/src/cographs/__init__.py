"""Cograph recognition, search and tau-criticality."""

from .cotree import (
    Cotree,
    clique_and_anticlique,
    homogeneous_in_cograph,
    is_cograph,
    is_cograph_mask,
    is_homogeneous,
)
from .search import TauParams, TauVerdict, is_tau_critical, largest_cograph, largest_cograph_mask

__all__ = [
    "Cotree",
    "clique_and_anticlique",
    "homogeneous_in_cograph",
    "is_cograph",
    "is_cograph_mask",
    "is_homogeneous",
    "TauParams",
    "TauVerdict",
    "is_tau_critical",
    "largest_cograph",
    "largest_cograph_mask",
]
