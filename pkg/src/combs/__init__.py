"""Combs: validation, layered construction, the comb dichotomy and W_G."""

from .builder import (
    build_layers,
    build_layers_mask,
    comb_or_bound,
    fact_bound,
    fact_constant,
    required_tooth,
)
from .models import (
    BoundCertificate,
    Comb,
    CombLayer,
    CombLayers,
    comb_violations,
    validate_comb,
)
from .width import WGWitness, compute_W_G, w_g_witness

__all__ = [
    "build_layers",
    "build_layers_mask",
    "comb_or_bound",
    "fact_bound",
    "fact_constant",
    "required_tooth",
    "BoundCertificate",
    "Comb",
    "CombLayer",
    "CombLayers",
    "comb_violations",
    "validate_comb",
    "WGWitness",
    "compute_W_G",
    "w_g_witness",
]
