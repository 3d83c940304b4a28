"""Finite-field linear codes: construction, exact enumeration and audits."""

from .code_core import LinearCode, WeightDistribution, macwilliams, weight_distribution
from .families import FamilyParams, build_family, predict_family
from .galois import FieldSpec, field_create

__all__ = [
    "FamilyParams",
    "FieldSpec",
    "LinearCode",
    "WeightDistribution",
    "build_family",
    "field_create",
    "macwilliams",
    "predict_family",
    "weight_distribution",
]
