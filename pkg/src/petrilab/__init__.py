"""Exact computations with Petri maps on hyperelliptic curves, bilinear
tensors over finite fields and rank loci of matrix spaces."""

__version__ = "0.1.0"

from .curve import INFINITY, Curve, Divisor, FunctionElement, Point, canonical_divisor, curve_new, valuation
from .fields import QQ, ExtensionField, PrimeField, extend, field_make, finite_field
from .hopf import (
    BilinearTensor,
    count_rank_le,
    hopf_witness_search,
    image_span_dim,
    injective_on_factors,
)
from .petri import inequality_chain, petri_matrix, petri_report, restricted_kernel_dim
from .riemann_roch import h0, rr_check, rr_space

__all__ = [
    "BilinearTensor", "Curve", "Divisor", "ExtensionField", "FunctionElement", "INFINITY", "Point",
    "PrimeField", "QQ", "canonical_divisor", "count_rank_le", "curve_new", "extend", "field_make",
    "finite_field", "h0", "hopf_witness_search", "image_span_dim", "inequality_chain",
    "injective_on_factors", "petri_matrix", "petri_report", "restricted_kernel_dim", "rr_check",
    "rr_space", "valuation",
]
