"""Cartier operator, Cartier rank and a-number of cyclic covers y^n = f(x)."""

from .fields import FieldCtx, FieldElem, make_field, pth_root
from .polynomials import Poly, gcd_monic, vanishing_order, frobenius_decompose, classical_cartier_rational
from .curve import (INF, RamificationType, CurveInstance, EigenData, canonicalize_type, complete_type,
                    normalize_infinity, genus, eigen_dims, sigma_eps, eigen_data, instance_from_text)
from .cartier import (CartierBlock, AnalysisReport, BoundCheck, InvariantViolation, h_rank, decomp,
                      cartier_block, rank_semilinear, analyze, check_bounds)

__all__ = [
    "FieldCtx", "FieldElem", "make_field", "pth_root",
    "Poly", "gcd_monic", "vanishing_order", "frobenius_decompose", "classical_cartier_rational",
    "INF", "RamificationType", "CurveInstance", "EigenData", "canonicalize_type", "complete_type",
    "normalize_infinity", "genus", "eigen_dims", "sigma_eps", "eigen_data", "instance_from_text",
    "CartierBlock", "AnalysisReport", "BoundCheck", "InvariantViolation", "h_rank", "decomp",
    "cartier_block", "rank_semilinear", "analyze", "check_bounds",
]
