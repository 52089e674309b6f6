"""Exact computations with tangent-filling plane curves over finite fields."""

from .curve import CurveReport, PlaneCurve, analyze
from .errors import (DomainError, FieldMismatchError, InvalidInputError, TangentFillError,
                     VerificationError)
from .gallery import (WitnessResult, agt_curve, agt_membership, agt_tangent_coeffs,
                      find_tangent_witness, hermitian_curve, hermitian_dual_image,
                      hermitian_line_profile, projective_triangle, smooth_conic,
                      strange_example)
from .gf import Field, FieldElement, field_of_order, make_field, quadratic_extension
from .homopoly import HomPoly, expand_linear_power, local_expansion, make_poly
from .proj import ProjectivePlane, plane
from .search import SearchOutcome, random_curve, search_min_tangent_filling

__version__ = "0.1.0"

__all__ = [
    "CurveReport", "DomainError", "Field", "FieldElement", "FieldMismatchError", "HomPoly",
    "InvalidInputError", "PlaneCurve", "ProjectivePlane", "SearchOutcome", "TangentFillError",
    "VerificationError", "WitnessResult", "agt_curve", "agt_membership", "agt_tangent_coeffs",
    "analyze", "expand_linear_power", "field_of_order", "find_tangent_witness",
    "hermitian_curve", "hermitian_dual_image", "hermitian_line_profile", "local_expansion",
    "make_field", "make_poly", "plane", "projective_triangle", "quadratic_extension",
    "random_curve", "search_min_tangent_filling", "smooth_conic", "strange_example",
]
