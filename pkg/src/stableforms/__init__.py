"""Exact computations with stable forms and half-flat SU(3)-structures on Lie algebras."""
from .exterior import KForm, parse_form, wedge
from .halfflat import (
    lambda_sign_analysis,
    obstruction_certificate,
    refined_metric_obstruction,
    verify_half_flat,
)
from .lie import LieAlgebraPresentation, cohomology_dims, jacobi_check, parse_presentation
from .stable import lambda_invariant, metric_gram

__all__ = [
    "KForm",
    "LieAlgebraPresentation",
    "cohomology_dims",
    "jacobi_check",
    "lambda_invariant",
    "lambda_sign_analysis",
    "metric_gram",
    "obstruction_certificate",
    "parse_form",
    "parse_presentation",
    "refined_metric_obstruction",
    "verify_half_flat",
    "wedge",
]
