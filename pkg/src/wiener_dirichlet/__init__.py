"""Absolutely convergent Dirichlet series, their Bohr lift, and composition operators."""

__version__ = "0.1.0"

from .bohr import PowerSeries, factorize, integer_image, inverse_lift, lift
from .dirichlet import DirichletSeries, a_plus_norm_partial, evaluate, exp_neg_log, mul
from .errors import ComputationError, ValidationError, WienerDirichletError
from .hermite import (QuadraticSymbol, classify, closed_form_norm, hermite, lower_bound,
                      ordinary_point_test)
from .symbols import (CompositionSymbol, OperatorDiagnosis, Verdict, image_basis,
                      kronecker_inf, norm_sequence, sufficient_condition)
from .torus import (GeneralSymbol, MonomialSymbol, TorusPolynomial, isometry_check_general,
                    isometry_check_monomial, monomial_compose)

__all__ = [
    "ComputationError", "CompositionSymbol", "DirichletSeries", "GeneralSymbol",
    "MonomialSymbol", "OperatorDiagnosis", "PowerSeries", "QuadraticSymbol",
    "TorusPolynomial", "ValidationError", "Verdict", "WienerDirichletError",
    "a_plus_norm_partial", "classify", "closed_form_norm", "evaluate", "exp_neg_log",
    "factorize", "hermite", "image_basis", "integer_image", "inverse_lift",
    "isometry_check_general", "isometry_check_monomial", "kronecker_inf", "lift",
    "lower_bound", "monomial_compose", "mul", "norm_sequence", "ordinary_point_test",
    "sufficient_condition",
]
