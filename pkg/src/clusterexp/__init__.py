"""Exact cluster-variable expansions for arcs in triangulated surfaces."""

from .expand import ExpansionResult, MethodDisagreement, expand, expand_all, expand_shape
from .laurent import LaurentPolynomial, Monomial, ParseError, UnassignedVariable, Var, parse_monomial, parse_polynomial
from .oriented import WeightMatrix, matrix_weight_polynomial, shape_to_matrix
from .poset import Band, BothLoops, LabeledPoset, ShapeSpec, SourceLoop, TargetLoop, enumerate_ideals, poset_from_shape, weight_polynomial
from .surface import Surface, SurfaceError, arc_to_shape, load_surface, open_self_folded, validate_surface
from .twalk import enumerate_twalks, minimal_twalk, twalk_reduce, twalk_values

__all__ = [
    "Band", "BothLoops", "ExpansionResult", "LabeledPoset", "LaurentPolynomial", "MethodDisagreement",
    "Monomial", "ParseError", "ShapeSpec", "SourceLoop", "Surface", "SurfaceError", "TargetLoop",
    "UnassignedVariable", "Var", "WeightMatrix", "arc_to_shape", "enumerate_ideals", "enumerate_twalks",
    "expand", "expand_all", "expand_shape", "load_surface", "matrix_weight_polynomial", "minimal_twalk",
    "open_self_folded", "parse_monomial", "parse_polynomial", "poset_from_shape", "shape_to_matrix",
    "twalk_reduce", "twalk_values", "validate_surface", "weight_polynomial",
]
