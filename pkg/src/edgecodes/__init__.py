"""Evaluation codes on toric sets parameterized by the edges of bipartite graphs."""

from .gf import GF, FieldElem, FieldSpec
from .graphs import Graph, canonicalize, from_dsl
from .points import PointSet, build_torus, build_x, build_y
from .codes import CodeParams, code_params, evaluation_profile, min_distance, regularity_index

__all__ = [
    "GF", "FieldElem", "FieldSpec", "Graph", "canonicalize", "from_dsl",
    "PointSet", "build_torus", "build_x", "build_y",
    "CodeParams", "code_params", "evaluation_profile", "min_distance", "regularity_index",
]
