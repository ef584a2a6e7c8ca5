"""Exact computations on finite-dimensional diffeological vector spaces.

Rationals are accepted as ``int``, ``str`` ("p/q") or ``fractions.Fraction``.
"""

import os
from fractions import Fraction

_here = os.path.dirname(__file__)
if "DIFFEOLIN_DATA_DIR" not in os.environ and os.path.exists(os.path.join(_here, "paper-examples.json")):
    os.environ["DIFFEOLIN_DATA_DIR"] = _here

from ._diffeolin import (  # noqa: E402
    Expr,
    Space,
    UnsupportedError,
    bundled_examples_path,
    check_map,
    classify,
    cross_validate,
    hat_dual,
    load_spaces,
    parse_expr,
    smooth_bilinear_dim,
    smooth_curried_dim,
    smooth_hom_dim,
    tensor_dual_dims,
    verify,
)
from ._diffeolin import dual_map as _dual_map  # noqa: E402


def dual_map(domain, codomain, matrix):
    """Matrix of g -> g∘f on the dual bases, as Fractions."""
    return [[Fraction(x) for x in row] for row in _dual_map(domain, codomain, matrix)]


def singular_span(space):
    return [[Fraction(x) for x in row] for row in space.singular_span()]


__all__ = [
    "Expr",
    "Space",
    "UnsupportedError",
    "bundled_examples_path",
    "check_map",
    "classify",
    "cross_validate",
    "dual_map",
    "hat_dual",
    "load_spaces",
    "parse_expr",
    "singular_span",
    "smooth_bilinear_dim",
    "smooth_curried_dim",
    "smooth_hom_dim",
    "tensor_dual_dims",
    "verify",
]
