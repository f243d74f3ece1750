"""Intersection of two conics in the complex projective plane.

Two coordinate-change methods are provided: mapping one conic to a parabola
(a quartic in one variable) and diagonalizing both conics in their common
self-polar triangle (a pair of linear equations in squared coordinates).
An elimination-based oracle cross-checks both.

>>> import conix
>>> s = conix.intersect([[1, 0, 0], [0, 1, 0], [0, 0, -1]],
...                     [[1, 0, -1], [0, 1, 0], [-1, 0, 0]])
>>> len(s.points)
4
"""

from .canonical import intersect_canonical
from .errors import (
    AllZeroCoefficients,
    CollinearFrame,
    ConixError,
    DegenerateConic,
    DegenerateResult,
    DenominatorCollapse,
    FrameFailure,
    IdenticalConics,
    NonConvergence,
    OracleInconclusive,
    ParallelInputs,
    ParseError,
    SingularSystem,
    TangentPointNotOnConics,
    ZeroLeadingCoefficient,
    ZeroMatrix,
)
from .frames import Homography, homography_from_frame, transform_conic
from .numerics import BACKEND
from .projective import (
    AsymmetricMatrixWarning,
    Conic,
    HomogeneousTriple,
    conic_from_coefficients,
    conic_from_matrix,
    cross,
    evaluate,
    normalize_affine,
    points_on_conic,
    polar_line,
    polar_point,
    projective_distance,
    residual,
)
from .result import IntersectionSet
from .selfpolar import common_self_polar_triangle, intersect_self_polar, intersect_tangent_case
from .verify import (
    ConicPair,
    MatchReport,
    match_point_sets,
    oracle_intersect,
    random_conic_pair,
    residual_report,
)

__version__ = "0.1.0"

_METHODS = {
    "canonical": intersect_canonical,
    "self-polar": intersect_self_polar,
    "selfpolar": intersect_self_polar,
    "oracle": oracle_intersect,
}


def intersect(C1, C2, method: str = "self-polar") -> IntersectionSet:
    """Four intersection points of two conics (matrices or :class:`Conic`).

    ``method`` is ``"self-polar"`` (default), ``"canonical"`` or ``"oracle"``.
    The self-polar method falls back to the canonical one when its diagonal
    forms cannot determine ``x'^2``.
    """
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_METHODS)}") from None
    if fn is intersect_self_polar:
        try:
            return fn(C1, C2)
        except DenominatorCollapse:
            s = intersect_canonical(C1, C2)
            s.diagnostics["rerouted_from"] = "self-polar"
            return s
    return fn(C1, C2)


__all__ = [
    "AllZeroCoefficients",
    "AsymmetricMatrixWarning",
    "BACKEND",
    "CollinearFrame",
    "Conic",
    "ConicPair",
    "ConixError",
    "DegenerateConic",
    "DegenerateResult",
    "DenominatorCollapse",
    "FrameFailure",
    "HomogeneousTriple",
    "Homography",
    "IdenticalConics",
    "IntersectionSet",
    "MatchReport",
    "NonConvergence",
    "OracleInconclusive",
    "ParallelInputs",
    "ParseError",
    "SingularSystem",
    "TangentPointNotOnConics",
    "ZeroLeadingCoefficient",
    "ZeroMatrix",
    "common_self_polar_triangle",
    "conic_from_coefficients",
    "conic_from_matrix",
    "cross",
    "evaluate",
    "homography_from_frame",
    "intersect",
    "intersect_canonical",
    "intersect_self_polar",
    "intersect_tangent_case",
    "match_point_sets",
    "normalize_affine",
    "oracle_intersect",
    "points_on_conic",
    "polar_line",
    "polar_point",
    "projective_distance",
    "random_conic_pair",
    "residual",
    "residual_report",
    "transform_conic",
]
