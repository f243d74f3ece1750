"""Intersection by mapping the first conic onto the parabola ``y = x^2``.

In the frame built from three points of ``C1`` and the pole of the chord
through two of them, ``C1`` becomes ``2 x^2 - 2 y w = 0`` and substituting
``y = x^2`` into ``C2`` leaves a single quartic in ``x``.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CollinearFrame,
    DegenerateResult,
    FrameFailure,
    ParallelInputs,
    SingularSystem,
)
from .frames import Homography, homography_from_frame, transform_conic
from .numerics import solve_closed_form
from .projective import (
    Conic,
    as_conic,
    check_distinct,
    cross,
    points_on_conic,
    polar_line,
    matrix_distance,
    require_nondegenerate,
    residual,
)
from .result import IntersectionSet

PARABOLA = np.array([[2, 0, 0], [0, 0, -1], [0, -1, 0]], dtype=complex) / np.sqrt(6)
PATTERN_TOL = 1e-8
RECOVERY_TOL = 1e-8
# C2 takes the parabola role when C1 is this much worse conditioned
SWAP_RATIO = 1e3


def pattern_deviation(C: Conic, pattern: np.ndarray = PARABOLA) -> float:
    """Projective distance between a conic matrix and a reference pattern."""
    return matrix_distance(C.matrix, pattern)


def canonical_frame(C1: Conic, start: int = 0):
    """Reference points ``(p0, p1, p2, p3)`` turning ``C1`` into a parabola.

    ``p1, p2, p3`` lie on ``C1``; ``p0`` is the meet of the tangents at
    ``p1`` and ``p2``.
    """
    C1 = as_conic(C1)
    p1, p2, p3 = points_on_conic(C1, start)
    p0 = cross(polar_line(C1, p1), polar_line(C1, p2))
    return p0, p1, p2, p3


def parabola_frame(C1: Conic, p1, p2, p3) -> tuple[tuple, Homography, Conic]:
    """Frame and homography for given points on ``C1``; checks the parabola form."""
    p0 = cross(polar_line(C1, p1), polar_line(C1, p2))
    H = homography_from_frame(p0, p1, p2, p3)
    C1p = transform_conic(H, C1)
    dev = pattern_deviation(C1p)
    if dev > PATTERN_TOL:
        raise FrameFailure(f"transformed C1 is not the canonical parabola (deviation {dev:.3g})")
    return (p0, p1, p2, p3), H, C1p


def _canonical_homography(C1: Conic):
    last = None
    for start in range(3):
        try:
            _, p1, p2, p3 = canonical_frame(C1, start)
            return parabola_frame(C1, p1, p2, p3)
        except (CollinearFrame, SingularSystem, ParallelInputs, DegenerateResult, FrameFailure) as exc:
            last = exc
    raise FrameFailure(f"no usable canonical frame for C1: {last}") from last


def intersect_canonical(C1, C2, tol: float = RECOVERY_TOL) -> IntersectionSet:
    """Four intersection points of two conics via the canonical parabola.

    Roots ``x'`` of the quartic are lifted to ``(x', x'^2, 1)`` and mapped
    back. When the quartic loses degree, the missing solutions are reference
    points lying on both conics (in practice ``p1``, the parabola's point at
    infinity); ``tol`` bounds the residual accepted for them. If ``C1`` is far
    worse conditioned than ``C2`` the roles are exchanged (``swapped``).
    """
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    require_nondegenerate(C1, C2)
    check_distinct(C1, C2)
    C1n = C1.normalized()
    C2n = C2.normalized()
    # the set of intersections is symmetric in the two conics; a nearly
    # degenerate C1 makes a poor parabola, so hand that role to C2
    swapped = np.linalg.cond(C1n.matrix) > SWAP_RATIO * np.linalg.cond(C2n.matrix)
    if swapped:
        C1n, C2n = C2n, C1n

    frame, H, C1p = _canonical_homography(C1n)
    C2p = transform_conic(H, C2n)
    a, b, c, d, e, f = C2p.coefficients()
    quartic = (c, b, a + e, d, f)
    sol = solve_closed_form(quartic)

    pts = [H.apply(np.array([x, x * x, 1.0], dtype=complex)) for x in sol.roots]

    recovered: list[int] = []
    if sol.degree_drop:
        # p1 first: it is the only point at infinity of the canonical parabola
        order = (1, 0, 2, 3)
        scored = [(max(residual(C1n, frame[i]), residual(C2n, frame[i])), i) for i in order]
        cands = [s for s in scored if s[0] <= tol]
        chosen = cands[0] if cands else min(scored)
        recovered.append(chosen[1])
        pts.extend([frame[chosen[1]]] * sol.degree_drop)

    res = [max(residual(C1n, p), residual(C2n, p)) for p in pts]
    diagnostics = {
        "frame": frame,
        "homography": H,
        "transformed": (C1p, C2p),
        "quartic": quartic,
        "quartic_roots": sol.roots,
        "resolvent_branch": sol.branch,
        "degree_drop": sol.degree_drop,
        "recovered_reference": recovered,
        "swapped": bool(swapped),
        "pattern_deviation": pattern_deviation(C1p),
        "residuals": res,
        "max_residual": max(res),
    }
    return IntersectionSet(tuple(pts), "canonical", diagnostics)


__all__ = [
    "PARABOLA",
    "canonical_frame",
    "intersect_canonical",
    "parabola_frame",
    "pattern_deviation",
]
