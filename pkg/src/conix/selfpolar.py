"""Intersection through the common self-polar triangle of two conics.

The triangle's vertices are the eigenvectors of ``adj(C2) C1``. Taken as
reference points they diagonalize both conics at once, so the intersection
reduces to two linear equations in ``x'^2`` and ``y'^2``.

Two special pencils are handled:

* conics tangent at one point: two vertices collapse onto the tangency
  point, and a parabola frame anchored there leaves a quadratic;
* conics in double contact (or concentric circles): a repeated eigenvalue
  owns a whole line of eigenvectors, and any conjugate pair on it completes
  a valid triangle.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .canonical import parabola_frame
from .errors import (
    CollinearFrame,
    ConixError,
    DenominatorCollapse,
    FrameFailure,
    TangentPointNotOnConics,
)
from .frames import homography_from_frame, transform_conic, COLLINEAR_TOL
from .numerics import eigen3
from .numerics.solvers import null_vector, trim_leading
from .numerics import kernels
from .projective import (
    SEPARATION,
    Conic,
    HomogeneousTriple,
    adjugate,
    as_array,
    as_conic,
    check_distinct,
    cross3,
    det3,
    points_on_conic,
    projective_distance,
    require_nondegenerate,
    residual,
)
from .result import IntersectionSet

DIAG_TOL = 1e-8
COINCIDE_TOL = 1e-7
ON_CONIC_TOL = 1e-8
# relative eigenvalue gap below which the pencil is examined for tangency
CLUSTER_TOL = 1e-6
RANK1_TOL = 1e-8
DENOM_TOL = 1e-10
TANGENT_FORM_TOL = 1e-6
# minimum chordal distance between the tangent frame's reference points
COMPANION_SEP = 0.2

UNIT_POINTS = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1))


@dataclass(frozen=True)
class SelfPolarFrame:
    """Vertices of a common self-polar triangle plus the chosen unit point.

    When the conics touch at a single point, ``tangency`` holds that point and
    ``unit_point`` is ``None``; ``vertices`` are then the raw eigenvectors.
    """

    vertices: tuple[HomogeneousTriple, HomogeneousTriple, HomogeneousTriple]
    unit_point: HomogeneousTriple | None
    tangency: HomogeneousTriple | None = None
    eigenvalues: tuple[complex, ...] = ()
    double_contact: bool = False


def _pencil_matrix(C1n: Conic, C2n: Conic) -> np.ndarray:
    return adjugate(C2n.matrix) @ C1n.matrix


def _on_both(C1: Conic, C2: Conic, v, tol: float = ON_CONIC_TOL) -> bool:
    return residual(C1, v) <= tol and residual(C2, v) <= tol


def _choose_unit_point(vertices, seed: int = 0) -> HomogeneousTriple:
    vs = [as_array(v) for v in vertices]
    norms = [np.linalg.norm(v) for v in vs]

    def ok(u):
        nu = np.linalg.norm(u)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            d = abs(det3(np.column_stack((vs[i], vs[j], u))))
            if d < COLLINEAR_TOL * norms[i] * norms[j] * nu:
                return False
        return True

    for u in UNIT_POINTS:
        u = np.array(u, dtype=complex)
        if ok(u):
            return HomogeneousTriple._wrap(u)
    rng = np.random.default_rng(seed)
    for _ in range(16):
        u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        if ok(u):
            return HomogeneousTriple._wrap(u)
    raise CollinearFrame("no admissible unit point for the self-polar frame")


def _double_contact_vertices(A: np.ndarray, C1: Conic, pole) -> tuple:
    # A = M - mu I has rank 1; its dominant row is the line of eigenvectors.
    rows = np.linalg.norm(A, axis=1)
    ell = A[int(np.argmax(rows))]
    i = int(np.argmax(np.abs(ell)))
    eye = np.eye(3, dtype=complex)
    cands = [cross3(ell, eye[j]) for j in range(3) if j != i]
    x = max(cands, key=lambda v: residual(C1, v))
    y = cross3(ell, C1.matrix @ x)
    # the two conjugate points go to x' and w' so the pole keeps y' alone
    return (
        HomogeneousTriple._wrap(x),
        HomogeneousTriple._wrap(as_array(pole)),
        HomogeneousTriple._wrap(y),
    )


def common_self_polar_triangle(C1, C2) -> SelfPolarFrame:
    """Common self-polar triangle of two conics, or the tangency point.

    Eigenvectors are ordered by decreasing real part of their eigenvalue.
    Tangency is flagged when two eigenvectors coincide, when an eigenvector
    lies on both conics, or when a near-double eigenvalue has a one-dimensional
    eigenspace whose vector lies on both conics.
    """
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    require_nondegenerate(C1, C2)
    check_distinct(C1, C2)
    C1n = C1.normalized()
    C2n = C2.normalized()
    M = _pencil_matrix(C1n, C2n)
    pairs = eigen3(M)
    mus = tuple(p.value for p in pairs)
    vecs = tuple(p.vector for p in pairs)

    scale = max(max(abs(m) for m in mus), 1e-300)
    i, j, k = min(((0, 1, 2), (0, 2, 1), (1, 2, 0)), key=lambda t: abs(mus[t[0]] - mus[t[1]]))
    gap = abs(mus[i] - mus[j]) / scale
    coincide = projective_distance(vecs[i], vecs[j]) < COINCIDE_TOL
    on_both = any(_on_both(C1n, C2n, v) for v in vecs)

    if coincide or on_both or gap <= CLUSTER_TOL:
        mu_bar = (M[0, 0] + M[1, 1] + M[2, 2] - mus[k]) / 2
        A = M - mu_bar * np.eye(3)
        v, rel = null_vector(A)
        if rel <= RANK1_TOL:
            verts = _double_contact_vertices(A, C1n, vecs[k])
            return SelfPolarFrame(verts, _choose_unit_point(verts), None, mus, True)
        t = HomogeneousTriple._wrap(v)
        if _on_both(C1n, C2n, t):
            return SelfPolarFrame(vecs, None, t, mus)

    return SelfPolarFrame(vecs, _choose_unit_point(vecs), None, mus)


def offdiagonal_mass(C: Conic) -> float:
    m = C.matrix
    off = m - np.diag(np.diag(m))
    return float(np.linalg.norm(off) / np.linalg.norm(m))


def intersect_self_polar(C1, C2) -> IntersectionSet:
    """Four intersection points from the common self-polar triangle.

    Dispatches to :func:`intersect_tangent_case` when the conics touch at a
    single point. Raises :class:`DenominatorCollapse` when the diagonal forms
    leave ``x'^2`` undetermined.
    """
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    frame = common_self_polar_triangle(C1, C2)
    if frame.tangency is not None:
        out = intersect_tangent_case(C1, C2, frame.tangency)
        out.diagnostics["self_polar_frame"] = frame
        return out

    C1n = C1.normalized()
    C2n = C2.normalized()
    H = homography_from_frame(*frame.vertices, frame.unit_point)
    C1p = transform_conic(H, C1n)
    C2p = transform_conic(H, C2n)
    off = max(offdiagonal_mass(C1p), offdiagonal_mass(C2p))
    if off > DIAG_TOL:
        raise FrameFailure(f"self-polar frame does not diagonalize the conics (off-diagonal {off:.3g})")

    a1, c1, f1 = (complex(v) for v in np.diag(C1p.matrix))
    a2, c2, f2 = (complex(v) for v in np.diag(C2p.matrix))
    den = a2 * c1 - a1 * c2
    if abs(den) <= DENOM_TOL * (abs(a2 * c1) + abs(a1 * c2)):
        raise DenominatorCollapse("diagonal forms are proportional in x' and y'")
    x_sq = (f1 * c2 - f2 * c1) / den
    y_sq = (f2 * a1 - f1 * a2) / den
    if frame.double_contact:
        # x' and w' vertices share an eigenvalue, so y'^2 vanishes exactly
        y_sq = 0j
    sx = cmath.sqrt(x_sq + 0j)
    sy = cmath.sqrt(y_sq + 0j)
    local = ((sx, sy), (-sx, -sy), (sx, -sy), (-sx, sy))
    pts = tuple(H.apply(np.array([x, y, 1.0], dtype=complex)) for x, y in local)

    res = [max(residual(C1n, p), residual(C2n, p)) for p in pts]
    diagnostics = {
        "self_polar_frame": frame,
        "homography": H,
        "transformed": (C1p, C2p),
        "offdiagonal_mass": off,
        "x_prime_sq": x_sq,
        "y_prime_sq": y_sq,
        "x_prime": sx,
        "y_prime": sy,
        "double_contact": frame.double_contact,
        "tangency": False,
        "residuals": res,
        "max_residual": max(res),
    }
    return IntersectionSet(pts, "self-polar", diagnostics)


def _tangent_companions(C1n: Conic, t: HomogeneousTriple):
    # points_on_conic order (q1, q2, q3); (q2, q3) is preferred when both sit
    # well away from t, otherwise the best-separated pair among all candidates
    def spread(p, q):
        return min(projective_distance(p, t), projective_distance(q, t), projective_distance(p, q))

    cands = []
    for start in range(3):
        try:
            cands.extend(points_on_conic(C1n, start))
        except ConixError:
            continue
    if len(cands) >= 3 and spread(cands[1], cands[2]) >= COMPANION_SEP:
        return cands[1], cands[2]
    best = max(
        ((p, q) for i, p in enumerate(cands) for q in cands[i + 1:]),
        key=lambda pq: spread(*pq),
        default=None,
    )
    if best is None or spread(*best) < SEPARATION:
        raise FrameFailure("could not find two points on C1 away from the tangency point")
    return best


def intersect_tangent_case(C1, C2, p_tangent, tol: float = ON_CONIC_TOL) -> IntersectionSet:
    """Intersection of two conics touching at ``p_tangent``.

    ``p_tangent`` becomes the ``y'`` reference point of a parabola frame of
    ``C1``; ``C2`` then has no ``x'y'`` or ``y'^2`` term and the other two
    intersections solve a quadratic. The tangency point is listed twice.
    """
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    require_nondegenerate(C1, C2)
    check_distinct(C1, C2)
    C1n = C1.normalized()
    C2n = C2.normalized()
    t = p_tangent if isinstance(p_tangent, HomogeneousTriple) else HomogeneousTriple(p_tangent)
    r1, r2 = residual(C1n, t), residual(C2n, t)
    if r1 > tol or r2 > tol:
        raise TangentPointNotOnConics(
            f"tangency point residuals {r1:.3g}, {r2:.3g} exceed tolerance {tol:.3g}"
        )

    p2, p3 = _tangent_companions(C1n, t)
    frame, H, C1p = parabola_frame(C1n, t, p2, p3)
    C2p = transform_conic(H, C2n)
    a, b, c, d, e, f = C2p.coefficients()
    form_dev = max(abs(b), abs(c))
    if form_dev > TANGENT_FORM_TOL:
        raise FrameFailure(f"C2 keeps x'y' / y'^2 terms in the tangent frame ({form_dev:.3g})")

    quad = (a + e, d, f)
    cs, drop = trim_leading(quad)
    if drop == 0:
        roots = kernels.quadratic_roots(*cs)
    elif drop == 1:
        roots = (-cs[1] / cs[0],)
    else:
        roots = ()
    pts = [H.apply(np.array([x, x * x, 1.0], dtype=complex)) for x in roots]
    pts.extend([t] * (4 - len(pts)))

    res = [max(residual(C1n, p), residual(C2n, p)) for p in pts]
    diagnostics = {
        "frame": frame,
        "homography": H,
        "transformed": (C1p, C2p),
        "quadratic": quad,
        "x_prime": tuple(roots),
        "tangent_form_deviation": form_dev,
        "tangency": True,
        "tangent_point": t,
        "tangent_multiplicity": 4 - len(roots),
        "residuals": res,
        "max_residual": max(res),
    }
    return IntersectionSet(tuple(pts), "self-polar-tangent", diagnostics)
