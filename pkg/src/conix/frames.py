"""Projective frames: the homography sending the reference frame to four points."""

from __future__ import annotations

import numpy as np

from .errors import CollinearFrame, SingularSystem
from .projective import Conic, HomogeneousTriple, adjugate, as_array, det3

COLLINEAR_TOL = 1e-10
SINGULAR_TOL = 1e-12

_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


class Homography:
    """Invertible 3x3 complex matrix acting on homogeneous coordinates.

    The adjugate is cached and used for the inverse map, so no division is
    ever performed. ``weights`` holds the scale factors of the frame columns
    when the homography was built by :func:`homography_from_frame`.
    """

    __slots__ = ("_h", "_adj", "weights")

    def __init__(self, matrix, weights=None):
        h = np.array(matrix, dtype=complex)
        if h.shape != (3, 3) or not np.all(np.isfinite(h)):
            raise ValueError("homography must be a finite 3x3 matrix")
        norm = np.linalg.norm(h)
        if norm == 0 or abs(det3(h)) < SINGULAR_TOL * norm**3:
            raise SingularSystem("homography matrix is (numerically) singular")
        h.flags.writeable = False
        adj = adjugate(h)
        adj.flags.writeable = False
        self._h = h
        self._adj = adj
        self.weights = None if weights is None else tuple(complex(w) for w in weights)

    @property
    def matrix(self) -> np.ndarray:
        return self._h

    @property
    def adjugate(self) -> np.ndarray:
        return self._adj

    def apply(self, xp) -> HomogeneousTriple:
        return HomogeneousTriple._wrap(self._h @ as_array(xp))

    def apply_inverse(self, x) -> HomogeneousTriple:
        return HomogeneousTriple._wrap(self._adj @ as_array(x))

    def transform_conic(self, C: Conic) -> Conic:
        return transform_conic(self, C)

    def __repr__(self):
        return f"Homography({np.array2string(self._h, precision=5)})"


def homography_from_frame(p0, p1, p2, p3) -> Homography:
    """Homography ``H`` with ``H e_i ~ p_i`` and ``H (1, 1, 1) ~ p3``.

    Solves ``[p0 p1 p2] lam = p3`` (unit point weight fixed to 1) and returns
    ``H = [lam0 p0, lam1 p1, lam2 p2]``.
    """
    pts = [as_array(p) for p in (p0, p1, p2, p3)]
    norms = [float(np.linalg.norm(p)) for p in pts]
    for i, j, k in _TRIPLES:
        d = abs(det3(np.column_stack((pts[i], pts[j], pts[k]))))
        if d < COLLINEAR_TOL * norms[i] * norms[j] * norms[k]:
            raise CollinearFrame(f"frame points p{i}, p{j}, p{k} are collinear", triple=(i, j, k))
    P = np.column_stack(pts[:3])
    lam = adjugate(P) @ pts[3] / det3(P)
    H = P * lam
    try:
        return Homography(H, weights=lam)
    except SingularSystem as exc:
        raise SingularSystem(f"frame weights are ill-conditioned: {lam}") from exc


def apply(H: Homography, xp) -> HomogeneousTriple:
    """Map frame coordinates back to the original ones: ``x ~ H x'``."""
    return H.apply(xp)


def transform_conic(H: Homography, C: Conic) -> Conic:
    """``H^T C H``, re-symmetrized and scaled to unit Frobenius norm."""
    h = H.matrix
    m = h.T @ C.matrix @ h
    m = 0.5 * (m + m.T)
    return Conic(m / np.linalg.norm(m))
