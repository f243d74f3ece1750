"""Homogeneous coordinates, conic matrices and the pole/polar correspondence.

Everything here works in double precision complex arithmetic; real input is
promoted on entry. Triples stand for both points and lines of the projective
plane, so a single :class:`HomogeneousTriple` type serves both roles.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

from .errors import (
    AllZeroCoefficients,
    DegenerateConic,
    DegenerateResult,
    IdenticalConics,
    ParallelInputs,
    ZeroMatrix,
)
from .numerics import kernels

DEFAULT_TOL = 1e-10
DEGENERACY_TOL = 1e-12
ASYMMETRY_TOL = 1e-9
IDENTICAL_TOL = 1e-12
# minimum chordal separation for points picked on a conic
SEPARATION = 1e-3
MIN_SEPARATION = 1e-8


class AsymmetricMatrixWarning(UserWarning):
    """A conic was built from a matrix whose asymmetric part was not negligible."""


def as_array(x) -> np.ndarray:
    """Complex (3,) array view of a triple or array-like."""
    if isinstance(x, HomogeneousTriple):
        return x._c
    a = np.asarray(x, dtype=complex)
    if a.shape != (3,):
        raise ValueError(f"expected 3 homogeneous coordinates, got shape {a.shape}")
    return a


def projective_distance(u, v) -> float:
    """Chordal distance between two projective points, minimized over phase.

    Both triples are scaled to unit norm and ``v`` is rotated by the complex
    phase that best aligns it with ``u``. The result lies in ``[0, sqrt(2)]``.
    """
    a = as_array(u)
    b = as_array(v)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    c = np.vdot(b, a)
    if c != 0:
        b = b * (c / abs(c))
    return float(np.linalg.norm(a - b))


class HomogeneousTriple:
    """A point or line of the complex projective plane.

    Equality is projective: ``t == alpha * t`` for any nonzero complex alpha,
    decided at :data:`DEFAULT_TOL` in chordal distance. Use :meth:`equals` for
    another tolerance.
    """

    __slots__ = ("_c",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = coords[0]
        c = np.array(coords, dtype=complex).reshape(-1)
        if c.shape != (3,):
            raise ValueError(f"expected 3 homogeneous coordinates, got {c.shape[0]}")
        if not np.all(np.isfinite(c)):
            raise ValueError("homogeneous coordinates must be finite")
        if not np.any(c):
            raise ValueError("the zero triple is not a projective point")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "HomogeneousTriple":
        # trusted fast path for internally computed arrays
        obj = cls.__new__(cls)
        arr = np.array(arr, dtype=complex)
        if not np.any(arr) or not np.all(np.isfinite(arr)):
            raise DegenerateResult("computation produced an invalid triple")
        arr.flags.writeable = False
        obj._c = arr
        return obj

    @property
    def coords(self) -> np.ndarray:
        return self._c

    x = property(lambda self: complex(self._c[0]))
    y = property(lambda self: complex(self._c[1]))
    w = property(lambda self: complex(self._c[2]))

    def __array__(self, dtype=None, copy=None):
        return np.array(self._c, dtype=dtype)

    def __len__(self):
        return 3

    def __iter__(self):
        return iter(complex(v) for v in self._c)

    def __getitem__(self, i):
        return complex(self._c[i])

    def unit(self) -> np.ndarray:
        """Unit-norm representative with the largest coordinate real positive."""
        c = self._c / np.linalg.norm(self._c)
        k = int(np.argmax(np.abs(c)))
        return c * (abs(c[k]) / c[k])

    def equals(self, other, tol: float = DEFAULT_TOL) -> bool:
        return projective_distance(self, other) <= tol

    def __eq__(self, other):
        if not isinstance(other, HomogeneousTriple):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        parts = ", ".join(_fmt(v) for v in self._c)
        return f"HomogeneousTriple({parts})"


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def cross3(u, v) -> np.ndarray:
    """Plain cross product of two 3-vectors (``np.cross`` is slow on these)."""
    a0, a1, a2 = np.asarray(u).tolist()
    b0, b1, b2 = np.asarray(v).tolist()
    return np.array([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])


def adjugate(m: np.ndarray) -> np.ndarray:
    """Adjugate of a 3x3 matrix; its rows are cross products of the columns."""
    (a, b, c), (d, e, f), (g, h, i) = np.asarray(m).tolist()
    return np.array([
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ])


def det3(m: np.ndarray) -> complex:
    (a, b, c), (d, e, f), (g, h, i) = np.asarray(m).tolist()
    return complex(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


class Conic:
    """A conic as a symmetric complex 3x3 matrix defined up to scale.

    The coefficient accessors follow ``a x^2 + b xy + c y^2 + d x + e y + f``.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"conic matrix must be 3x3, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("conic matrix must be finite")
        norm = np.linalg.norm(m)
        if norm == 0:
            raise ZeroMatrix("the zero matrix does not define a conic")
        if np.linalg.norm(m - m.T) > ASYMMETRY_TOL * norm:
            raise ValueError("conic matrix is not symmetric; use conic_from_matrix")
        m = 0.5 * (m + m.T)
        m.flags.writeable = False
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    a = property(lambda self: complex(self._m[0, 0]))
    b = property(lambda self: complex(2 * self._m[0, 1]))
    c = property(lambda self: complex(self._m[1, 1]))
    d = property(lambda self: complex(2 * self._m[0, 2]))
    e = property(lambda self: complex(2 * self._m[1, 2]))
    f = property(lambda self: complex(self._m[2, 2]))

    def coefficients(self) -> tuple[complex, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self._m))

    def normalized(self) -> "Conic":
        obj = Conic.__new__(Conic)
        m = self._m / self.norm
        m.flags.writeable = False
        obj._m = m
        return obj

    def det(self) -> complex:
        return det3(self._m)

    def is_degenerate(self, tol: float = DEGENERACY_TOL) -> bool:
        return abs(self.det()) <= tol * self.norm**3

    def __array__(self, dtype=None, copy=None):
        return np.array(self._m, dtype=dtype)

    def __repr__(self):
        rows = "; ".join(", ".join(_fmt(v) for v in row) for row in self._m)
        return f"Conic([{rows}])"


def conic_from_coefficients(a, b, c, d, e, f) -> Conic:
    """Conic of ``a x^2 + b xy + c y^2 + d x + e y + f = 0``."""
    coeffs = np.array([a, b, c, d, e, f], dtype=complex)
    if not np.any(coeffs):
        raise AllZeroCoefficients("all six conic coefficients are zero")
    a, b, c, d, e, f = coeffs
    return Conic([[a, b / 2, d / 2], [b / 2, c, e / 2], [d / 2, e / 2, f]])


def conic_from_matrix(m) -> Conic:
    """Conic from any 3x3 matrix, keeping its symmetric part ``(m + m.T) / 2``.

    Emits :class:`AsymmetricMatrixWarning` when the discarded antisymmetric
    part exceeds :data:`ASYMMETRY_TOL` relative to the matrix norm.
    """
    m = np.array(m, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"conic matrix must be 3x3, got {m.shape}")
    norm = np.linalg.norm(m)
    if norm == 0:
        raise ZeroMatrix("the zero matrix does not define a conic")
    skew = np.linalg.norm(m - m.T) / norm
    if skew > ASYMMETRY_TOL:
        warnings.warn(
            f"conic matrix is not symmetric (relative skew {skew:.3g}); using (M + M^T)/2",
            AsymmetricMatrixWarning,
            stacklevel=2,
        )
    return Conic(0.5 * (m + m.T))


def as_conic(c) -> Conic:
    return c if isinstance(c, Conic) else conic_from_matrix(c)


def evaluate(C: Conic, x) -> complex:
    """The quadratic form ``x^T C x``."""
    v = as_array(x)
    return complex(v @ C.matrix @ v)


def residual(C: Conic, x) -> float:
    """``|x^T C x|`` normalized by ``||C|| ||x||^2``."""
    v = as_array(x)
    return abs(complex(v @ C.matrix @ v)) / (C.norm * float(np.vdot(v, v).real))


def polar_line(C: Conic, x) -> HomogeneousTriple:
    v = as_array(x)
    u = C.matrix @ v
    if np.linalg.norm(u) <= DEGENERACY_TOL * C.norm * np.linalg.norm(v):
        raise DegenerateResult("point is a singular point of the conic; polar undefined")
    return HomogeneousTriple._wrap(u)


def polar_point(C: Conic, u) -> HomogeneousTriple:
    """Pole of a line, using the adjugate in place of the inverse."""
    if C.is_degenerate():
        raise DegenerateConic("polar point requires a nondegenerate conic")
    v = as_array(u)
    x = adjugate(C.matrix) @ v
    if np.linalg.norm(x) <= DEGENERACY_TOL * C.norm**2 * np.linalg.norm(v):
        raise DegenerateConic("adjugate annihilates the line")
    return HomogeneousTriple._wrap(x)


def cross(u, v) -> HomogeneousTriple:
    """Join of two points or meet of two lines."""
    a = as_array(u)
    b = as_array(v)
    w = cross3(a, b)
    if np.linalg.norm(w) <= DEGENERACY_TOL * np.linalg.norm(a) * np.linalg.norm(b):
        raise ParallelInputs("cross product of projectively equal triples")
    return HomogeneousTriple._wrap(w)


def matrix_distance(m1, m2) -> float:
    """Projective (scale- and phase-blind) distance between two matrices."""
    a = np.asarray(m1, dtype=complex).reshape(-1)
    b = np.asarray(m2, dtype=complex).reshape(-1)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    c = np.vdot(b, a)
    if c != 0:
        b = b * (c / abs(c))
    return float(np.linalg.norm(a - b))


def check_distinct(C1: Conic, C2: Conic) -> None:
    if matrix_distance(C1.matrix, C2.matrix) <= IDENTICAL_TOL:
        raise IdenticalConics("the two conics coincide; the intersection is not finite")


def require_nondegenerate(*conics: Conic) -> None:
    for i, C in enumerate(conics, 1):
        if C.is_degenerate():
            raise DegenerateConic(f"conic {i} is degenerate (|det| ~ 0)")


# Cutting lines are given as (anchor, direction): points anchor + t * direction.
# The first entries reproduce the lines x = 0 and y = 0.
_ORIGIN = np.array([0, 0, 1], dtype=complex)
_PAIR_LINES = [(0, 1), (1, 1), (1, 2), (1, -1), (2, -1), (1, 3)]
_THIRD_LINES = [(1, 0), (1, -1), (1, -2), (2, 1), (3, 1), (1, 3)]


def _cut(m: np.ndarray, norm: float, direction) -> tuple[np.ndarray, np.ndarray] | None:
    q = np.array([direction[0], direction[1], 0], dtype=complex)
    lead = complex(q @ m @ q)
    if abs(lead) < DEGENERACY_TOL * norm * float(np.vdot(q, q).real):
        return None
    mid = complex(2 * (_ORIGIN @ m @ q))
    const = complex(m[2, 2])
    t_plus, t_minus = kernels.quadratic_roots(lead, mid, const)
    return _ORIGIN + t_plus * q, _ORIGIN + t_minus * q


def _pick_pair(m, norm, start):
    best = None
    lines = _PAIR_LINES[start:] + _PAIR_LINES[:start]
    for direction in lines:
        cut = _cut(m, norm, direction)
        if cut is None:
            continue
        sep = projective_distance(*cut)
        if sep >= SEPARATION:
            return cut
        if best is None or sep > best[0]:
            best = (sep, cut)
    if best is None or best[0] < MIN_SEPARATION:
        raise DegenerateConic("could not find two distinct points on the conic")
    return best[1]


def _pick_third(m, norm, taken, start):
    best = None
    lines = _THIRD_LINES[start:] + _THIRD_LINES[:start]
    for direction in lines:
        cut = _cut(m, norm, direction)
        if cut is None:
            continue
        for cand in cut:
            sep = min(projective_distance(cand, t) for t in taken)
            if sep >= SEPARATION:
                return cand
            if best is None or sep > best[0]:
                best = (sep, cand)
    if best is None or best[0] < MIN_SEPARATION:
        raise DegenerateConic("could not find a third distinct point on the conic")
    return best[1]


def points_on_conic(C: Conic, start: int = 0):
    """Three distinct points on a nondegenerate conic.

    ``p1`` and ``p2`` are the two intersections with ``x = 0`` and ``p3`` the
    ``+`` root on ``y = 0``. When a cutting line is nearly asymptotic or
    tangent, the next line from a fixed list through the origin is used.
    ``start`` rotates those lists so callers can ask for a different triple.
    """
    if C.is_degenerate():
        raise DegenerateConic("points_on_conic requires a nondegenerate conic")
    m = C.matrix
    norm = C.norm
    p1, p2 = _pick_pair(m, norm, start)
    p3 = _pick_third(m, norm, (p1, p2), start)
    return (
        HomogeneousTriple._wrap(p1),
        HomogeneousTriple._wrap(p2),
        HomogeneousTriple._wrap(p3),
    )


class AffinePoint(NamedTuple):
    """Result of :func:`normalize_affine`.

    ``coords`` holds ``(x, y)`` for a finite point, or the full direction
    triple scaled so its largest coordinate is 1 when ``at_infinity``.
    """

    at_infinity: bool
    coords: tuple[complex, ...]


def normalize_affine(x, tol: float = DEFAULT_TOL) -> AffinePoint:
    v = as_array(x)
    n = np.linalg.norm(v)
    if abs(v[2]) > tol * n:
        return AffinePoint(False, (complex(v[0] / v[2]), complex(v[1] / v[2])))
    k = int(np.argmax(np.abs(v)))
    d = v / v[k]
    return AffinePoint(True, tuple(complex(t) for t in d))
