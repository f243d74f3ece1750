"""Validated polynomial solvers and 3x3 eigenpairs.

All polynomial coefficients are leading-first. Root order is unspecified
except where documented; compare results as multisets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import projective
from ..errors import NonConvergence, ZeroLeadingCoefficient
from . import kernels

TRIM_TOL = 1e-12
Q_TOL = 1e-10
# roots closer than this (relative) are tested for being one double root
PAIR_TOL = 1e-3
# cross products below this fraction of ||M - mu I||^2 mean rank <= 1
RANK_TOL = 1e-10


@dataclass(frozen=True)
class QuarticRoots:
    """Roots of a polynomial of degree at most four.

    ``degree_drop`` counts the leading coefficients that were numerically zero
    and trimmed away; ``branch`` is the resolvent branch used by the quartic
    formula (-1 for the biquadratic path, ``None`` below degree four).
    """

    roots: tuple[complex, ...]
    degree_drop: int
    branch: int | None = None


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: "projective.HomogeneousTriple"


def trim_leading(coeffs, rel: float = TRIM_TOL) -> tuple[list[complex], int]:
    """Drop leading coefficients below ``rel * max|coeff|``.

    Returns the trimmed list and the number of dropped terms.
    """
    cs = [complex(c) for c in coeffs]
    big = max((abs(c) for c in cs), default=0.0)
    if big == 0.0:
        return [], len(cs) - 1
    k = 0
    while k < len(cs) - 1 and abs(cs[k]) <= rel * big:
        k += 1
    return cs[k:], k


def _eval2(cs, z):
    p = dp = ddp = 0j
    for c in cs:
        ddp = ddp * z + 2 * dp
        dp = dp * z + p
        p = p * z + c
    return p, dp, ddp


def merge_double_roots(cs, roots) -> list[complex]:
    """Replace a roundoff-split pair of roots by the double root between them.

    A double root of ``p`` is a simple root of ``p'``, so Newton on ``p'``
    from the pair's midpoint converges quickly. The merge is kept only when
    the result has a residual no larger than either original root.
    """
    roots = [complex(r) for r in roots]
    scale = max([1.0] + [abs(r) for r in roots])
    close = sorted(
        (abs(roots[i] - roots[j]), i, j)
        for i in range(len(roots))
        for j in range(i + 1, len(roots))
        if abs(roots[i] - roots[j]) <= PAIR_TOL * scale
    )
    used: set[int] = set()
    for _, i, j in close:
        if i in used or j in used:
            continue
        m = 0.5 * (roots[i] + roots[j])
        for _ in range(3):
            _, dp, ddp = _eval2(cs, m)
            if ddp == 0:
                break
            m -= dp / ddp
        before = min(abs(_eval2(cs, roots[i])[0]), abs(_eval2(cs, roots[j])[0]))
        if abs(_eval2(cs, m)[0]) <= before:
            roots[i] = roots[j] = m
            used.update((i, j))
    return roots


def solve_quadratic(a2, a1, a0) -> tuple[complex, complex]:
    """Both roots of ``a2 x^2 + a1 x + a0``.

    The first root is the ``+`` branch of the textbook formula with the
    principal square root; both are computed without cancellation.
    """
    if a2 == 0:
        raise ZeroLeadingCoefficient("quadratic has zero leading coefficient")
    return kernels.quadratic_roots(complex(a2), complex(a1), complex(a0))


def solve_cubic(a3, a2, a1, a0) -> tuple[complex, complex, complex]:
    if a3 == 0:
        raise ZeroLeadingCoefficient("cubic has zero leading coefficient")
    return kernels.cubic_roots(complex(a3), complex(a2), complex(a1), complex(a0))


def solve_quartic_closed_form(a, b, c, d, e) -> tuple[complex, complex, complex, complex]:
    """Four roots of ``a x^4 + b x^3 + c x^2 + d x + e`` by radicals.

    When the auxiliary square root ``Q`` vanishes for the principal resolvent
    branch, the cube root is rotated by ``exp(2 pi i / 3)`` up to twice.
    Quartics with ``b = d = 0`` are solved directly as quadratics in ``x^2``.
    Roots are Newton-polished, and nearly coincident pairs are tested for
    being one double root (see :func:`merge_double_roots`).
    """
    if a == 0:
        raise ZeroLeadingCoefficient("quartic has zero leading coefficient")
    cs = [complex(v) for v in (a, b, c, d, e)]
    roots, _ = kernels.quartic_roots(*cs, Q_TOL)
    return tuple(merge_double_roots(cs, roots))


def solve_closed_form(coeffs) -> QuarticRoots:
    """Closed-form roots of a polynomial of degree <= 4 with degree-drop trimming."""
    cs, drop = trim_leading(coeffs)
    deg = len(cs) - 1
    if deg > 4:
        raise ValueError("closed forms only cover degree <= 4")
    if deg < 1:
        raise ZeroLeadingCoefficient("polynomial is numerically constant")
    branch = None
    if deg == 4:
        roots, branch = kernels.quartic_roots(*cs, Q_TOL)
        roots = merge_double_roots(cs, roots)
    elif deg == 3:
        roots = merge_double_roots(cs, kernels.cubic_roots(*cs))
    elif deg == 2:
        roots = kernels.quadratic_roots(*cs)
    else:
        roots = (-cs[1] / cs[0],)
    return QuarticRoots(tuple(complex(r) for r in roots), drop, branch)


def roots_iterative(coeffs, tol: float = 1e-13, max_iter: int = 500) -> list[complex]:
    """All roots by simultaneous (Weierstrass / Durand-Kerner) iteration.

    Shares no code with the closed forms. Leading coefficients that are
    numerically zero are trimmed first. Raises :class:`NonConvergence`
    carrying the best iterate if ``max_iter`` is exhausted.
    """
    cs, _ = trim_leading(coeffs)
    if len(cs) < 2:
        raise ZeroLeadingCoefficient("polynomial has no root-bearing term")
    roots, iters, converged, corr = kernels.durand_kerner(cs, tol, max_iter)
    roots = [complex(r) for r in roots]
    if not converged:
        raise NonConvergence(
            f"no convergence after {iters} iterations (last correction {corr:.3g})",
            roots=roots,
            correction=corr,
        )
    return roots


def char_poly3(M: np.ndarray) -> tuple[complex, complex, complex, complex]:
    """Coefficients of ``det(mu I - M)`` from trace, second invariant, determinant."""
    tr = M[0, 0] + M[1, 1] + M[2, 2]
    m2 = (
        M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        + M[0, 0] * M[2, 2] - M[0, 2] * M[2, 0]
        + M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1]
    )
    det = projective.det3(M)
    return 1.0 + 0j, complex(-tr), complex(m2), complex(-det)


def null_vector(A: np.ndarray) -> tuple[np.ndarray, float]:
    """Largest cross product of row pairs and its size relative to ``||A||^2``."""
    r0, r1, r2 = A
    cands = (projective.cross3(r0, r1), projective.cross3(r1, r2), projective.cross3(r2, r0))
    norms = [float(np.linalg.norm(c)) for c in cands]
    k = int(np.argmax(norms))
    scale = float(np.linalg.norm(A)) ** 2
    return cands[k], (norms[k] / scale if scale > 0 else 0.0)


def _null_basis(A: np.ndarray) -> list[np.ndarray]:
    # rank <= 1: vectors orthogonal (bilinear) to the dominant row
    rows = np.abs(A).sum(axis=1)
    r = A[int(np.argmax(rows))]
    if not np.any(np.abs(r) > 0):
        return [np.eye(3, dtype=complex)[i] for i in range(3)]
    i = int(np.argmax(np.abs(r)))
    others = [j for j in range(3) if j != i]
    eye = np.eye(3, dtype=complex)
    return [projective.cross3(r, eye[j]) for j in others]


def eigen3(M) -> tuple[EigenPair, EigenPair, EigenPair]:
    """Eigenpairs of a complex 3x3 matrix.

    Eigenvalues come from the characteristic cubic and are ordered by
    decreasing real part, then decreasing imaginary part. Each eigenvector is
    the largest cross product of two rows of ``M - mu I``. Where that matrix
    has rank <= 1 (a repeated eigenvalue with a plane of eigenvectors), the
    repeated eigenvalues receive distinct vectors from that plane. Nearly
    repeated eigenvalues of a defective matrix may return nearly equal
    vectors; callers decide what that means.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (3, 3) or not np.all(np.isfinite(M)):
        raise ValueError("eigen3 needs a finite 3x3 matrix")
    mus = sorted(solve_cubic(*char_poly3(M)), key=lambda z: (-z.real, -z.imag))
    scale = float(np.linalg.norm(M))
    eye = np.eye(3, dtype=complex)
    used: list[np.ndarray] = []
    pairs = []
    for mu in mus:
        A = M - mu * eye
        v, rel = null_vector(A)
        if rel <= RANK_TOL or np.linalg.norm(A) <= 1e-14 * max(scale, 1e-300):
            basis = _null_basis(A) if np.linalg.norm(A) > 1e-14 * scale else list(eye)
            v = basis[0]
            for cand in basis:
                if all(projective.projective_distance(cand, u) > 1e-6 for u in used):
                    v = cand
                    break
        used.append(v)
        pairs.append(EigenPair(complex(mu), projective.HomogeneousTriple._wrap(v)))
    return tuple(pairs)
