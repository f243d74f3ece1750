"""Independent checks: an elimination oracle, residuals, matching, random pairs.

The oracle eliminates ``y`` between the two conic equations and solves the
resulting quartic in ``x`` with the iterative solver only. It never touches
the closed-form quartic, the eigen solver or the frame machinery, so a bug in
those cannot validate itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, OracleInconclusive
from .numerics import roots_iterative
from .projective import (
    Conic,
    HomogeneousTriple,
    as_array,
    as_conic,
    check_distinct,
    conic_from_coefficients,
    matrix_distance,
    projective_distance,
    require_nondegenerate,
    residual,
)
from .result import IntersectionSet

# rotation angles (radians) tried in turn; generic so no two intersections
# share an x coordinate and no conic passes through the y-direction at infinity
ORACLE_ANGLES = (0.5377, 1.1213, 2.2891, 0.1789, 2.7031)
ORACLE_TRIM = 1e-11
ORACLE_CHECK = 1e-6
AMBIGUITY_TOL = 1e-7

CONFIGURATIONS = (
    "four-real",
    "two-real-two-complex",
    "tangent",
    "double-tangent",
    "near-degenerate",
)
MAX_COND = 1e4
MIN_SPACING = 0.5
NEAR_DEGENERATE_EPS = 1e-6
# nearly proportional conics make every intersection ill-posed
MIN_PENCIL_SPREAD = 0.1


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _trim(coeffs: np.ndarray, rel: float) -> tuple[np.ndarray, int]:
    scale = np.max(np.abs(coeffs))
    k = 0
    while k < len(coeffs) - 1 and abs(coeffs[k]) <= rel * scale:
        k += 1
    return coeffs[k:], k


def _y_quadratic(C: Conic):
    # C(x, y) = A y^2 + B(x) y + Cx(x), polynomials in x with descending powers
    a, b, c, d, e, f = C.coefficients()
    return np.array([c]), np.array([b, e]), np.array([a, d, f])


def _resultant_in_y(C1: Conic, C2: Conic) -> np.ndarray:
    A1, B1, K1 = _y_quadratic(C1)
    A2, B2, K2 = _y_quadratic(C2)
    mul, sub = np.polymul, np.polysub
    # 4x4 Sylvester determinant of two quadratics in y, expanded
    p = sub(mul(A1, K2), mul(A2, K1))
    q = sub(mul(A1, B2), mul(A2, B1))
    r = sub(mul(B1, K2), mul(B2, K1))
    res = sub(mul(p, p), mul(q, r))
    return np.concatenate([np.zeros(5 - len(res), dtype=complex), res]).astype(complex)


def _recover_y(C1: Conic, C2: Conic, x: complex) -> complex:
    a1, b1, c1, d1, e1, f1 = C1.coefficients()
    a2, b2, c2, d2, e2, f2 = C2.coefficients()
    B1, K1 = b1 * x + e1, a1 * x * x + d1 * x + f1
    B2, K2 = b2 * x + e2, a2 * x * x + d2 * x + f2
    # eliminate y^2: (c2 B1 - c1 B2) y + (c2 K1 - c1 K2) = 0
    lin = c2 * B1 - c1 * B2
    const = c2 * K1 - c1 * K2
    scale = max(abs(c1), abs(c2)) * max(abs(B1), abs(B2), abs(K1), abs(K2), 1.0)
    if abs(lin) > AMBIGUITY_TOL * scale:
        return -const / lin
    # both y-quadratics nearly proportional: try each root of the first
    cands = []
    for coeffs in ((c1, B1, K1), (c2, B2, K2)):
        if abs(coeffs[0]) > AMBIGUITY_TOL:
            cands.extend(roots_iterative(list(coeffs)))
    if not cands:
        raise OracleInconclusive(f"no y-quadratic to solve at x = {x}")
    scored = sorted(
        cands,
        key=lambda y: abs(c1 * y * y + B1 * y + K1) + abs(c2 * y * y + B2 * y + K2),
    )
    best = scored[0]
    others = [y for y in scored[1:] if abs(y - best) > AMBIGUITY_TOL * max(1.0, abs(best))]
    if others:
        y2 = others[0]
        r2 = abs(c1 * y2 * y2 + B1 * y2 + K1) + abs(c2 * y2 * y2 + B2 * y2 + K2)
        if r2 <= ORACLE_CHECK * scale:
            raise OracleInconclusive(f"two admissible y values at x = {x}")
    return best


def _points_at_infinity(C1: Conic, C2: Conic, count: int) -> list[np.ndarray]:
    # C1 on w = 0: a x^2 + b x y + c y^2 = 0
    a, b, c = C1.coefficients()[:3]
    coeffs, drop = _trim(np.array([a, b, c], dtype=complex), ORACLE_TRIM)
    cands = [np.array([1.0, 0.0, 0.0], dtype=complex)] * drop
    cands += [np.array([t, 1.0, 0.0], dtype=complex) for t in roots_iterative(list(coeffs))]
    cands.sort(key=lambda v: residual(C2, v))
    return cands[:count]


def _refine(C1: Conic, C2: Conic, p: np.ndarray, steps: int = 3) -> np.ndarray:
    # Newton on the affine system Q1 = Q2 = 0; a step is kept only if it helps
    if abs(p[2]) == 0:
        return p
    X = p / p[2]
    m1, m2 = C1.matrix, C2.matrix

    def err(v):
        return abs(v @ m1 @ v) + abs(v @ m2 @ v)

    best = err(X)
    for _ in range(steps):
        F = np.array([X @ m1 @ X, X @ m2 @ X])
        J = 2 * np.array([(m1 @ X)[:2], (m2 @ X)[:2]])
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        if abs(det) <= 1e-12 * np.abs(J).max() ** 2:
            break
        dx = (J[1, 1] * F[0] - J[0, 1] * F[1]) / det
        dy = (J[0, 0] * F[1] - J[1, 0] * F[0]) / det
        cand = X - np.array([dx, dy, 0.0])
        e = err(cand)
        if e >= best:
            break
        X, best = cand, e
    return X


def _eliminate(C1: Conic, C2: Conic) -> tuple[list[np.ndarray], int]:
    R, drop = _trim(_resultant_in_y(C1, C2), ORACLE_TRIM)
    if len(R) == 1:
        raise OracleInconclusive("resultant vanishes identically")
    xs = roots_iterative(list(R))
    pts = [
        _refine(C1, C2, np.array([x, _recover_y(C1, C2, x), 1.0], dtype=complex)) for x in xs
    ]
    pts += _points_at_infinity(C1, C2, drop)
    return pts, drop


def oracle_intersect(C1, C2) -> IntersectionSet:
    """Intersection by resultant elimination, independent of both main methods.

    Works in a rotated copy of the plane to avoid vertical coincidences.
    Points at infinity (resultant degree drop) are recovered on ``w = 0``.
    Raises :class:`OracleInconclusive` rather than guessing.
    """
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    require_nondegenerate(C1, C2)
    check_distinct(C1, C2)
    C1n = C1.normalized()
    C2n = C2.normalized()
    failures = []
    for theta in ORACLE_ANGLES:
        R = _rotation(theta)
        r1 = Conic(R.T @ C1n.matrix @ R)
        r2 = Conic(R.T @ C2n.matrix @ R)
        try:
            local, drop = _eliminate(r1, r2)
        except (OracleInconclusive, NonConvergence) as exc:
            failures.append(f"{theta}: {exc}")
            continue
        pts = tuple(HomogeneousTriple(R @ p) for p in local)
        res = [max(residual(C1n, p), residual(C2n, p)) for p in pts]
        if max(res) > ORACLE_CHECK:
            failures.append(f"{theta}: residual {max(res):.3g}")
            continue
        diagnostics = {
            "rotation": theta,
            "degree_drop": drop,
            "residuals": res,
            "max_residual": max(res),
        }
        return IntersectionSet(pts, "oracle", diagnostics)
    raise OracleInconclusive("oracle failed for every rotation: " + "; ".join(failures))


def residual_report(C1, C2, s) -> list[float]:
    """Per-point max over both conics of ``|x^T C x| / (||C|| ||x||^2)``."""
    C1 = as_conic(C1)
    C2 = as_conic(C2)
    return [max(residual(C1, p), residual(C2, p)) for p in s]


@dataclass(frozen=True)
class MatchReport:
    matched: bool
    pairing: tuple[int, ...]
    max_distance: float
    distances: tuple[float, ...] = ()


def match_point_sets(A, B, tol: float) -> MatchReport:
    """Best pairing of two four-point multisets under projective distance.

    ``pairing[i]`` is the index in ``B`` matched to ``A[i]``; the pairing
    minimizes the largest pair distance over all permutations, with ties
    broken by the total distance so that an outlier is paired on its own.
    """
    a = [as_array(p) for p in A]
    b = [as_array(p) for p in B]
    if len(a) != len(b):
        raise ValueError(f"point sets differ in size: {len(a)} vs {len(b)}")
    D = np.array([[projective_distance(p, q) for q in b] for p in a])
    best = None
    for perm in itertools.permutations(range(len(b))):
        ds = [D[i, j] for i, j in enumerate(perm)]
        key = (max(ds), sum(ds))
        if best is None or key < best[0]:
            best = (key, perm)
    (worst, _), perm = best
    return MatchReport(
        matched=bool(worst <= tol),
        pairing=tuple(perm),
        max_distance=float(worst),
        distances=tuple(float(D[i, j]) for i, j in enumerate(perm)),
    )


@dataclass(frozen=True)
class ConicPair:
    """A generated pair with its planted intersection points (with multiplicity)."""

    c1: Conic
    c2: Conic
    truth: tuple[HomogeneousTriple, ...]
    configuration: str
    seed: int

    def __iter__(self):
        return iter((self.c1, self.c2))


def _point_row(p) -> np.ndarray:
    x, y, w = p
    return np.array([x * x, x * y, y * y, x * w, y * w, w * w])


def _tangent_row(t, v) -> np.ndarray:
    (tx, ty, tw), (vx, vy, vw) = t, v
    return np.array([
        tx * vx,
        (tx * vy + ty * vx) / 2,
        ty * vy,
        (tx * vw + tw * vx) / 2,
        (ty * vw + tw * vy) / 2,
        tw * vw,
    ])


def _fit(rows) -> Conic:
    A = np.array(rows, dtype=float)
    _, sv, vt = np.linalg.svd(A)
    if sv[-1] < 1e-9 * sv[0]:
        raise ArithmeticError("conditions are dependent")
    k = vt[-1]
    return conic_from_coefficients(*k)


def _real_point(rng) -> np.ndarray:
    return np.array([*rng.uniform(-4, 4, 2), 1.0])


def _spread(points, rng_min=MIN_SPACING) -> bool:
    pts = [np.asarray(p)[:2] for p in points]
    return all(np.linalg.norm(p - q) >= rng_min for p, q in itertools.combinations(pts, 2))


def _general_position(points) -> bool:
    pts = [np.asarray(p) for p in points]
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        if abs(np.linalg.det(np.column_stack((pts[i], pts[j], pts[k])))) < 0.5:
            return False
    return True


def _well_conditioned(*conics) -> bool:
    return all(np.linalg.cond(C.matrix) <= MAX_COND for C in conics)


def _line_through(p, q) -> np.ndarray:
    return np.cross(p, q)


def _attempt(rng, configuration: str):
    if configuration == "four-real":
        pts = [_real_point(rng) for _ in range(4)]
        if not (_spread(pts) and _general_position(pts)):
            return None
        rows = [_point_row(p) for p in pts]
        C1 = _fit(rows + [_point_row(_real_point(rng))])
        C2 = _fit(rows + [_point_row(_real_point(rng))])
        truth = pts
    elif configuration == "two-real-two-complex":
        r1, r2 = _real_point(rng), _real_point(rng)
        z = np.array(
            [complex(*rng.uniform(-4, 4, 1), rng.uniform(0.5, 3)),
             complex(*rng.uniform(-4, 4, 1), rng.uniform(-3, 3)), 1.0]
        )
        if not _spread([r1, r2]) or not _general_position([r1, r2, z.real]):
            return None
        zr = _point_row(z)
        rows = [_point_row(r1), _point_row(r2), zr.real, zr.imag]
        C1 = _fit(rows + [_point_row(_real_point(rng))])
        C2 = _fit(rows + [_point_row(_real_point(rng))])
        truth = [r1, r2, z, z.conj()]
    elif configuration == "tangent":
        t, r1, r2 = (_real_point(rng) for _ in range(3))
        theta = rng.uniform(0, np.pi)
        v = t + np.array([np.cos(theta), np.sin(theta), 0.0])
        if not (_spread([t, r1, r2]) and _general_position([t, r1, r2])):
            return None
        if not _general_position([t, v, r1]) or not _general_position([t, v, r2]):
            return None
        rows = [_point_row(t), _tangent_row(t, v), _point_row(r1), _point_row(r2)]
        C1 = _fit(rows + [_point_row(_real_point(rng))])
        C2 = _fit(rows + [_point_row(_real_point(rng))])
        truth = [t, t, r1, r2]
    elif configuration == "double-tangent":
        t1, t2 = _real_point(rng), _real_point(rng)
        if not _spread([t1, t2]):
            return None
        th1, th2 = rng.uniform(0, np.pi, 2)
        v1 = t1 + np.array([np.cos(th1), np.sin(th1), 0.0])
        v2 = t2 + np.array([np.cos(th2), np.sin(th2), 0.0])
        if not (_general_position([t1, v1, t2]) and _general_position([t2, v2, t1])):
            return None
        rows = [_point_row(t1), _tangent_row(t1, v1), _point_row(t2), _tangent_row(t2, v2)]
        C1 = _fit(rows + [_point_row(_real_point(rng))])
        C2 = _fit(rows + [_point_row(_real_point(rng))])
        truth = [t1, t1, t2, t2]
    elif configuration == "near-degenerate":
        pts = [_real_point(rng) for _ in range(4)]
        if not (_spread(pts) and _general_position(pts)):
            return None
        rows = [_point_row(p) for p in pts]
        l1 = _line_through(pts[0], pts[1])
        l2 = _line_through(pts[2], pts[3])
        pair = 0.5 * (np.outer(l1, l2) + np.outer(l2, l1))
        pair /= np.linalg.norm(pair)
        K = _fit(rows + [_point_row(_real_point(rng))]).normalized()
        C1 = Conic(pair + NEAR_DEGENERATE_EPS * K.matrix)
        C2 = _fit(rows + [_point_row(_real_point(rng))])
        if not _well_conditioned(C2):
            return None
        return C1, C2, pts
    else:
        raise ValueError(f"unknown configuration {configuration!r}; expected one of {CONFIGURATIONS}")
    if not _well_conditioned(C1, C2):
        return None
    return C1, C2, truth


def random_conic_pair(seed: int, configuration: str = "four-real", max_tries: int = 200) -> ConicPair:
    """Deterministic conic pair with planted intersections.

    Intersection points (or tangencies) are chosen first and each conic is
    fitted through them plus one free point of its own.
    """
    if configuration not in CONFIGURATIONS:
        raise ValueError(f"unknown configuration {configuration!r}; expected one of {CONFIGURATIONS}")
    rng = np.random.default_rng([seed, CONFIGURATIONS.index(configuration)])
    for _ in range(max_tries):
        try:
            out = _attempt(rng, configuration)
        except ArithmeticError:
            continue
        if out is None:
            continue
        C1, C2, truth = out
        if matrix_distance(C1.matrix, C2.matrix) < MIN_PENCIL_SPREAD:
            continue
        return ConicPair(
            C1, C2, tuple(HomogeneousTriple(p) for p in truth), configuration, seed
        )
    raise RuntimeError(f"could not generate a {configuration} pair for seed {seed}")


__all__ = [
    "CONFIGURATIONS",
    "ConicPair",
    "MatchReport",
    "match_point_sets",
    "oracle_intersect",
    "random_conic_pair",
    "residual_report",
]
