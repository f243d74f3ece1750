"""The intersection point set returned by every method."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .projective import (
    AffinePoint,
    Conic,
    HomogeneousTriple,
    normalize_affine,
    projective_distance,
    residual,
)

METHODS = ("canonical", "self-polar", "self-polar-tangent", "oracle")
# points closer than this are reported as one point with multiplicity
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class IntersectionSet:
    """Exactly four intersection points, counted with multiplicity.

    A double point is listed twice. ``diagnostics`` carries method-specific
    details (degree drop, tangency, residual maxima, ...).
    """

    points: tuple[HomogeneousTriple, ...]
    method: str
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.points) != 4:
            raise ValueError(f"an intersection set has 4 points, got {len(self.points)}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")

    def __len__(self):
        return 4

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def as_array(self) -> np.ndarray:
        return np.array([p.coords for p in self.points])

    def multiplicities(self, tol: float = CLUSTER_TOL) -> tuple[int, ...]:
        """For each entry, how many entries coincide with it (itself included)."""
        return tuple(
            sum(projective_distance(p, q) <= tol for q in self.points) for p in self.points
        )

    def distinct(self, tol: float = CLUSTER_TOL) -> list[tuple[HomogeneousTriple, int]]:
        out: list[tuple[HomogeneousTriple, int]] = []
        for p in self.points:
            for k, (q, m) in enumerate(out):
                if projective_distance(p, q) <= tol:
                    out[k] = (q, m + 1)
                    break
            else:
                out.append((p, 1))
        return out

    def affine(self) -> list[AffinePoint]:
        return [normalize_affine(p) for p in self.points]

    def residuals(self, C1: Conic, C2: Conic) -> list[float]:
        return [max(residual(C1, p), residual(C2, p)) for p in self.points]

    def max_residual(self, C1: Conic, C2: Conic) -> float:
        return max(self.residuals(C1, C2))
