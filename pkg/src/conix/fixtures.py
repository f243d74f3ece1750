"""Named example pairs with the values printed alongside them (4-5 digits).

``touching`` is an ellipse and a hyperbola tangent at ``(sqrt 2, -sqrt 2)``.
Its first matrix is printed asymmetric (72 above the diagonal, 672 below);
only 72 puts the tangency point on the conic, so ``TOUCHING_C1`` uses it and
``TOUCHING_C1_PRINTED`` keeps the raw entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .projective import Conic, conic_from_matrix

SQRT2 = np.sqrt(2.0)

FOUR_POINT_C1 = np.array([[65, 4, -538], [4, 80, -392], [-538, -392, 4772]], dtype=float)
FOUR_POINT_C2 = np.array([[11, 9, -93], [9, 11, -87], [-93, -87, 779]], dtype=float)
FOUR_POINT_AFFINE = (
    (9.2839, 0.5803),
    (3.8515, 6.2106),
    (6.2804, 0.8705),
    (3.7641, 3.4209),
)
# canonical-frame quantities for the four-point pair
FOUR_POINT_FRAME = {
    "p0": (5.5, 4.625, 1),
    "p1": (0, 4.9 + 5.9699j, 1),
    "p2": (0, 4.9 - 5.9699j, 1),
    "p3": (8.2769 + 2.2154j, 0, 1),
}
FOUR_POINT_WEIGHTS = (1.5049 + 0.4028j, -0.24317 + 0.17433j, -0.26172 - 0.57713j)
FOUR_POINT_QUARTIC = (
    -0.3930 + 0.0573j,
    0.3423 - 0.9245j,
    1.4338 + 0.8268j,
    -1.3315 + 1.6084j,
    -0.6607 - 1.6544j,
)
FOUR_POINT_QUARTIC_ROOTS = (
    1.4431 + 0.1883j,
    -1.4305 - 0.2675j,
    1.3020 - 0.6502j,
    -0.1259 - 1.4499j,
)
# self-polar quantities for the four-point pair
FOUR_POINT_PENCIL = np.array(
    [[-4.0625, -0.2500, 12.4946], [0.3614, -3.3370, 1.5598], [-0.3696, -0.3478, 1.0]]
)
FOUR_POINT_VERTICES = (
    (-0.9263, -0.2811, -0.2509),
    (0.8987, 0.4075, 0.1624),
    (-0.7222, 0.6917, -0.0056),
)
FOUR_POINT_SELF_POLAR_WEIGHTS = (-7.4823, -5.3493, 1.5559)
FOUR_POINT_SELF_POLAR_H = np.array(
    [[6.9308, -4.8072, -1.1236], [2.1036, -2.1798, 1.0762], [1.8772, -0.8685, -0.0087]]
)
# first root of the quartic lifted onto the parabola, in canonical-frame coordinates
FOUR_POINT_CANONICAL_SA = (1.4431 + 0.1883j, 2.0471 + 0.5433j, 1)
FOUR_POINT_DIAGONALS = ((3.3138, -0.4110, 0.1622), (0.4776, -0.0233, 0.0047))
FOUR_POINT_ABS_X_PRIME = 0.1241
FOUR_POINT_ABS_Y_PRIME = 0.7203

TOUCHING_C1_PRINTED = np.array([[-8, 72, 0], [672, -8, 0], [0, 0, 320]], dtype=float)
TOUCHING_C1 = np.array([[-8, 72, 0], [72, -8, 0], [0, 0, 320]], dtype=float)
TOUCHING_C2 = np.array(
    [[68, -32, -25 * SQRT2], [-32, 68, 25 * SQRT2], [-25 * SQRT2, 25 * SQRT2, -200]]
)
TOUCHING_POINT = (1.4142, -1.4142)
TOUCHING_COMPLEX_PAIR = (
    (-0.92655 - 1.1945j, 0.92655 - 1.1945j),
    (-0.92655 + 1.1945j, 0.92655 + 1.1945j),
)
TOUCHING_QUADRATIC = (7680.0, -7680.0, 2967.2)
TOUCHING_X_PRIME = (0.5 + 0.3693j, 0.5 - 0.3693j)
TOUCHING_FRAME = {"p2": (0, 6.3246, 1), "p3": (-6.3246, 0, 1)}


@dataclass(frozen=True)
class Fixture:
    name: str
    c1: Conic
    c2: Conic
    expected_affine: tuple = ()
    notes: dict = field(default_factory=dict, compare=False)


def four_point() -> Fixture:
    return Fixture(
        "paper-4.1",
        Conic(FOUR_POINT_C1),
        Conic(FOUR_POINT_C2),
        FOUR_POINT_AFFINE,
    )


def touching() -> Fixture:
    return Fixture(
        "paper-4.2",
        Conic(TOUCHING_C1),
        Conic(TOUCHING_C2),
        (TOUCHING_POINT, TOUCHING_POINT) + TOUCHING_COMPLEX_PAIR,
        {"printed_c1": TOUCHING_C1_PRINTED},
    )


def touching_printed() -> Conic:
    """The first touching conic exactly as printed, symmetrized with a warning."""
    return conic_from_matrix(TOUCHING_C1_PRINTED)


FIXTURES = {"paper-4.1": four_point, "paper-4.2": touching}


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
