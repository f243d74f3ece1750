import numpy as np
import pytest

from conix import (
    Conic,
    DegenerateConic,
    IdenticalConics,
    TangentPointNotOnConics,
    common_self_polar_triangle,
    conic_from_coefficients,
    fixtures,
    intersect_canonical,
    intersect_self_polar,
    intersect_tangent_case,
    match_point_sets,
    random_conic_pair,
)
from conix.frames import homography_from_frame, transform_conic
from conix.projective import normalize_affine, projective_distance, residual
from conix.selfpolar import offdiagonal_mass

from conftest import UNIT_CIRCLE, affine_points, max_coord_error

SQRT2 = np.sqrt(2)
PARABOLA = conic_from_coefficients(1, 0, 0, 0, -1, 0)  # y = x^2
CIRCLE_ABOVE = conic_from_coefficients(1, 0, 1, 0, -2, 0)  # x^2 + (y - 1)^2 = 1


def polarity_gap(C1, C2, v):
    return projective_distance(C1.matrix @ np.asarray(v), C2.matrix @ np.asarray(v))


class TestCommonSelfPolarTriangle:
    def test_four_point_vertices(self, four_point_pair):
        frame = common_self_polar_triangle(*four_point_pair)
        assert frame.tangency is None and not frame.double_contact
        for expected in fixtures.FOUR_POINT_VERTICES:
            assert min(projective_distance(v, expected) for v in frame.vertices) < 1e-3

    def test_four_point_common_polarity(self, four_point_pair):
        frame = common_self_polar_triangle(*four_point_pair)
        for v in frame.vertices:
            assert polarity_gap(*four_point_pair, v) <= 1e-8

    def test_touching_pair_flags_tangency(self, touching_pair):
        frame = common_self_polar_triangle(*touching_pair)
        assert frame.tangency is not None
        assert projective_distance(frame.tangency, (SQRT2, -SQRT2, 1)) < 1e-10

    def test_concentric_circles(self):
        C1, C2 = Conic(np.diag([1.0, 1, -1])), Conic(np.diag([1.0, 1, -4]))
        frame = common_self_polar_triangle(C1, C2)
        assert frame.tangency is None
        for v in frame.vertices:
            assert polarity_gap(C1, C2, v) <= 1e-8
        H = homography_from_frame(*frame.vertices, frame.unit_point)
        for C in (C1, C2):
            assert offdiagonal_mass(transform_conic(H, C)) <= 1e-8

    @pytest.mark.parametrize("theta", [0.0, 0.3, 1.1, 2.5])
    def test_conjugate_diameters_in_a_double_eigenspace_diagonalize(self, theta):
        # any pair of conjugate diameters plus the centre is a common triangle
        C1, C2 = Conic(np.diag([1.0, 1, -1])), Conic(np.diag([1.0, 1, -4]))
        u = (np.cos(theta), np.sin(theta), 0)
        v = (-np.sin(theta), np.cos(theta), 0)
        H = homography_from_frame(u, v, (0, 0, 1), (1.3, 0.4, 1.7))
        for C in (C1, C2):
            assert offdiagonal_mass(transform_conic(H, C)) <= 1e-12

    def test_non_conjugate_eigenvectors_do_not_diagonalize(self):
        # both vectors are eigenvectors, but not every eigenspace choice is a frame
        C1 = Conic(np.diag([1.0, 1, -1]))
        H = homography_from_frame((1, 0, 0), (1, 1, 0), (0, 0, 1), (1.3, 0.4, 1.7))
        assert offdiagonal_mass(transform_conic(H, C1)) > 0.1

    def test_common_polarity_on_random_pairs(self):
        for seed in range(200):
            pair = random_conic_pair(seed, "four-real")
            frame = common_self_polar_triangle(pair.c1, pair.c2)
            assert frame.tangency is None
            for v in frame.vertices:
                assert polarity_gap(pair.c1, pair.c2, v) <= 1e-8

    def test_identical_conics(self):
        with pytest.raises(IdenticalConics):
            common_self_polar_triangle(Conic(UNIT_CIRCLE), Conic(2 * UNIT_CIRCLE))

    def test_degenerate_conic(self):
        with pytest.raises(DegenerateConic):
            common_self_polar_triangle(conic_from_coefficients(1, 0, -1, 0, 0, 0), Conic(UNIT_CIRCLE))


class TestIntersectSelfPolar:
    def test_four_point_pair(self, four_point_pair):
        s = intersect_self_polar(*four_point_pair)
        assert s.method == "self-polar"
        assert max_coord_error(affine_points(s), fixtures.FOUR_POINT_AFFINE) < 1e-3
        d = s.diagnostics
        assert d["offdiagonal_mass"] <= 1e-8
        assert abs(abs(d["x_prime"]) - fixtures.FOUR_POINT_ABS_X_PRIME) < 1e-3
        assert abs(abs(d["y_prime"]) - fixtures.FOUR_POINT_ABS_Y_PRIME) < 1e-3

    def test_four_point_diagonal_forms(self, four_point_pair):
        C1p, C2p = intersect_self_polar(*four_point_pair).diagnostics["transformed"]
        for C, printed in zip((C1p, C2p), fixtures.FOUR_POINT_DIAGONALS):
            got = np.diag(C.matrix)
            got = got / got[0] * printed[0]
            assert np.allclose(got, printed, atol=2e-3)

    def test_ellipse_touching_circle_twice(self):
        # x^2/4 + y^2 = 1 against the unit circle: substituting y = +-1 solves both
        s = intersect_self_polar(Conic(UNIT_CIRCLE), Conic(np.diag([0.25, 1, -1])))
        assert s.diagnostics["double_contact"]
        assert max_coord_error(affine_points(s), [(0, 1), (0, 1), (0, -1), (0, -1)]) < 1e-12
        assert sorted(s.multiplicities()) == [2, 2, 2, 2]

    def test_concentric_circles_meet_twice_at_each_circular_point(self):
        s = intersect_self_polar(Conic(np.diag([1.0, 1, -1])), Conic(np.diag([1.0, 1, -4])))
        assert all(normalize_affine(p).at_infinity for p in s)
        assert match_point_sets(s, [(1, 1j, 0), (1, 1j, 0), (1, -1j, 0), (1, -1j, 0)], 1e-12).matched

    def test_touching_pair_dispatches_to_tangent_path(self, touching_pair):
        s = intersect_self_polar(*touching_pair)
        assert s.method == "self-polar-tangent"
        assert "self_polar_frame" in s.diagnostics

    def test_residuals_and_agreement_on_random_pairs(self):
        for configuration in ("four-real", "two-real-two-complex"):
            for seed in range(100):
                pair = random_conic_pair(seed, configuration)
                s = intersect_self_polar(pair.c1, pair.c2)
                assert s.diagnostics["offdiagonal_mass"] <= 1e-8
                assert s.max_residual(pair.c1, pair.c2) <= 1e-8
                c = intersect_canonical(pair.c1, pair.c2)
                assert match_point_sets(s, c, 1e-7).matched

    def test_double_tangent_pairs(self):
        for seed in range(50):
            pair = random_conic_pair(seed, "double-tangent")
            s = intersect_self_polar(pair.c1, pair.c2)
            assert s.max_residual(pair.c1, pair.c2) <= 1e-8
            assert match_point_sets(s, pair.truth, 1e-7).matched


class TestIntersectTangentCase:
    def test_touching_pair(self, touching_pair):
        s = intersect_tangent_case(*touching_pair, (SQRT2, -SQRT2, 1))
        assert s.method == "self-polar-tangent"
        expected = [fixtures.TOUCHING_POINT] * 2 + list(fixtures.TOUCHING_COMPLEX_PAIR)
        assert max_coord_error(affine_points(s), expected) < 1e-3
        assert s.diagnostics["tangent_multiplicity"] == 2
        assert sorted(s.multiplicities()) == [1, 1, 2, 2]

    def test_touching_quadratic_and_roots(self, touching_pair):
        d = intersect_tangent_case(*touching_pair, (SQRT2, -SQRT2, 1)).diagnostics
        q = np.array(d["quadratic"])
        printed = np.array(fixtures.TOUCHING_QUADRATIC)
        assert np.allclose(q / q[0], printed / printed[0], rtol=1e-1)
        assert max_coord_error([(x,) for x in d["x_prime"]], [(x,) for x in fixtures.TOUCHING_X_PRIME]) < 1e-3

    def test_touching_frame(self, touching_pair):
        p0, p1, p2, p3 = intersect_tangent_case(*touching_pair, (SQRT2, -SQRT2, 1)).diagnostics["frame"]
        assert np.allclose(normalize_affine(p0).coords, (-1.1441, -3.9725), atol=1e-3)
        assert np.allclose(normalize_affine(p1).coords, fixtures.TOUCHING_POINT, atol=1e-3)
        assert np.allclose(normalize_affine(p2).coords, fixtures.TOUCHING_FRAME["p2"][:2], atol=1e-3)
        assert np.allclose(normalize_affine(p3).coords, fixtures.TOUCHING_FRAME["p3"][:2], atol=1e-3)

    def test_tangent_residuals(self, touching_pair):
        s = intersect_tangent_case(*touching_pair, (SQRT2, -SQRT2, 1))
        t = s.diagnostics["tangent_point"]
        assert max(residual(C, t) for C in touching_pair) <= 1e-8

    def test_parabola_and_circle(self):
        # y = x^2 into x^2 + (y - 1)^2 = 1 gives x^2 (x^2 - 1) = 0
        s = intersect_tangent_case(PARABOLA, CIRCLE_ABOVE, (0, 0, 1))
        assert max_coord_error(affine_points(s), [(0, 0), (0, 0), (1, 1), (-1, 1)]) < 1e-12

    def test_parabola_and_circle_detected(self):
        s = intersect_self_polar(PARABOLA, CIRCLE_ABOVE)
        assert s.method == "self-polar-tangent"
        assert max_coord_error(affine_points(s), [(0, 0), (0, 0), (1, 1), (-1, 1)]) < 1e-12

    def test_point_not_on_second_conic(self):
        with pytest.raises(TangentPointNotOnConics):
            intersect_tangent_case(Conic(UNIT_CIRCLE), CIRCLE_ABOVE, (1, 0, 1))

    def test_osculating_contact_keeps_residuals(self):
        # x^2 - xy - y = 0 meets y = x^2 in x^3 = 0 plus the point (0, 1, 0)
        C2 = conic_from_coefficients(1, -1, 0, 0, -1, 0)
        s = intersect_self_polar(PARABOLA, C2)
        assert len(s.points) == 4
        assert s.max_residual(PARABOLA, C2) <= 1e-8
        assert match_point_sets(s, [(0, 0, 1)] * 3 + [(0, 1, 0)], 1e-6).matched

    def test_planted_tangencies(self):
        for seed in range(100):
            pair = random_conic_pair(seed, "tangent")
            s = intersect_self_polar(pair.c1, pair.c2)
            assert s.method == "self-polar-tangent"
            assert projective_distance(s.diagnostics["tangent_point"], pair.truth[0]) <= 1e-7
            assert len(s.points) == 4
            assert match_point_sets(s, pair.truth, 1e-7).matched
