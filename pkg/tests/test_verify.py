import numpy as np
import pytest

from conix import (
    Conic,
    IdenticalConics,
    common_self_polar_triangle,
    fixtures,
    intersect_self_polar,
    intersect_tangent_case,
    match_point_sets,
    oracle_intersect,
    random_conic_pair,
    residual_report,
)
from conix.projective import normalize_affine, projective_distance
from conix.verify import CONFIGURATIONS, MAX_COND

from conftest import UNIT_CIRCLE, affine_points, max_coord_error

SQRT2 = np.sqrt(2)
SQRT3_2 = np.sqrt(3) / 2
BASIS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def real_affine(points, tol=1e-9):
    return [
        p for p in points
        if not normalize_affine(p).at_infinity
        and all(abs(c.imag) <= tol for c in normalize_affine(p).coords)
    ]


class TestOracle:
    def test_four_point_pair(self, four_point_pair):
        s = oracle_intersect(*four_point_pair)
        assert s.method == "oracle"
        assert max_coord_error(affine_points(s), fixtures.FOUR_POINT_AFFINE) < 1e-3
        assert match_point_sets(s, intersect_self_polar(*four_point_pair), 1e-6).matched

    def test_circles(self, circles):
        s = oracle_intersect(*circles)
        assert s.diagnostics["degree_drop"] == 2
        assert max_coord_error(affine_points(s), [(0.5, SQRT3_2), (0.5, -SQRT3_2)]) < 1e-12
        at_inf = [p for p in s if normalize_affine(p).at_infinity]
        assert match_point_sets(at_inf, [(1, 1j, 0), (1, -1j, 0)], 1e-12).matched

    def test_touching_pair(self, touching_pair):
        s = oracle_intersect(*touching_pair)
        t = intersect_tangent_case(*touching_pair, (SQRT2, -SQRT2, 1))
        assert match_point_sets(s, t, 1e-6).matched

    def test_identical(self):
        with pytest.raises(IdenticalConics):
            oracle_intersect(Conic(UNIT_CIRCLE), Conic(UNIT_CIRCLE))


class TestResidualReport:
    def test_exact_points(self, circles):
        pts = [(0.5, SQRT3_2, 1), (0.5, -SQRT3_2, 1), (1, 1j, 0), (1, -1j, 0)]
        assert max(residual_report(*circles, pts)) <= 1e-12

    def test_perturbed_point(self, circles):
        r = residual_report(*circles, [(0.5 + 1e-3, SQRT3_2, 1)])[0]
        assert 1e-5 < r < 1e-2

    def test_printed_four_point_list(self, four_point_pair):
        pts = [(x, y, 1) for x, y in fixtures.FOUR_POINT_AFFINE]
        assert max(residual_report(*four_point_pair, pts)) <= 1e-3

    def test_normalization_is_scale_free(self, four_point_pair):
        pts = [np.array((x, y, 1.0)) for x, y in fixtures.FOUR_POINT_AFFINE]
        scaled = [Conic(7.5e3 * C.matrix) for C in four_point_pair]
        a = residual_report(*four_point_pair, pts)
        b = residual_report(*scaled, [3j * p for p in pts])
        assert np.allclose(a, b, rtol=1e-10)


class TestMatchPointSets:
    def test_permuted_copy(self):
        m = match_point_sets(BASIS, BASIS[::-1], 1e-12)
        assert m.matched and m.max_distance == 0
        assert m.pairing == (3, 2, 1, 0)

    def test_small_difference(self):
        moved = BASIS[:3] + [(1 + 1e-5, 1, 1)]
        assert match_point_sets(BASIS, moved, 1e-4).matched

    def test_outlier_exposed(self):
        square = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
        moved = [square[2], square[0], (1.5, 1.5, 1), square[1]]
        m = match_point_sets(square, moved, 1e-4)
        assert not m.matched
        assert m.pairing == (1, 3, 0, 2)
        assert int(np.argmax(m.distances)) == 3
        assert sorted(m.distances)[:3] == [0, 0, 0]

    def test_multiplicity_respected(self):
        a = [(0, 0, 1), (0, 0, 1), (1, 0, 1), (2, 0, 1)]
        b = [(0, 0, 1), (1, 0, 1), (1, 0, 1), (2, 0, 1)]
        assert not match_point_sets(a, b, 1e-3).matched

    def test_scale_and_phase_blind(self):
        a = [np.array(p, dtype=complex) for p in BASIS]
        b = [np.exp(0.7j) * (k + 2) * p for k, p in enumerate(a)]
        assert match_point_sets(a, b, 1e-14).matched

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            match_point_sets(BASIS, BASIS[:3], 1e-3)


class TestRandomConicPair:
    @pytest.mark.parametrize("configuration", CONFIGURATIONS)
    def test_deterministic(self, configuration):
        a = random_conic_pair(17, configuration)
        b = random_conic_pair(17, configuration)
        np.testing.assert_array_equal(a.c1.matrix, b.c1.matrix)
        np.testing.assert_array_equal(a.c2.matrix, b.c2.matrix)
        assert a.configuration == configuration and a.seed == 17

    def test_different_seeds_differ(self):
        a, b = random_conic_pair(1), random_conic_pair(2)
        assert not np.allclose(a.c1.matrix, b.c1.matrix)

    def test_unpacks_to_conics(self):
        C1, C2 = random_conic_pair(3)
        assert isinstance(C1, Conic) and isinstance(C2, Conic)

    def test_unknown_configuration(self):
        with pytest.raises(ValueError):
            random_conic_pair(0, "three-real")

    @pytest.mark.parametrize("configuration", CONFIGURATIONS)
    def test_planted_points_lie_on_both_conics(self, configuration):
        for seed in range(50):
            pair = random_conic_pair(seed, configuration)
            assert len(pair.truth) == 4
            assert max(residual_report(pair.c1, pair.c2, pair.truth)) <= 1e-10

    @pytest.mark.parametrize("configuration", ["four-real", "two-real-two-complex", "tangent", "double-tangent"])
    def test_conditioning(self, configuration):
        for seed in range(50):
            pair = random_conic_pair(seed, configuration)
            for C in pair:
                assert np.linalg.cond(C.matrix) <= MAX_COND

    def test_four_real_label(self):
        pair = random_conic_pair(1, "four-real")
        s = oracle_intersect(*pair)
        assert len(real_affine(s)) == 4

    def test_two_complex_label(self):
        for seed in range(20):
            s = oracle_intersect(*random_conic_pair(seed, "two-real-two-complex"))
            assert len(real_affine(s)) == 2

    def test_tangent_label(self):
        pair = random_conic_pair(2, "tangent")
        frame = common_self_polar_triangle(*pair)
        assert frame.tangency is not None
        assert projective_distance(frame.tangency, pair.truth[0]) <= 1e-7

    def test_four_real_never_flags_tangency(self):
        for seed in range(200):
            frame = common_self_polar_triangle(*random_conic_pair(seed, "four-real"))
            assert frame.tangency is None and not frame.double_contact

    def test_near_degenerate_first_conic(self):
        pair = random_conic_pair(4, "near-degenerate")
        m = pair.c1.matrix
        assert abs(np.linalg.det(m)) / np.linalg.norm(m) ** 3 < 1e-4

    def test_oracle_matches_planted_truth(self):
        for configuration in ("four-real", "two-real-two-complex", "near-degenerate"):
            for seed in range(100):
                pair = random_conic_pair(seed, configuration)
                assert match_point_sets(oracle_intersect(*pair), pair.truth, 1e-7).matched
