import math
from fractions import Fraction

import numpy as np
import pytest

from setdepth import (
    AffineMap,
    Ball,
    Box,
    DepthConfig,
    DimensionMismatchError,
    Interval,
    NeedsSamplingError,
    UnitDirection,
    VPolytope,
    affine_image,
    contour_membership,
    depth,
    depth_interval_exact,
    depth_poly2d_exact,
    depth_sampled,
    dirac,
    direction_set,
    halfspace_depth_1d,
    make_discrete,
    minkowski_sum,
    rank,
    scale,
    singleton,
    support,
    support_law,
    tukey_median_1d,
    two_atom_symmetric_center,
)
from setdepth.distribution import map_distribution
from oracles import (
    best_interval_depth,
    brute_depth_2d,
    min_of_infs_1d,
    random_interval,
    random_poly_scenario,
    random_polygon,
)

UP = UnitDirection((1.0,))
DOWN = UnitDirection((-1.0,))


def two_interval_gamma():
    return make_discrete([Interval(1, 2), Interval(2, 7)], [Fraction(3, 4), Fraction(1, 4)])


def square_at(cx, cy=0.0):
    return VPolytope([(cx, cy), (cx + 1, cy), (cx + 1, cy + 1), (cx, cy + 1)])


class TestHalfspaceDepth1d:
    def test_known_depth_value(self):
        law = support_law(two_interval_gamma(), UP)
        assert halfspace_depth_1d(2.0, law) == Fraction(3, 4)

    def test_median_of_five(self):
        law = support_law(make_discrete([Interval(v, v) for v in (1, 2, 3, 4, 5)]), UP)
        assert halfspace_depth_1d(3.0, law) == Fraction(3, 5)

    def test_below_all_values(self):
        law = support_law(two_interval_gamma(), UP)
        assert halfspace_depth_1d(-10.0, law) == 0


class TestExact1d:
    def test_known_depth_triple(self):
        g = two_interval_gamma()
        assert depth_interval_exact(Interval(1, 2), g).value == Fraction(3, 4)
        assert depth_interval_exact(Interval(2, 7), g).value == Fraction(1, 4)
        assert depth_interval_exact(Interval(3, 5), g).value == 0

    def test_witness_recomputes(self):
        g = two_interval_gamma()
        for k in (Interval(1, 2), Interval(2, 7), Interval(3, 5), Interval(0, 9)):
            rep = depth_interval_exact(k, g)
            law = support_law(g, rep.witness_direction)
            assert halfspace_depth_1d(support(k, rep.witness_direction), law) == rep.value

    def test_wrong_dimension(self):
        with pytest.raises(DimensionMismatchError):
            depth_interval_exact(square_at(0), two_interval_gamma())


class TestExact2d:
    def test_dirac_depth_one(self):
        k = square_at(0)
        rep = depth_poly2d_exact(k, dirac(k))
        assert rep.value == 1
        assert rep.method == "exact2d"

    def test_three_squares(self):
        d = make_discrete([square_at(0), square_at(1), square_at(2)])
        rep = depth_poly2d_exact(square_at(1), d)
        assert rep.value == Fraction(2, 3)
        assert brute_depth_2d(square_at(1), d) == pytest.approx(2 / 3, abs=1e-12)

    def test_disjoint_body_depth_zero(self):
        d = make_discrete([square_at(0), square_at(1)])
        rep = depth_poly2d_exact(square_at(40), d)
        assert rep.value == 0

    def test_ball_rejected_with_needs_sampling(self):
        d = make_discrete([square_at(0), Ball((0.0, 0.0), 1.0)])
        with pytest.raises(NeedsSamplingError):
            depth_poly2d_exact(square_at(0), d)

    def test_matches_brute_force_on_random_scenarios(self):
        for seed in range(25):
            dist, body = random_poly_scenario(seed)
            exact = depth_poly2d_exact(body, dist)
            brute = brute_depth_2d(body, dist, n_angles=20_000)
            assert float(exact.value) == pytest.approx(brute, abs=1e-12), f"seed {seed}"

    def test_witness_recomputes(self):
        dist, body = random_poly_scenario(99)
        rep = depth_poly2d_exact(body, dist)
        law = support_law(dist, rep.witness_direction)
        assert halfspace_depth_1d(support(body, rep.witness_direction), law) == rep.value


class TestDirectionSet:
    def test_p1_always_signs(self):
        for strategy in ("axes", "grid2d", "lowdisc", "random"):
            dirs = direction_set(1, strategy, 17, seed=3)
            assert {u.coords for u in dirs} == {(1.0,), (-1.0,)}

    def test_grid2d_four_angles(self):
        dirs = direction_set(2, "grid2d", 4)
        angles = [math.atan2(u.coords[1], u.coords[0]) % (2 * math.pi) for u in dirs]
        assert np.allclose(sorted(angles), [0, math.pi / 2, math.pi, 3 * math.pi / 2], atol=1e-12)

    def test_random_reproducible(self):
        a = direction_set(3, "random", 64, seed=5)
        b = direction_set(3, "random", 64, seed=5)
        assert a == b
        assert all(abs(math.sqrt(sum(c * c for c in u.coords)) - 1) <= 1e-12 for u in a)

    def test_lowdisc_deterministic(self):
        assert direction_set(3, "lowdisc", 32) == direction_set(3, "lowdisc", 32)

    def test_invalid_pairings(self):
        with pytest.raises(ValueError):
            direction_set(3, "grid2d", 8)
        with pytest.raises(ValueError):
            direction_set(2, "lowdisc", 8)
        with pytest.raises(ValueError):
            direction_set(2, "grid2d", 0)
        with pytest.raises(ValueError):
            direction_set(2, "spiral", 8)


class TestSampled:
    def test_p1_equals_exact_on_counterexample_law(self):
        g = two_interval_gamma()
        dirs = direction_set(1, "axes", 2)
        for k, expected in [
            (Interval(1, 2), Fraction(3, 4)),
            (Interval(2, 7), Fraction(1, 4)),
            (Interval(3, 5), Fraction(0)),
        ]:
            assert depth_sampled(k, g, dirs).value == expected

    def test_monotone_under_nesting(self):
        dist, body = random_poly_scenario(7)
        small = direction_set(2, "grid2d", 16)
        big = direction_set(2, "grid2d", 64)  # superset: 64 = 4*16
        assert set(small) <= set(big)
        assert depth_sampled(body, dist, big).value <= depth_sampled(body, dist, small).value

    def test_grid_hits_exact_on_three_squares(self):
        d = make_discrete([square_at(0), square_at(1), square_at(2)])
        grid = direction_set(2, "grid2d", 1024)
        sampled = depth_sampled(square_at(1), d, grid)
        assert abs(float(sampled.value) - 2 / 3) <= 1e-12
        assert sampled.method == "sampled"
        assert sampled.directions_used == 1024

    def test_upper_bound_of_exact(self):
        for seed in range(10):
            dist, body = random_poly_scenario(seed + 200)
            exact = depth_poly2d_exact(body, dist).value
            for m in (16, 64, 256):
                est = depth_sampled(body, dist, direction_set(2, "grid2d", m)).value
                assert est >= exact

    def test_empty_directions_rejected(self):
        with pytest.raises(ValueError):
            depth_sampled(Interval(0, 1), two_interval_gamma(), ())


class TestDispatch:
    def test_auto_interval_law_exact1d(self):
        rep = depth(Interval(1, 2), two_interval_gamma())
        assert (rep.value, rep.method) == (Fraction(3, 4), "exact1d")

    def test_auto_dirac_any_dim(self):
        assert depth(Interval(0, 1), dirac(Interval(0, 1))).value == 1
        assert depth(square_at(0), dirac(square_at(0))).value == 1
        box = Box((0.0,) * 3, (1.0,) * 3)
        rep = depth(box, dirac(box), DepthConfig(direction_budget=128))
        assert rep.value == 1 and rep.method == "sampled"

    def test_auto_p3_boxes_sampled_tag(self):
        d = make_discrete([Box((0, 0, 0), (1, 1, 1)), Box((1, 0, 0), (2, 2, 2))])
        rep = depth(Box((0, 0, 0), (2, 1, 1)), d, DepthConfig(direction_budget=333, seed=4))
        assert rep.method == "sampled"
        assert rep.directions_used == 333

    def test_auto_2d_with_ball_falls_back_to_sampling(self):
        d = make_discrete([square_at(0), Ball((1.0, 0.0), 1.0)])
        rep = depth(square_at(0), d, DepthConfig(direction_budget=64))
        assert rep.method == "sampled"

    def test_exact_method_p3_raises(self):
        d = make_discrete([Box((0, 0, 0), (1, 1, 1))])
        with pytest.raises(NeedsSamplingError):
            depth(Box((0, 0, 0), (1, 1, 1)), d, DepthConfig(method="exact"))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            DepthConfig(method="magic")
        with pytest.raises(ValueError):
            DepthConfig(direction_budget=0)

    def test_formulation_equivalence_200_seeds(self):
        # min-of-infs at tight thresholds == inf-of-mins, exactly, and the
        # redundant-threshold scan of the raw definition agrees too
        from oracles import definition_depth_1d

        for seed in range(200):
            rng = np.random.default_rng(seed)
            k = int(rng.integers(2, 6))
            atoms = [random_interval(rng) for _ in range(k)]
            parts = rng.integers(1, 10, size=k)
            dist = make_discrete(atoms, [Fraction(int(p), int(parts.sum())) for p in parts])
            body = random_interval(rng)
            engine = depth(body, dist).value
            assert engine == min_of_infs_1d(body, dist)
            assert engine == definition_depth_1d(body, dist)

    def test_range_in_unit_interval(self):
        for seed in range(20):
            dist, body = random_poly_scenario(seed + 300)
            v = depth(body, dist).value
            assert 0 <= v <= 1 and isinstance(v, Fraction)


class TestAffineInvariance:
    def test_exact_count_level_1d_and_2d(self):
        rng = np.random.default_rng(2024)
        done_1d = done_2d = 0
        while done_1d < 25 or done_2d < 25:
            if done_1d < 25:
                k = int(rng.integers(2, 5))
                atoms = [random_interval(rng) for _ in range(k)]
                parts = rng.integers(1, 10, size=k)
                dist = make_discrete(atoms, [Fraction(int(p), int(parts.sum())) for p in parts])
                body = random_interval(rng)
                m = float(rng.choice([-3, -2, -1, 1, 2, 3]))
                t = AffineMap(((m,),), random_interval(rng, -5, 5))
                done_1d += 1
            else:
                dist, body = random_poly_scenario(int(rng.integers(0, 10_000)))
                m_arr = rng.integers(-3, 4, size=(2, 2)).astype(float)
                if abs(np.linalg.det(m_arr)) < 0.5 or np.linalg.cond(m_arr) > 1e3:
                    continue
                t = AffineMap(tuple(tuple(r) for r in m_arr),
                              singleton(tuple(rng.integers(-5, 6, size=2).astype(float))))
                done_2d += 1
            moved_body = affine_image(t, body)
            moved_dist = map_distribution(dist, lambda a: affine_image(t, a))
            assert depth(moved_body, moved_dist).value == depth(body, dist).value


class TestMedian:
    def test_counterexample_law_median(self):
        g = two_interval_gamma()
        med = tukey_median_1d(g)
        assert med == Interval(1, 2)
        assert depth(med, g).value == Fraction(3, 4)

    def test_dirac_median_is_the_atom(self):
        assert tukey_median_1d(dirac(Interval(2, 5))) == Interval(2, 5)

    def test_three_disjoint_intervals(self):
        d = make_discrete([Interval(0, 1), Interval(2, 3), Interval(4, 5)])
        med = tukey_median_1d(d)
        assert med == Interval(2, 3)
        assert depth(med, d).value == Fraction(2, 3)

    def test_maximality_against_endpoint_grid(self):
        for seed in range(60):
            rng = np.random.default_rng(seed)
            k = int(rng.integers(2, 6))
            atoms = [random_interval(rng) for _ in range(k)]
            parts = rng.integers(1, 10, size=k)
            dist = make_discrete(atoms, [Fraction(int(p), int(parts.sum())) for p in parts])
            med_depth = depth(tukey_median_1d(dist), dist).value
            assert med_depth == best_interval_depth(dist), f"seed {seed}"

    def test_wrong_dimension(self):
        with pytest.raises(DimensionMismatchError):
            tukey_median_1d(dirac(square_at(0)))


class TestRankAndContours:
    def test_counterexample_law_ranking(self):
        g = two_interval_gamma()
        bodies = [Interval(3, 5), Interval(1, 2), Interval(2, 7)]
        ranked = rank(bodies, g)
        assert [b for b, _ in ranked] == [Interval(1, 2), Interval(2, 7), Interval(3, 5)]
        assert [r.value for _, r in ranked] == [Fraction(3, 4), Fraction(1, 4), 0]

    def test_ties_keep_input_order(self):
        g = two_interval_gamma()
        b = Interval(1, 2)
        bodies = [b, Interval(1, 2), Interval(1, 2)]
        ranked = rank(bodies, g)
        assert [id(x) for x, _ in ranked] == [id(x) for x in bodies]

    def test_three_squares_middle_first(self):
        d = make_discrete([square_at(0), square_at(1), square_at(2)])
        ranked = rank([square_at(0), square_at(1), square_at(2)], d)
        assert ranked[0][0] == square_at(1)

    def test_contour_alpha_zero_always(self):
        g = two_interval_gamma()
        for k in (Interval(1, 2), Interval(100, 101)):
            assert contour_membership(k, g, 0.0)

    def test_contour_at_one_half(self):
        g = two_interval_gamma()
        assert contour_membership(Interval(1, 2), g, 0.5)
        assert not contour_membership(Interval(2, 7), g, 0.5)

    def test_contour_alpha_one_on_dirac(self):
        d = dirac(Interval(0, 1))
        assert contour_membership(Interval(0, 1), d, 1.0)
        assert not contour_membership(Interval(0, 2), d, 1.0)

    def test_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            contour_membership(Interval(0, 1), two_interval_gamma(), 1.5)

    def test_empty_rank_rejected(self):
        with pytest.raises(ValueError):
            rank([], two_interval_gamma())


class TestVanishingAndMaximality:
    def test_translated_body_depth_zero_from_exit(self):
        # K = [1,2] shifted by n: the lower tail dies first, at n = 2
        g = two_interval_gamma()
        values = {}
        for n in range(0, 8):
            body = Interval(1 + n, 2 + n)
            values[n] = depth(body, g).value
        assert values[0] == Fraction(3, 4)
        assert values[1] == Fraction(1, 4)
        for n in range(2, 8):
            assert values[n] == 0

    def test_scaled_growth_also_vanishes(self):
        g = two_interval_gamma()
        seg = Interval(1, 1)
        for n in (10, 20, 40):
            body = minkowski_sum(Interval(1, 2), scale(seg, float(n)))
            assert depth(body, g).value == 0

    def test_symmetric_pair_center_depth_half(self):
        k1, k2 = Interval(0, 2), Interval(4, 6)
        d = make_discrete([k1, k2])
        c = two_atom_symmetric_center(k1, k2)
        assert depth(c, d).value == Fraction(1, 2)
        assert depth(two_atom_symmetric_center(k1, k1), make_discrete([k1, k1])).value == 1
