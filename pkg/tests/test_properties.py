from fractions import Fraction

import pytest

from setdepth import (
    AffineMap,
    Interval,
    VPolytope,
    affine_image,
    depth,
    dirac,
    make_discrete,
    singleton,
)
from setdepth.distribution import map_distribution
from setdepth.properties import (
    ConvergenceTable,
    PropertyReport,
    Scenario,
    SuiteConfig,
    build_scenarios,
    classify,
    consistency_experiment,
    interval_scenario,
    mutant_constant,
    mutant_distance_bump,
    mutant_positive_side_only,
    mutant_size_reward,
    mutant_step_discontinuous,
    counterexample_scenario,
    reevaluate_counterexample,
    run_p1,
    run_p2,
    run_p3a,
    run_p3b,
    run_p4,
    run_p5,
    run_p6,
    run_p7,
    run_suite,
    symmetric_pair_scenario,
    tukey_sampled_under_test,
    tukey_under_test,
    _exit_threshold,
    _expectation_body,
    _is_zero_body,
)

TUKEY = tukey_under_test()
SMALL_SUITE = SuiteConfig(trials=40, p2_probes=60, p7_trials=150)


def square_at(cx, cy=0.0):
    return VPolytope([(cx, cy), (cx + 1, cy), (cx + 1, cy + 1), (cx, cy + 1)])


class TestP1:
    def test_tukey_passes_1d_and_2d(self):
        scenarios = build_scenarios(("counterexample", "intervals-1d", "polygons-2d"), seed=0, per_family=3)
        rep = run_p1(TUKEY, scenarios, trials=60, seed=1)
        assert rep.verdict == "pass"
        assert rep.trials == 60

    def test_identity_map_equal_for_any_evaluator(self):
        sc = counterexample_scenario()
        ident = AffineMap(((1.0,),), Interval(0, 0))
        for fn in (TUKEY, mutant_positive_side_only(), mutant_size_reward()):
            for body in sc.probes:
                moved = affine_image(ident, body)
                moved_dist = map_distribution(sc.dist, lambda a: affine_image(ident, a))
                assert float(fn.evaluate(body, sc.dist)) == pytest.approx(
                    float(fn.evaluate(moved, moved_dist)), abs=1e-12
                )

    def test_reflection_breaks_positive_side_mutant(self):
        mutant = mutant_positive_side_only()
        scenarios = build_scenarios(("counterexample", "intervals-1d"), seed=2, per_family=3)
        rep = run_p1(mutant, scenarios, trials=80, seed=3)
        assert rep.verdict == "fail"
        assert rep.counterexample["matrix"][0][0] < 0  # only reflections can break it
        assert reevaluate_counterexample(mutant, rep)

    def test_sampled_engine_with_image_directions(self):
        fn = tukey_sampled_under_test(m=128, seed=9)
        scenarios = build_scenarios(("polygons-2d",), seed=4, per_family=2)
        rep = run_p1(fn, scenarios, trials=30, seed=5)
        assert rep.verdict == "pass"


class TestP2:
    def test_symmetric_scenarios_pass(self):
        scenarios = build_scenarios(("symmetric-1d", "symmetric-2d"), seed=0, per_family=2)
        rep = run_p2(TUKEY, scenarios, probes_per_scenario=80, seed=1)
        assert rep.verdict == "pass"
        assert rep.trials == 4 * 80

    def test_asymmetric_only_is_not_applicable(self):
        rep = run_p2(TUKEY, [counterexample_scenario()], seed=1)
        assert rep.verdict == "not-applicable"

    def test_size_reward_mutant_fails(self):
        mutant = mutant_size_reward()
        scenarios = build_scenarios(("symmetric-1d",), seed=3, per_family=2)
        rep = run_p2(mutant, scenarios, probes_per_scenario=120, seed=4)
        assert rep.verdict == "fail"
        assert reevaluate_counterexample(mutant, rep)


class TestP3a:
    def test_tukey_passes(self):
        scenarios = build_scenarios(("counterexample", "intervals-1d", "symmetric-2d"), seed=0, per_family=2)
        rep = run_p3a(TUKEY, scenarios, trials=40, seed=1)
        assert rep.verdict == "pass"

    def test_lambda_edges(self):
        # lam = 0 compares D(K*) >= D(L); lam = 1 compares D(L) >= D(L)
        sc = counterexample_scenario()
        d_max = TUKEY.evaluate(sc.maximizer, sc.dist)
        for probe in sc.probes:
            assert d_max >= TUKEY.evaluate(probe, sc.dist)

    def test_distance_bump_mutant_fails(self):
        mutant = mutant_distance_bump()
        dist = counterexample_scenario().dist
        center = _expectation_body(dist)
        ring_probe = Interval(center.a + 2.5, center.b + 2.5)
        sc = Scenario("bump", dist, probes=(ring_probe,), maximizer=center)
        rep = run_p3a(mutant, [sc], trials=10, seed=2)
        assert rep.verdict == "fail"
        assert reevaluate_counterexample(mutant, rep)

    def test_without_maximizer_not_applicable(self):
        sc = Scenario("no-max", counterexample_scenario().dist, probes=(Interval(0, 1),))
        assert run_p3a(TUKEY, [sc], trials=5).verdict == "not-applicable"


class TestP3b:
    def test_canonical_counterexample_fails_exactly(self):
        rep = run_p3b(TUKEY, [counterexample_scenario()])
        assert rep.verdict == "fail"
        ce = rep.counterexample
        assert ce["maximizer"] == {"type": "interval", "a": 1.0, "b": 2.0}
        assert ce["between"] == {"type": "interval", "a": 3.0, "b": 5.0}
        assert ce["far"] == {"type": "interval", "a": 2.0, "b": 7.0}
        assert ce["depth_maximizer"] == [3, 4]
        assert ce["depth_between"] == [0, 1]
        assert ce["depth_far"] == [1, 4]
        d = ce["distances"]
        assert (d["maximizer_far"], d["maximizer_between"], d["between_far"]) == (5.0, 3.0, 2.0)
        assert reevaluate_counterexample(TUKEY, rep)

    def test_dirac_scenario_passes(self):
        k = Interval(0, 1)
        sc = Scenario("dirac", dirac(k), probes=(k, Interval(2, 3), Interval(4, 5)), maximizer=k)
        assert run_p3b(TUKEY, [sc]).verdict == "pass"

    def test_collinear_translates_pass(self):
        g = counterexample_scenario().dist
        translates = tuple(Interval(1 + t, 2 + t) for t in (-2, -1, 1, 2, 3))
        sc = Scenario("translates", g, probes=translates, maximizer=Interval(1, 2))
        assert run_p3b(TUKEY, [sc]).verdict == "pass"


class TestP4:
    def test_exit_threshold_for_translated_interval(self):
        # [1,2] + n*{1}: the lower tail exits the atom range first, at n=2
        g = counterexample_scenario().dist
        assert _exit_threshold(Interval(1, 2), singleton((1.0,)), g) == 2
        for n in range(2, 6):
            assert depth(Interval(1 + n, 2 + n), g).value == 0

    def test_zero_body_detection(self):
        assert _is_zero_body(singleton((0.0,)))
        assert _is_zero_body(singleton((0.0, 0.0)))
        assert not _is_zero_body(Interval(0, 1))
        assert not _is_zero_body(singleton((0.0, 0.25)))

    def test_tukey_passes_both_variants(self):
        scenarios = build_scenarios(("counterexample", "intervals-1d", "symmetric-2d"), seed=0, per_family=2)
        assert run_p4(TUKEY, scenarios, "a", trials=40, seed=1).verdict == "pass"
        assert run_p4(TUKEY, scenarios, "b", trials=40, seed=2).verdict == "pass"

    def test_2d_squares_with_segment_step(self):
        d = make_discrete([square_at(0), square_at(1), square_at(2)])
        seg = VPolytope([(0, 0), (1, 0)])
        n_star = _exit_threshold(square_at(1), seg, d)
        assert n_star is not None
        from setdepth import minkowski_sum, scale

        for n in range(n_star, n_star + 4):
            shifted = minkowski_sum(square_at(1), scale(seg, float(n)))
            assert depth(shifted, d).value == 0

    def test_constant_mutant_fails(self):
        mutant = mutant_constant()
        scenarios = [counterexample_scenario()]
        rep_a = run_p4(mutant, scenarios, "a", trials=10, seed=3)
        rep_b = run_p4(mutant, scenarios, "b", trials=10, seed=4)
        assert rep_a.verdict == "fail" and rep_b.verdict == "fail"
        assert reevaluate_counterexample(mutant, rep_a)
        assert reevaluate_counterexample(mutant, rep_b)

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            run_p4(TUKEY, [counterexample_scenario()], "c")


class TestP5:
    def test_constant_depth_trivially_passes(self):
        k = Interval(0, 1)
        sc = Scenario("dirac", dirac(k), probes=(k,))
        rep = run_p5(TUKEY, [sc], trials=4, seed=0)
        assert rep.verdict == "pass"

    def test_counterexample_scenario_passes_with_horizon(self):
        rep = run_p5(TUKEY, [counterexample_scenario()], trials=12, seed=1)
        assert rep.verdict == "pass"
        assert rep.details["max_n0"] >= 1

    def test_step_mutant_fails(self):
        mutant = mutant_step_discontinuous()
        dist = counterexample_scenario().dist
        center = _expectation_body(dist)
        sc = Scenario("step", dist, probes=(center,))
        rep = run_p5(mutant, [sc], trials=4, seed=2)
        assert rep.verdict == "fail"
        assert reevaluate_counterexample(mutant, rep)


class TestP6:
    def test_counterexample_law_consistency_at_desk_scale(self):
        sc = counterexample_scenario()
        table = consistency_experiment(sc.dist, sc.probes, (100, 1000, 10000), 0.05, seed=7)
        assert table.rows[-1].n == 10000
        assert table.rows[-1].sup_error <= 0.05
        assert table.rows[-1].dkw_bound == pytest.approx(4 * 2.718281828459045 ** -50, rel=1e-9)

    def test_trend_nonincreasing_within_noise(self):
        sc = counterexample_scenario()
        table = consistency_experiment(sc.dist, sc.probes, (100, 1000, 10000), 0.05, seed=3)
        assert table.rows[-1].sup_error <= table.rows[0].sup_error + 0.05

    def test_dirac_errors_zero(self):
        k = Interval(2, 3)
        table = consistency_experiment(dirac(k), [k, Interval(0, 1)], (10, 100), 0.1, seed=0)
        assert all(r.sup_error == 0 for r in table.rows)

    def test_epsilon_zero_rejected(self):
        with pytest.raises(ValueError):
            consistency_experiment(counterexample_scenario().dist, [Interval(0, 1)], (10,), 0.0, seed=0)

    def test_run_p6_pass_and_table_in_details(self):
        rep = run_p6(TUKEY, counterexample_scenario(), (100, 1000, 10000), 0.05, seed=7)
        assert rep.verdict == "pass"
        assert [row["n"] for row in rep.details["table"]] == [100, 1000, 10000]

    def test_table_validation(self):
        from setdepth.properties import ConvergenceRow

        with pytest.raises(ValueError):
            ConvergenceTable((ConvergenceRow(10, -0.1, 1.0, 0),), 0.05)
        with pytest.raises(ValueError):
            ConvergenceTable(
                (ConvergenceRow(100, 0.1, 1.0, 0), ConvergenceRow(10, 0.1, 1.0, 0)), 0.05
            )


class TestP7:
    def test_tukey_passes(self):
        scenarios = build_scenarios(("counterexample", "intervals-1d", "polygons-2d"), seed=0, per_family=2)
        rep = run_p7(TUKEY, scenarios, trials=150, seed=1)
        assert rep.verdict == "pass"
        assert rep.trials == 150

    def test_alpha_above_max_depth_vacuous(self):
        # every pool body has depth < 0.1 except at most one: no pairs
        g = make_discrete([Interval(0, 1), Interval(10, 11)], [0.5, 0.5])
        sc = Scenario("sparse", g, probes=(Interval(20, 21), Interval(-9, -8)))
        rep = run_p7(TUKEY, [sc], trials=30, seed=2)
        assert rep.verdict == "pass"

    def test_bump_mutant_fails(self):
        mutant = mutant_distance_bump()
        dist = counterexample_scenario().dist
        center = _expectation_body(dist)
        ring = Interval(center.a + 2.5, center.b + 2.5)
        sc = Scenario("bump7", dist, probes=(center, ring))
        rep = run_p7(mutant, [sc], trials=300, seed=3)
        assert rep.verdict == "fail"
        assert reevaluate_counterexample(mutant, rep)


class TestClassify:
    def _reports(self, **verdicts):
        base = {
            pid: PropertyReport(pid, verdicts.get(pid, "pass"), 1, 0)
            for pid in ("P1", "P2", "P3a", "P3b", "P4a", "P4b", "P5", "P6", "P7")
        }
        return base

    def test_all_pass_gives_all_labels(self):
        labels = classify(self._reports())
        assert labels == ("algebraic", "restricted algebraic", "geometric", "restricted geometric")

    def test_tukey_labels(self):
        labels = classify(self._reports(P3b="fail"))
        assert labels == ("algebraic", "restricted algebraic")
        assert "geometric" not in labels

    def test_p4_failures_clear_everything(self):
        labels = classify(self._reports(P4a="fail", P4b="fail"))
        assert labels == ()

    def test_monotone_in_passes(self):
        weaker = classify(self._reports(P3b="fail", P5="not-applicable"))
        stronger = classify(self._reports(P3b="fail"))
        assert set(weaker) <= set(stronger)

    def test_restricted_requires_extras(self):
        labels = classify(self._reports(P6="fail"))
        assert labels == ("algebraic", "geometric")


class TestSuite:
    def test_tukey_full_conclusions(self):
        result = run_suite(TUKEY, SMALL_SUITE)
        verdicts = {pid: rep.verdict for pid, rep in result.reports.items()}
        assert verdicts == {
            "P1": "pass", "P2": "pass", "P3a": "pass", "P3b": "fail",
            "P4a": "pass", "P4b": "pass", "P5": "pass", "P6": "pass", "P7": "pass",
        }
        assert result.labels == ("algebraic", "restricted algebraic")
        ce = result.reports["P3b"].counterexample
        assert ce["between"] == {"type": "interval", "a": 3.0, "b": 5.0}

    def test_constant_mutant_no_labels(self):
        result = run_suite(mutant_constant(), SuiteConfig(trials=10, p2_probes=10, p7_trials=20))
        assert result.reports["P4a"].verdict == "fail"
        assert result.reports["P4b"].verdict == "fail"
        assert result.labels == ()

    def test_suite_deterministic(self):
        cfg = SuiteConfig(trials=10, p2_probes=10, p7_trials=20, seed=5)
        assert run_suite(TUKEY, cfg) == run_suite(TUKEY, cfg)

    def test_unknown_scenario_family(self):
        with pytest.raises(ValueError):
            build_scenarios(("mystery",), seed=0)

    def test_empty_scenarios(self):
        with pytest.raises(ValueError):
            build_scenarios((), seed=0)


class TestReportValidation:
    def test_bad_property_id(self):
        with pytest.raises(ValueError):
            PropertyReport("P9", "pass", 1, 0)

    def test_bad_verdict(self):
        with pytest.raises(ValueError):
            PropertyReport("P1", "maybe", 1, 0)

    def test_reevaluate_requires_fail(self):
        with pytest.raises(ValueError):
            reevaluate_counterexample(TUKEY, PropertyReport("P1", "pass", 1, 0))


class TestP3aInvariantScale:
    def test_500_interval_pairs_and_symmetric_2d(self):
        # 500 random (dist, L) pairs against the 1-d median maximizer,
        # full lambda grid; then the symmetric two-atom 2-d family
        scenarios_1d = build_scenarios(("intervals-1d",), seed=11, per_family=10)
        rep = run_p3a(TUKEY, scenarios_1d, trials=500, seed=12)
        assert rep.verdict == "pass" and rep.trials == 500
        scenarios_2d = build_scenarios(("symmetric-2d",), seed=13, per_family=4)
        rep2 = run_p3a(TUKEY, scenarios_2d, trials=60, seed=14)
        assert rep2.verdict == "pass"


class TestScenarioGenerators:
    def test_interval_scenario_has_certified_median(self):
        sc = interval_scenario(3, "x")
        d_max = depth(sc.maximizer, sc.dist).value
        for probe in sc.probes:
            assert depth(probe, sc.dist).value <= d_max

    def test_symmetric_scenario_center_maximal(self):
        for dim in (1, 2):
            sc = symmetric_pair_scenario(5, "s", dim)
            d_center = depth(sc.symmetric_center, sc.dist).value
            assert d_center >= Fraction(1, 2)
            for probe in sc.probes:
                assert depth(probe, sc.dist).value <= d_center
