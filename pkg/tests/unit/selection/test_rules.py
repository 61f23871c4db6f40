"""Tests for counterfactual selection rules."""

import pytest

from overtune.errors import ParameterError, ValidationError
from overtune.models import ScoreTrajectory
from overtune.selection import SelectionRule, apply_rule, parse_rule, rule_sweep
from overtune.synthetic import SyntheticSpec, factorial_specs, sweep_grid
from tests.oracles import make_run


def _traj(val, test) -> ScoreTrajectory:
    return ScoreTrajectory(val=val, test=test)


class TestSelectionRule:
    """Tests for rule construction and parsing."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("naive", SelectionRule.naive()),
            ("stop:10", SelectionRule.stop_at_budget(10)),
            ("stop:0.5", SelectionRule.stop_at_budget(0.5)),
            ("percentile:0.25", SelectionRule.percentile(0.25)),
            (" Percentile : 0 ", SelectionRule.percentile(0.0)),
        ],
    )
    def test_parse_rule(self, text, expected):
        """Test parsing of rule descriptions."""
        assert parse_rule(text) == expected

    @pytest.mark.parametrize("text", ["stop", "stop:0", "stop:1.5", "percentile:2", "best", "naive:1", "stop:x"])
    def test_parse_rule_rejects_invalid(self, text):
        """Test that malformed or out-of-range rules are rejected."""
        with pytest.raises(ParameterError) as exc_info:
            parse_rule(text)

        assert exc_info.value.code == "INVALID_RULE"

    def test_labels(self):
        """Test rule labels as written to the rules table."""
        assert SelectionRule.naive().label() == "naive"
        assert SelectionRule.stop_at_budget(10).label() == "stop:10"
        assert SelectionRule.stop_at_budget(0.5).label() == "stop:0.5"
        assert SelectionRule.percentile(0.25).label() == "percentile:0.25"

    def test_effective_budget(self):
        """Test absolute and fractional budgets."""
        assert SelectionRule.stop_at_budget(0.5).effective_budget(7) == 3
        assert SelectionRule.stop_at_budget(0.01).effective_budget(7) == 1
        assert SelectionRule.stop_at_budget(7).effective_budget(7) == 7
        assert SelectionRule.naive().effective_budget(7) == 7
        with pytest.raises(ParameterError) as exc_info:
            SelectionRule.stop_at_budget(8).effective_budget(7)
        assert exc_info.value.code == "BUDGET_EXCEEDS_LENGTH"


class TestApplyRule:
    """Tests for apply_rule."""

    def test_stop_after_first_evaluation(self):
        """Test that stopping at 1 returns the first configuration."""
        outcome = apply_rule(_traj([0.3, 0.2], [0.4, 0.35]), SelectionRule.stop_at_budget(1))

        assert outcome.chosen_index == 1
        assert outcome.chosen_test == 0.4
        assert outcome.delta_vs_naive_test == pytest.approx(0.05, abs=1e-12)
        assert outcome.budget == 1

    def test_percentile_picks_second_best(self):
        """Test that percentile 1/3 over four configurations picks the second best."""
        traj = _traj([0.5, 0.4, 0.3, 0.2], [0.1, 0.2, 0.3, 0.4])

        outcome = apply_rule(traj, SelectionRule.percentile(1 / 3))

        assert outcome.chosen_index == 3
        assert outcome.chosen_val == 0.3
        assert outcome.delta_vs_naive_test == pytest.approx(-0.1, abs=1e-12)

    def test_percentile_ties_go_to_earliest(self):
        """Test that equal validation errors rank in evaluation order."""
        outcome = apply_rule(_traj([0.2, 0.2, 0.5], [0.9, 0.1, 0.5]), SelectionRule.percentile(0.0))

        assert outcome.chosen_index == 1

    def test_percentile_pick_beating_every_incumbent_has_negative_overtuning(self):
        """Test that a non-incumbent pick better on test than every incumbent gives final_ot below zero."""
        traj = _traj([0.4, 0.5, 0.2], [0.5, 0.125, 0.375])

        outcome = apply_rule(traj, SelectionRule.percentile(1.0))

        assert outcome.chosen_index == 2
        assert outcome.final_ot == -0.25
        assert outcome.final_tr == 0.0
        assert outcome.delta_vs_naive_test == -0.25

    def test_degenerate_rules_equal_naive(self, rng):
        """Test that percentile 0 and stopping at T reproduce naive selection exactly."""
        for _ in range(1000):
            T = int(rng.integers(1, 60))
            traj = _traj(rng.integers(0, 10, T) / 10, rng.random(T))
            naive = apply_rule(traj, SelectionRule.naive())

            for rule in (SelectionRule.percentile(0.0), SelectionRule.stop_at_budget(T)):
                outcome = apply_rule(traj, rule)
                assert outcome.chosen_index == naive.chosen_index
                assert outcome.delta_vs_naive_test == 0.0
                assert outcome.delta_vs_naive_ot == 0.0

    def test_budget_beyond_length_raises(self):
        """Test that stopping after T is rejected."""
        with pytest.raises(ParameterError) as exc_info:
            apply_rule(_traj([0.3, 0.2], [0.4, 0.35]), SelectionRule.stop_at_budget(3))

        assert exc_info.value.code == "BUDGET_EXCEEDS_LENGTH"


class TestRuleSweep:
    """Tests for rule_sweep."""

    def test_naive_only_has_zero_deltas(self, rng):
        """Test that naive selection never differs from itself."""
        runs = [make_run(rng.random(8), rng.random(8), seed=s) for s in range(5)]

        sweep = rule_sweep(runs, [SelectionRule.naive()])

        (summary,) = sweep.summaries
        assert summary.mean_delta_test == 0.0
        assert summary.win_fraction == 0.0
        assert summary.n == 5
        assert len(sweep.scatter) == 5
        assert all(p.delta_test == 0.0 and p.delta_ot == 0.0 for p in sweep.scatter)

    def test_short_runs_are_excluded_per_rule(self, rng):
        """Test that runs shorter than an absolute budget are excluded and counted."""
        runs = [make_run(rng.random(T), rng.random(T), seed=T) for T in (3, 10)]

        sweep = rule_sweep(runs, [SelectionRule.stop_at_budget(5), SelectionRule.naive()])

        assert (sweep.summaries[0].n, sweep.summaries[0].n_excluded) == (1, 1)
        assert (sweep.summaries[1].n, sweep.summaries[1].n_excluded) == (2, 0)

    def test_zero_noise_early_stopping_never_wins(self):
        """Test that without noise stopping early cannot beat naive selection."""
        base = SyntheticSpec(n_configs=200, trajectory_len=100, sigma_indep=0.0)
        runs = [g.to_hpo_run() for g in sweep_grid(factorial_specs(base, range(20)))]

        sweep = rule_sweep(runs, [SelectionRule.stop_at_budget(0.5)], threads=2)

        assert sweep.summaries[0].mean_delta_test >= 0
        assert sweep.summaries[0].win_fraction == 0.0
        assert all(p.delta_test >= 0 for p in sweep.scatter)

    def test_high_noise_early_stopping_sometimes_wins(self):
        """Test that with heavy noise stopping early beats naive on some runs."""
        base = SyntheticSpec(n_configs=500, trajectory_len=200, sigma_indep=0.3)
        runs = [g.to_hpo_run() for g in sweep_grid(factorial_specs(base, range(50)))]

        sweep = rule_sweep(runs, [SelectionRule.stop_at_budget(0.25), parse_rule("percentile:0.01")])

        assert max(s.win_fraction for s in sweep.summaries) > 0

    def test_thread_count_does_not_change_result(self, rng):
        """Test that summaries are identical for any worker count."""
        runs = [make_run(rng.random(20), rng.random(20), seed=s) for s in range(12)]
        rules = [SelectionRule.stop_at_budget(0.5), SelectionRule.percentile(0.1)]

        serial = rule_sweep(runs, rules, threads=1)
        parallel = rule_sweep(runs, rules, threads=4)

        for a, b in zip(serial.summaries, parallel.summaries):
            assert (a.mean_delta_test, a.mean_delta_ot, a.win_fraction, a.n) == (
                b.mean_delta_test,
                b.mean_delta_ot,
                b.win_fraction,
                b.n,
            )
        assert [(p.key, p.delta_test) for p in serial.scatter] == [(p.key, p.delta_test) for p in parallel.scatter]

    def test_empty_inputs_raise(self):
        """Test that an empty corpus or rule list is rejected."""
        with pytest.raises(ValidationError):
            rule_sweep([], [SelectionRule.naive()])
        with pytest.raises(ParameterError):
            rule_sweep([make_run([0.5], [0.5])], [])
