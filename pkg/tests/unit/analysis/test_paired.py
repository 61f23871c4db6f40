"""Tests for paired comparisons."""

import math

import numpy as np
import pytest

from overtune.analysis import paired_compare, pearson_correlation, quadrant_counts, split_by_level
from overtune.errors import ParameterError, ValidationError
from overtune.processing import CorpusProcessor
from tests.oracles import make_run


def _side(optimizer: str, n: int = 5, shift: float = 0.0):
    runs = []
    for seed in range(n):
        local = np.random.default_rng(seed)
        val = local.random(6)
        test = local.random(6) - shift
        runs.append(make_run(val, test, seed=seed, optimizer=optimizer))
    return CorpusProcessor.compute_metrics(runs)


class TestPairedCompare:
    """Tests for paired_compare."""

    def test_self_comparison_is_zero(self):
        """Test that identical trajectories differ by nothing."""
        a = _side("a")
        b = _side("b")

        comparison = paired_compare(a, b, "optimizer")

        assert comparison.summary.n_pairs == 5
        assert all(d.delta_final_test == 0 for d in comparison.deltas)
        assert comparison.summary.mean_delta_ot == 0.0
        assert comparison.summary.quadrants.on_axis == 5
        assert comparison.deltas[0].level_a == "a"
        assert comparison.deltas[0].level_b == "b"

    def test_uniformly_better_side(self):
        """Test that a uniform 0.01 test shift shows as the mean delta."""
        comparison = paired_compare(_side("a"), _side("b", shift=0.01), "optimizer")

        assert comparison.summary.mean_delta_test == pytest.approx(-0.01, abs=1e-12)
        assert comparison.summary.mean_delta_ot == pytest.approx(0.0, abs=1e-12)
        assert comparison.summary.fraction_negative == 1.0

    def test_unmatched_and_ambiguous_runs(self):
        """Test that partnerless and duplicated pairing keys are excluded and counted."""
        a = _side("a", n=4)
        b = _side("b", n=3)
        b.extend(_side("c", n=1))

        comparison = paired_compare(a, b, "optimizer")

        assert comparison.summary.n_pairs == 2
        assert comparison.summary.n_ambiguous == 3
        assert comparison.summary.n_unmatched_a == 1
        assert comparison.summary.n_unmatched_b == 0

    def test_no_pairs_raises(self):
        """Test that disjoint sides are rejected."""
        a = _side("a")

        with pytest.raises(ValidationError) as exc_info:
            paired_compare(a, a, "seed")

        assert exc_info.value.code == "NO_MATCHED_PAIRS"


class TestSplitByLevel:
    """Tests for split_by_level."""

    def test_split_on_extra_column(self):
        """Test that runs are routed by their factor level."""
        results = _side("a", n=2) + _side("b", n=3) + _side("c", n=1)

        side_a, side_b = split_by_level(results, "optimizer", "a", "b")

        assert len(side_a) == 2
        assert len(side_b) == 3

    def test_split_on_integer_field(self):
        """Test that integer fields compare as text."""
        side_a, side_b = split_by_level(_side("a", n=3), "seed", "0", "2")

        assert [r.key.seed for r in side_a] == [0]
        assert [r.key.seed for r in side_b] == [2]

    def test_unknown_factor_raises(self):
        """Test that a factor carried by no run is rejected."""
        with pytest.raises(ParameterError) as exc_info:
            split_by_level(_side("a", n=1), "reshuffled", "true", "false")

        assert exc_info.value.code == "UNKNOWN_FIELD"


class TestDescriptiveHelpers:
    """Tests for quadrant counts and correlation."""

    def test_quadrant_counts(self):
        """Test that each sign combination lands in its quadrant."""
        counts = quadrant_counts([1, -1, -1, 1, 0], [1, 1, -1, -1, 1])

        assert counts.both_positive == 1
        assert counts.x_negative_y_positive == 1
        assert counts.both_negative == 1
        assert counts.x_positive_y_negative == 1
        assert counts.on_axis == 1

    def test_correlation(self):
        """Test perfect and undefined correlations."""
        assert pearson_correlation([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
        assert math.isnan(pearson_correlation([1, 1, 1], [2, 4, 6]))
        assert math.isnan(pearson_correlation([1], [2]))
