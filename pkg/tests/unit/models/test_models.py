"""Tests for data models."""

from datetime import datetime
from uuid import UUID

import numpy as np
import pytest

from overtune.errors import MetricError
from overtune.models import (
    CorpusFormat,
    MetricSpec,
    Orientation,
    ParsedCorpus,
    ParseStats,
    RunKey,
    ScoreTrajectory,
    StoredCorpus,
)


def _key(**overrides) -> RunKey:
    fields = dict(study="s", learner="l", dataset="d", metric_name="error", resampling="holdout")
    fields.update(overrides)
    return RunKey(**fields)


def test_metric_spec_sign():
    """Test that maximized metrics are negated and minimized ones are not."""
    assert MetricSpec("error", Orientation.MINIMIZE).sign == 1.0
    assert MetricSpec("accuracy", Orientation.MAXIMIZE).sign == -1.0


def test_run_key_extra_mapping_is_sorted():
    """Test that an extra mapping is stored as sorted string pairs."""
    key = _key(extra={"optimizer": "rs", "budget": 10})

    assert key.extra == (("budget", "10"), ("optimizer", "rs"))
    assert key.extra_dict == {"budget": "10", "optimizer": "rs"}
    assert key.extra_text() == "budget=10;optimizer=rs"


def test_run_key_is_hashable_and_comparable():
    """Test that equal keys hash equally regardless of extra order."""
    a = _key(extra={"x": "1", "y": "2"})
    b = _key(extra=(("y", "2"), ("x", "1")))

    assert a == b
    assert len({a, b}) == 1


def test_run_key_identity_ignores_dataset_size():
    """Test that dataset size does not contribute to run identity."""
    assert _key(dataset_size=100).identity == _key(dataset_size=200).identity
    assert _key(seed=1).identity != _key(seed=2).identity


def test_run_key_sort_key_orders_missing_seed_first():
    """Test that a missing seed sorts before any seed."""
    keys = [_key(seed=2), _key(seed=None), _key(seed=1)]

    assert [k.seed for k in sorted(keys, key=lambda k: k.sort_key)] == [None, 1, 2]


def test_run_key_get_resolves_aliases_and_extra():
    """Test field lookup by canonical name, alias and extra column."""
    key = _key(seed=3, extra={"optimizer": "hebo"})

    assert key.get("metric") == "error"
    assert key.get("seed") == 3
    assert key.get("optimizer") == "hebo"
    assert key.has_field("metric_name")
    assert not key.has_field("unknown")
    with pytest.raises(KeyError):
        key.get("unknown")


def test_run_key_items_without_drops_factor():
    """Test that the pairing view omits the factor and the dataset size."""
    key = _key(seed=3, dataset_size=500, extra={"reshuffled": "true"})

    items = dict(key.items_without("reshuffled"))

    assert "reshuffled" not in items
    assert "dataset_size" not in items
    assert items["seed"] == "3"
    assert items["fold"] == ""


def test_run_key_label():
    """Test the compact label used in messages."""
    key = _key(seed=3, extra={"optimizer": "rs"})

    assert key.label() == "s/l/d/error/holdout/seed=3/optimizer=rs"


def test_trajectory_length_mismatch():
    """Test that val and test must have equal length."""
    with pytest.raises(MetricError) as exc_info:
        ScoreTrajectory(val=[0.1, 0.2], test=[0.1])

    assert exc_info.value.code == "LENGTH_MISMATCH"


def test_trajectory_rejects_non_finite():
    """Test that NaN scores are rejected."""
    with pytest.raises(MetricError) as exc_info:
        ScoreTrajectory(val=[0.1, np.nan], test=[0.1, 0.2])

    assert exc_info.value.code == "NON_FINITE_SCORE"


def test_trajectory_length():
    """Test that the length counts evaluations."""
    traj = ScoreTrajectory(val=[0.3, 0.2, 0.1], test=[0.6, 0.5, 0.4])

    assert traj.length == 3
    assert len(traj) == 3


def test_parse_stats_merged():
    """Test that merging parse statistics adds counters and concatenates warnings."""
    merged = ParseStats(runs_read=1, rows_read=3, rows_kept=2, rows_dropped=1, warnings=("a",)).merged(
        ParseStats(runs_read=2, rows_read=5, rows_kept=5, warnings=("b",))
    )

    assert merged.runs_read == 3
    assert merged.rows_read == 8
    assert merged.rows_kept == 7
    assert merged.rows_dropped == 1
    assert merged.warnings == ("a", "b")
    assert merged.warning_count == 2


def test_stored_corpus_creation():
    """Test creating a stored corpus with the factory method."""
    stored = StoredCorpus.create(filename="runs.csv", format=CorpusFormat.CSV, corpus=ParsedCorpus(runs=()))

    assert isinstance(stored.id, UUID)
    assert stored.filename == "runs.csv"
    assert stored.format == CorpusFormat.CSV
    assert isinstance(stored.upload_time, datetime)
    assert len(stored.corpus) == 0
