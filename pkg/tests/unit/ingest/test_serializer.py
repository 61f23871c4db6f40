"""Tests for corpus serialization."""

import numpy as np
import pytest

from overtune.errors import ValidationError
from overtune.ingest import parse_corpus, serialize_corpus
from overtune.models import CorpusFormat
from tests.oracles import make_run


def _runs(rng, metric: str = "error"):
    return [
        make_run(rng.random(T), rng.random(T), seed=seed, metric=metric, optimizer="rs")
        for seed, T in enumerate((1, 4, 7))
    ]


class TestSerializeCorpus:
    """Tests for serialize_corpus."""

    @pytest.mark.parametrize("fmt", [CorpusFormat.CSV, CorpusFormat.JSONL])
    def test_parse_reproduces_runs(self, tmp_path, rng, error_table, fmt):
        """Test that writing and parsing again reproduces every trajectory bit for bit."""
        runs = _runs(rng)
        path = serialize_corpus(runs, tmp_path / f"corpus.{fmt.value}", fmt, error_table)

        parsed = parse_corpus(path, metric_table=error_table)

        assert [r.key for r in parsed] == [r.key for r in runs]
        for original, again in zip(runs, parsed):
            assert np.array_equal(original.trajectory.val, again.trajectory.val)
            assert np.array_equal(original.trajectory.test, again.trajectory.test)

    def test_maximized_metric_is_written_in_declared_orientation(self, tmp_path, mixed_table):
        """Test that lower-is-better accuracy is written back as accuracy."""
        run = make_run([-0.75, -0.875], [-0.5, -0.625], seed=1, metric="accuracy")

        path = serialize_corpus([run], tmp_path / "acc.csv", CorpusFormat.CSV, mixed_table)

        lines = path.read_text().splitlines()
        assert lines[1].endswith(",1,0.75,0.5")
        parsed = parse_corpus(path, metric_table=mixed_table)
        assert parsed.runs[0].trajectory.val.tolist() == [-0.75, -0.875]

    def test_missing_metric_raises(self, tmp_path, error_table):
        """Test that a run whose metric has no declared orientation is rejected."""
        run = make_run([0.5], [0.5], metric="accuracy")

        with pytest.raises(ValidationError) as exc_info:
            serialize_corpus([run], tmp_path / "x.csv", CorpusFormat.CSV, error_table)

        assert exc_info.value.code == "UNKNOWN_METRIC"
