"""Tests for per-run oracle tables."""

import pytest

from overtune.errors import ValidationError
from overtune.ingest import parse_extra_text, read_oracle_table
from overtune.models import RunKey
from overtune.reporting import rows, write_table

HEADER = "study,learner,dataset,metric,resampling,dataset_size,seed,fold,extra,oracle_min_test\n"


def _key(**overrides) -> RunKey:
    fields = dict(study="s", learner="l", dataset="d", metric_name="error", resampling="holdout", seed=1)
    fields.update(overrides)
    return RunKey(**fields)


class TestParseExtraText:
    """Tests for parse_extra_text."""

    def test_pairs(self):
        """Test that name=value items become a mapping."""
        assert parse_extra_text("optimizer=hebo;sigma=0.1") == {"optimizer": "hebo", "sigma": "0.1"}

    def test_blank(self):
        """Test that an empty cell has no extra items."""
        assert parse_extra_text("") == {}

    def test_inverts_extra_text(self):
        """Test that parsing the written form restores the key's extra items."""
        key = _key(extra={"b": "2", "a": "x"})

        assert parse_extra_text(key.extra_text()) == key.extra_dict

    def test_malformed_item_raises(self):
        """Test that an item without '=' is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            parse_extra_text("a=1;broken")

        assert exc_info.value.code == "INVALID_RECORD"


class TestReadOracleTable:
    """Tests for read_oracle_table."""

    def test_reads_table_written_by_simulate_layout(self, tmp_path, error_table):
        """Test that a table written with the oracle row layout is keyed by run identity."""
        keys = [_key(seed=1), _key(seed=2, extra={"sigma_indep": "0.05"})]
        path = write_table(
            tmp_path, "oracle", rows.ORACLE_COLUMNS, [rows.oracle_row(k, v) for k, v in zip(keys, [0.125, 0.25])]
        )

        oracles = read_oracle_table(path, error_table)

        assert oracles == {keys[0].identity: 0.125, keys[1].identity: 0.25}

    def test_maximized_metric_is_negated(self, write_file, mixed_table):
        """Test that accuracy oracles become lower-is-better."""
        path = write_file("oracle.csv", HEADER + "s,l,d,accuracy,holdout,,1,,,0.875\n")

        oracles = read_oracle_table(path, mixed_table)

        assert oracles == {_key(metric_name="accuracy").identity: -0.875}

    def test_dataset_size_does_not_affect_identity(self, write_file, error_table):
        """Test that rows match runs regardless of the informational dataset size."""
        path = write_file("oracle.csv", HEADER + "s,l,d,error,holdout,500,1,,,0.5\n")

        assert _key().identity in read_oracle_table(path, error_table)

    def test_unknown_metric_raises(self, write_file, error_table):
        """Test that a metric missing from the metric table is rejected."""
        path = write_file("oracle.csv", HEADER + "s,l,d,auc,holdout,,1,,,0.5\n")

        with pytest.raises(ValidationError) as exc_info:
            read_oracle_table(path, error_table)

        assert exc_info.value.code == "UNKNOWN_METRIC"

    def test_duplicate_key_raises(self, write_file, error_table):
        """Test that two oracle values for one run are rejected."""
        path = write_file("oracle.csv", HEADER + "s,l,d,error,holdout,,1,,,0.5\ns,l,d,error,holdout,,1,,,0.25\n")

        with pytest.raises(ValidationError) as exc_info:
            read_oracle_table(path, error_table)

        assert exc_info.value.code == "DUPLICATE_RUN_KEY"

    @pytest.mark.parametrize("value", ["", "nan", "inf"])
    def test_non_finite_value_raises(self, write_file, error_table, value):
        """Test that a missing or non-finite oracle is rejected."""
        path = write_file("oracle.csv", HEADER + f"s,l,d,error,holdout,,1,,,{value}\n")

        with pytest.raises(ValidationError) as exc_info:
            read_oracle_table(path, error_table)

        assert exc_info.value.code == "INVALID_NUMBER"

    def test_missing_oracle_column_raises(self, write_file, error_table):
        """Test that a header without oracle_min_test is rejected."""
        path = write_file("oracle.csv", "study,learner,dataset,metric,resampling\n")

        with pytest.raises(ValidationError) as exc_info:
            read_oracle_table(path, error_table)

        assert exc_info.value.code == "MISSING_FIELD"
