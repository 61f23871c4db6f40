"""Shared fixtures."""

from pathlib import Path

import numpy as np
import pytest

from overtune.models import MetricSpec, Orientation

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def error_table() -> list[MetricSpec]:
    return [MetricSpec("error", Orientation.MINIMIZE)]


@pytest.fixture
def mixed_table() -> list[MetricSpec]:
    return [
        MetricSpec("error", Orientation.MINIMIZE),
        MetricSpec("accuracy", Orientation.MAXIMIZE, "0 to 1"),
    ]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
