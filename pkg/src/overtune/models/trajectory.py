"""Score trajectories and the per-time-point quantities derived from them."""

from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, TYPE_CHECKING

import numpy as np

from overtune.errors import MetricError

if TYPE_CHECKING:
    from .entities import RunKey


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


class SeverityClass(StrEnum):
    """Severity band of a relative overtuning value."""

    NONE = "none"
    MILD = "mild"
    SEVERE = "severe"


@dataclass(frozen=True, eq=False)
class ScoreTrajectory:
    """
    Validation and test errors of the configurations evaluated by one run,
    in evaluation order. Lower is better for both series.
    """

    val: np.ndarray
    test: np.ndarray

    def __post_init__(self) -> None:
        val = _frozen_array(self.val)
        test = _frozen_array(self.test)
        if val.ndim != 1 or test.ndim != 1 or val.shape != test.shape:
            raise MetricError(
                f"val and test must be 1-d series of equal length, got {val.shape} and {test.shape}",
                "LENGTH_MISMATCH",
            )
        if val.size == 0:
            raise MetricError("empty trajectory", "EMPTY_TRAJECTORY")
        if not (np.all(np.isfinite(val)) and np.all(np.isfinite(test))):
            raise MetricError("trajectory contains non-finite scores", "NON_FINITE_SCORE")
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "test", test)

    @property
    def length(self) -> int:
        return int(self.val.size)

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True, eq=False)
class IncumbentTrace:
    """Per-time-point incumbent of a trajectory. `incumbent_index` is 1-based."""

    incumbent_index: np.ndarray
    incumbent_val: np.ndarray
    incumbent_test: np.ndarray
    best_incumbent_test_so_far: np.ndarray

    @property
    def length(self) -> int:
        return int(self.incumbent_index.size)

    @property
    def positions(self) -> np.ndarray:
        """0-based incumbent positions."""
        return self.incumbent_index - 1


@dataclass(frozen=True, eq=False)
class OvertuningReport:
    """
    Overtuning, meta-overfitting and regret series of one run.

    `rel_ot` holds NaN wherever the denominator does not exceed `epsilon`;
    use `rel_ot_defined` (or `rel_ot_at`) rather than testing for NaN.
    """

    trace: IncumbentTrace
    ot: np.ndarray
    of: np.ndarray
    tr: np.ndarray
    rel_ot: np.ndarray
    denominator: np.ndarray
    epsilon: float
    oracle_tr: Optional[np.ndarray] = None

    @property
    def length(self) -> int:
        return self.trace.length

    @property
    def rel_ot_defined(self) -> np.ndarray:
        return self.denominator > self.epsilon

    def rel_ot_at(self, t: int) -> Optional[float]:
        """Relative overtuning at 1-based time point t, None when filtered."""
        if self.denominator[t - 1] > self.epsilon:
            return float(self.rel_ot[t - 1])
        return None

    @property
    def final_ot(self) -> float:
        return float(self.ot[-1])

    @property
    def final_of(self) -> float:
        return float(self.of[-1])

    @property
    def final_tr(self) -> float:
        return float(self.tr[-1])

    @property
    def final_rel_ot(self) -> Optional[float]:
        return self.rel_ot_at(self.length)

    @property
    def final_oracle_tr(self) -> Optional[float]:
        return None if self.oracle_tr is None else float(self.oracle_tr[-1])

    @property
    def final_incumbent_test(self) -> float:
        return float(self.trace.incumbent_test[-1])


@dataclass(frozen=True, eq=False)
class RunMetrics:
    """A run's key paired with its overtuning report."""

    key: "RunKey"
    report: OvertuningReport
