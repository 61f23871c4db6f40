"""
Incumbent extraction and the overtuning family of metrics.

All functions are pure and operate on lower-is-better scores. Time points
are 1-based in the public types (``incumbent_index``) and 0-based in array
positions.
"""

from typing import Optional

import numpy as np

from overtune.errors import MetricError, ParameterError
from overtune.models import IncumbentTrace, OvertuningReport, ScoreTrajectory

DEFAULT_EPSILON = 0.001

# Absolute tolerance for invariant checks on short sums and differences.
TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


def incumbent_positions(val: np.ndarray) -> np.ndarray:
    """
    0-based incumbent positions along the last axis of ``val``.

    The incumbent only changes on a strict validation improvement, so among
    equal validation errors the earliest evaluation wins. Works row-wise on
    2-d input (one trajectory per row).
    """
    val = np.asarray(val, dtype=np.float64)
    best = np.minimum.accumulate(val, axis=-1)
    improved = np.empty(val.shape, dtype=bool)
    improved[..., 0] = True
    improved[..., 1:] = val[..., 1:] < best[..., :-1]
    steps = np.where(improved, np.arange(val.shape[-1]), 0)
    return np.maximum.accumulate(steps, axis=-1)


def incumbent_trace(traj: ScoreTrajectory) -> IncumbentTrace:
    """
    Per-time-point validation-optimal configuration of a trajectory.

    Raises:
        MetricError: If the trajectory is empty (EMPTY_TRAJECTORY)
    """
    if traj.length == 0:
        raise MetricError("empty trajectory", "EMPTY_TRAJECTORY")
    positions = incumbent_positions(traj.val)
    incumbent_test = traj.test[positions]
    return IncumbentTrace(
        incumbent_index=_frozen(positions + 1),
        incumbent_val=_frozen(traj.val[positions]),
        incumbent_test=_frozen(incumbent_test),
        best_incumbent_test_so_far=_frozen(np.minimum.accumulate(incumbent_test)),
    )


def overtuning(trace: IncumbentTrace) -> np.ndarray:
    """Incumbent test error minus the best test error of any incumbent so far."""
    return _frozen(trace.incumbent_test - trace.best_incumbent_test_so_far)


def meta_overfitting(trace: IncumbentTrace) -> np.ndarray:
    """Gap between the incumbent's test and validation error."""
    return _frozen(trace.incumbent_test - trace.incumbent_val)


def trajectory_test_regret(traj: ScoreTrajectory, trace: IncumbentTrace) -> np.ndarray:
    """Incumbent test error minus the best test error of any evaluated configuration so far."""
    if traj.length != trace.length:
        raise MetricError(
            f"trace of length {trace.length} does not belong to trajectory of length {traj.length}",
            "LENGTH_MISMATCH",
        )
    return _frozen(trace.incumbent_test - np.minimum.accumulate(traj.test))


def oracle_test_regret(
    trace: IncumbentTrace,
    oracle_min_test: float,
    trajectory: Optional[ScoreTrajectory] = None,
) -> np.ndarray:
    """
    Incumbent test error minus the best test error of the whole search space.

    The oracle must not exceed any observed test error: the minimum of the
    trajectory when one is given, otherwise the minimum incumbent test error.

    Raises:
        MetricError: If the oracle exceeds the observed minimum (INCONSISTENT_ORACLE)
    """
    observed = float(
        np.min(trajectory.test) if trajectory is not None else np.min(trace.incumbent_test)
    )
    if not np.isfinite(oracle_min_test) or oracle_min_test > observed:
        raise MetricError(
            f"inconsistent oracle: {oracle_min_test!r} exceeds observed minimum test {observed!r}",
            "INCONSISTENT_ORACLE",
        )
    return _frozen(trace.incumbent_test - oracle_min_test)


def improvement_denominator(trace: IncumbentTrace) -> np.ndarray:
    """Test improvement of the best incumbent so far over the first incumbent."""
    return _frozen(trace.incumbent_test[0] - trace.best_incumbent_test_so_far)


def relative_overtuning(
    trace: IncumbentTrace,
    ot: np.ndarray,
    epsilon: float = DEFAULT_EPSILON,
) -> np.ndarray:
    """
    Overtuning as a fraction of the test improvement achieved so far.

    Time points whose improvement does not exceed ``epsilon`` are filtered
    and hold NaN.

    Raises:
        ParameterError: If epsilon is not positive (INVALID_EPSILON)
    """
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon!r}", "INVALID_EPSILON")
    denominator = improvement_denominator(trace)
    defined = denominator > epsilon
    rel = np.full(denominator.shape, np.nan)
    np.divide(ot, denominator, out=rel, where=defined)
    return _frozen(rel)


def compute_report(
    traj: ScoreTrajectory,
    epsilon: float = DEFAULT_EPSILON,
    oracle_min_test: Optional[float] = None,
) -> OvertuningReport:
    """Compute every per-time-point metric of one trajectory."""
    trace = incumbent_trace(traj)
    ot = overtuning(trace)
    return OvertuningReport(
        trace=trace,
        ot=ot,
        of=meta_overfitting(trace),
        tr=trajectory_test_regret(traj, trace),
        rel_ot=relative_overtuning(trace, ot, epsilon),
        denominator=improvement_denominator(trace),
        epsilon=float(epsilon),
        oracle_tr=(
            None
            if oracle_min_test is None
            else oracle_test_regret(trace, oracle_min_test, trajectory=traj)
        ),
    )
