"""Replicate incumbent curves from subsampled trajectories."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from overtune.errors import ParameterError
from overtune.metrics import incumbent_positions
from overtune.models import ScoreTrajectory
from overtune.rng import StreamTag, substream

LOGGER = logging.getLogger(__name__)

# Replicates per work unit. Fixed so the reduction order never depends on threads.
CHUNK_SIZE = 1024

# Slack for f * T landing a hair below an integer.
_SUBSAMPLE_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class ReplicateCurves:
    """Per-iteration mean and standard error of incumbent validation and test error."""

    iterations: np.ndarray
    mean_val: np.ndarray
    se_val: np.ndarray
    mean_test: np.ndarray
    se_test: np.ndarray
    n_replicates: int
    subsample_fraction: float
    shuffle: bool = False

    @property
    def length(self) -> int:
        return int(self.iterations.size)


@dataclass
class _ChunkStats:
    """Column sums and centred second moments of one block of replicates."""

    n: int
    sum_val: np.ndarray
    sum_test: np.ndarray
    m2_val: np.ndarray
    m2_test: np.ndarray


def subsample_size(length: int, fraction: float) -> int:
    return math.floor(fraction * length + _SUBSAMPLE_SLACK)


def _draw(length: int, m: int, seed: int, replicate: int, shuffle: bool) -> np.ndarray:
    rng = substream(seed, StreamTag.REPLICATION, replicate)
    positions = rng.choice(length, size=m, replace=False)
    return positions if shuffle else np.sort(positions)


def _chunk(traj: ScoreTrajectory, m: int, seed: int, start: int, stop: int, shuffle: bool) -> _ChunkStats:
    positions = np.stack([_draw(traj.length, m, seed, r, shuffle) for r in range(start, stop)])
    val = traj.val[positions]
    test = traj.test[positions]
    rows = np.arange(val.shape[0])[:, None]
    incumbent = incumbent_positions(val)
    inc_val = val[rows, incumbent]
    inc_test = test[rows, incumbent]
    return _ChunkStats(
        n=stop - start,
        sum_val=inc_val.sum(axis=0),
        sum_test=inc_test.sum(axis=0),
        m2_val=((inc_val - inc_val.mean(axis=0)) ** 2).sum(axis=0),
        m2_test=((inc_test - inc_test.mean(axis=0)) ** 2).sum(axis=0),
    )


def _combine_m2(n_a: int, sum_a: np.ndarray, m2_a: np.ndarray, chunk_n: int, chunk_sum: np.ndarray, chunk_m2: np.ndarray) -> np.ndarray:
    # Pairwise update of the centred second moment.
    if n_a == 0:
        return chunk_m2
    delta = chunk_sum / chunk_n - sum_a / n_a
    return m2_a + chunk_m2 + delta**2 * (n_a * chunk_n / (n_a + chunk_n))


def replicate_curves(
    traj: ScoreTrajectory,
    f: float,
    R: int,
    seed: int,
    shuffle: bool = False,
    threads: int = 1,
) -> ReplicateCurves:
    """
    Mean and standard error of incumbent curves over subsampled replicates.

    Each replicate draws floor(f*T) configurations without replacement,
    keeps their original evaluation order (or re-permutes them when
    ``shuffle`` is set), and rebuilds the incumbent series. Replicate r
    draws from its own substream of ``seed``, and reductions run in
    replicate order, so the output is identical for any thread count.

    Args:
        traj: Source trajectory
        f: Subsample fraction in (0, 1]
        R: Number of replicates
        seed: Base seed
        shuffle: Re-permute each subsample instead of preserving order
        threads: Worker threads

    Raises:
        ParameterError: If f is outside (0, 1] (INVALID_FRACTION), R < 1
            (INVALID_REPLICATES) or f*T < 1 (EMPTY_SUBSAMPLE)
    """
    if not 0 < f <= 1:
        raise ParameterError(f"subsample fraction must lie in (0, 1], got {f!r}", "INVALID_FRACTION")
    if isinstance(R, bool) or int(R) != R or R < 1:
        raise ParameterError(f"number of replicates must be a positive integer, got {R!r}", "INVALID_REPLICATES")
    R = int(R)
    m = subsample_size(traj.length, f)
    if m < 1:
        raise ParameterError(
            f"empty subsample: floor({f} * {traj.length}) = 0",
            "EMPTY_SUBSAMPLE",
        )

    bounds = [(start, min(start + CHUNK_SIZE, R)) for start in range(0, R, CHUNK_SIZE)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        chunks = list(executor.map(lambda b: _chunk(traj, m, seed, b[0], b[1], shuffle), bounds))

    n = 0
    sum_val = np.zeros(m)
    sum_test = np.zeros(m)
    m2_val = np.zeros(m)
    m2_test = np.zeros(m)
    for chunk in chunks:
        m2_val = _combine_m2(n, sum_val, m2_val, chunk.n, chunk.sum_val, chunk.m2_val)
        m2_test = _combine_m2(n, sum_test, m2_test, chunk.n, chunk.sum_test, chunk.m2_test)
        sum_val = sum_val + chunk.sum_val
        sum_test = sum_test + chunk.sum_test
        n += chunk.n

    if R > 1:
        se_val = np.sqrt(m2_val / (R - 1)) / math.sqrt(R)
        se_test = np.sqrt(m2_test / (R - 1)) / math.sqrt(R)
    else:
        se_val = np.zeros(m)
        se_test = np.zeros(m)

    LOGGER.debug("built %d replicates of %d iterations in %d chunks", R, m, len(chunks))
    return ReplicateCurves(
        iterations=np.arange(1, m + 1),
        mean_val=sum_val / R,
        se_val=se_val,
        mean_test=sum_test / R,
        se_test=se_test,
        n_replicates=R,
        subsample_fraction=float(f),
        shuffle=shuffle,
    )
