"""Reproducible Monte Carlo driver built on counter-based random streams.

Every sample index owns its own Philox stream, so estimates are bitwise
identical no matter how many workers execute the sample map.  Failed
evaluations (e.g. a quadrature node landing on an eigenangle) are retried on
a shifted substream and counted; a run aborts if failures stop looking like
measure-zero accidents.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.random import Generator, Philox

__all__ = [
    "RngStream",
    "MCEstimate",
    "MCRunStats",
    "RetryableSampleError",
    "MCFailureError",
    "run_mc",
    "run_mc_detailed",
    "ks_distance",
]

_MASK64 = (1 << 64) - 1
# Retry attempt r of sample i uses stream id i + (r << 48): disjoint from the
# plain sample indices for any realistic sample count.
_RETRY_SHIFT = 48
_MAX_RETRIES = 8
_ABORT_FRACTION = 1e-3


class RetryableSampleError(RuntimeError):
    """Base class for per-sample failures that may be resampled."""


class MCFailureError(RuntimeError):
    """Raised when too many Monte Carlo samples fail to evaluate."""


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream addressed by (seed, stream_id).

    Distinct stream ids give statistically independent Philox sequences, and
    a fixed (seed, stream_id) pair reproduces the same draws regardless of
    scheduling, process or thread count.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> Generator:
        """A fresh numpy Generator positioned at the start of this stream."""
        key = [self.seed & _MASK64, self.stream_id & _MASK64]
        return Generator(Philox(key=key))

    def substream(self, index: int) -> "RngStream":
        """Derived stream disjoint from all plain sample indices."""
        return RngStream(self.seed, (self.stream_id + (index << _RETRY_SHIFT)) & _MASK64)


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error.

    stderr is the sample standard deviation (ddof=1) divided by sqrt(count).
    """

    mean: float
    stderr: float
    count: int


@dataclass(frozen=True)
class MCRunStats:
    """Bookkeeping for a Monte Carlo run: retried and lost samples."""

    retries: int
    failures: int


def _evaluate_sample(
    functional: Callable[[RngStream], float],
    seed: int,
    index: int,
    retryable: tuple,
) -> tuple[float, int, bool]:
    retries = 0
    for attempt in range(_MAX_RETRIES + 1):
        stream = RngStream(seed, index) if attempt == 0 else RngStream(seed, index).substream(attempt)
        try:
            return float(functional(stream)), retries, True
        except retryable:
            retries += 1
    return math.nan, retries, False


def run_mc_detailed(
    functional: Callable[[RngStream], float],
    samples: int,
    seed: int,
    workers: int = 1,
    retryable: tuple = (RetryableSampleError,),
) -> tuple[MCEstimate, MCRunStats]:
    """Estimate the mean of ``functional`` over per-index random streams.

    Parameters
    ----------
    functional : callable
        Maps an RngStream to a real value.  Exceptions of the types in
        ``retryable`` trigger a resample on a shifted substream.
    samples : int
        Number of sample indices (>= 2).
    seed : int
        Master seed; sample i uses stream (seed, i).
    workers : int
        Thread count for the sample map.  The reduction is always performed
        in index order, so the result is identical for any worker count.

    Returns
    -------
    (MCEstimate, MCRunStats)

    Raises
    ------
    MCFailureError
        If any sample exhausts its retries, or more than 0.1% of samples
        needed a retry at all.
    """
    samples = int(samples)
    if samples < 2:
        raise ValueError(f"run_mc requires samples >= 2, got {samples}")
    retryable = tuple(retryable) if retryable else (RetryableSampleError,)

    values = np.empty(samples, dtype=float)
    retry_counts = np.zeros(samples, dtype=np.int64)
    ok = np.zeros(samples, dtype=bool)

    def work(i: int) -> None:
        v, r, success = _evaluate_sample(functional, seed, i, retryable)
        values[i] = v
        retry_counts[i] = r
        ok[i] = success

    if workers <= 1:
        for i in range(samples):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            list(pool.map(work, range(samples)))

    failures = int(samples - int(ok.sum()))
    retried_samples = int(np.count_nonzero(retry_counts))
    stats = MCRunStats(retries=int(retry_counts.sum()), failures=failures)
    if failures > 0 or retried_samples > _ABORT_FRACTION * samples:
        raise MCFailureError(
            f"{failures} samples failed and {retried_samples} of {samples} "
            f"needed retries; aborting (threshold {_ABORT_FRACTION:.1%})"
        )

    # Fixed-order reduction over the index-ordered array: deterministic
    # regardless of which thread produced which entry.
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples))
    return MCEstimate(mean=mean, stderr=stderr, count=samples), stats


def run_mc(
    functional: Callable[[RngStream], float],
    samples: int,
    seed: int,
    workers: int = 1,
    retryable: tuple = (RetryableSampleError,),
) -> MCEstimate:
    """Like run_mc_detailed but returning only the estimate."""
    estimate, _ = run_mc_detailed(functional, samples, seed, workers, retryable)
    return estimate


def ks_distance(samples_a: Sequence[float], samples_b: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.

    Both inputs must be nonempty; the result lies in [0, 1].
    """
    a = np.sort(np.asarray(samples_a, dtype=float).ravel())
    b = np.sort(np.asarray(samples_b, dtype=float).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_distance requires two nonempty sample sets")
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))
