"""Seeded bootstrap plumbing.

Index draws, per-replication random substreams, and the histogram-based
empirical CDF used to convert between band scaling constants and
confidence levels.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BootstrapConfig:
    """Knobs shared by every bootstrap operation.

    Attributes
    ----------
    replications : int
        Outer bootstrap replication count B.
    nested_replications : int
        Replication count Bs of the nested loop and of the pointwise-std
        estimate in the two-group comparison.
    seed : int
        Root seed; all substreams derive from it.
    bins : int
        Histogram bin count for the empirical CDF.
    exact_quantiles : bool
        Use order statistics instead of the histogram when converting
        between scaling constants and confidence levels.  Off by default;
        useful for convergence studies.
    """

    replications: int = 1000
    nested_replications: int = 50
    seed: int = 0
    bins: int = 1000
    exact_quantiles: bool = False

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.nested_replications < 2:
            raise ValueError("nested_replications must be >= 2")
        if self.bins < 2:
            raise ValueError("bins must be >= 2")


class IndexStreams:
    """Deterministic family of random streams keyed by small integer tuples.

    ``stream(b)`` is the stream of replication b, ``stream(b, b2, g)`` a
    nested stream, and so on.  Streams with different keys are
    statistically independent and each key always yields the same
    sequence for a given root seed, so results do not depend on how the
    replication loop is scheduled.
    """

    def __init__(self, seed: int):
        self._seed = int(seed)

    @property
    def seed(self) -> int:
        return self._seed

    def stream(self, *key: int) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self._seed, spawn_key=tuple(int(k) for k in key)
        )
        return np.random.default_rng(seq)


def resample_indices(n: int, stream) -> np.ndarray:
    """Draw n indices uniformly over 0..n-1 with replacement."""
    if n < 1:
        raise ValueError("need n >= 1 to resample")
    return stream.integers(0, n, size=n)


@dataclass(frozen=True)
class StatEcdf:
    """Histogram CDF of a statistic pool.

    `bin_edges` has bins+1 entries; `cdf[j]` is the fraction of the pool
    at or below ``bin_edges[j + 1]``.  The raw pool is kept sorted for the
    exact-quantile code path.
    """

    sorted_stats: np.ndarray
    bin_edges: np.ndarray
    cdf: np.ndarray

    def __post_init__(self) -> None:
        for name in ("sorted_stats", "bin_edges", "cdf"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.bin_edges.size != self.cdf.size + 1:
            raise ValueError("need exactly one more edge than cdf entries")
        if np.any(np.diff(self.sorted_stats) < 0) or np.any(np.diff(self.cdf) < 0):
            raise ValueError("sorted_stats and cdf must be non-decreasing")
        if self.cdf[-1] != 1.0:
            raise ValueError("cdf must end at exactly 1.0")

    @property
    def bin_width(self) -> float:
        return float(self.bin_edges[1] - self.bin_edges[0])


def ecdf(stats, bins: int) -> StatEcdf:
    """Equal-width histogram CDF over the range of the statistics.

    A constant pool gets its range widened by one machine epsilon on each
    side so the histogram stays well defined.
    """
    values = np.asarray(stats, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("cannot build an ECDF from an empty pool")
    if not np.all(np.isfinite(values)):
        raise ValueError("statistic pool must be finite")
    lo = float(values.min())
    hi = float(values.max())
    if lo == hi:
        pad = np.spacing(max(abs(lo), 1.0))
        lo -= pad
        hi += pad
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    cdf = np.cumsum(counts) / values.size
    cdf[-1] = 1.0
    return StatEcdf(sorted_stats=np.sort(values), bin_edges=edges, cdf=cdf)


def alpha_at(e: StatEcdf, c: float, exact: bool = False) -> float:
    """Confidence level at which the pool's band scale reaches `c`.

    Histogram mode returns the cumulative count of the bin containing
    `c`, clamped to 0 below the pool range and 1 at or above its top.
    Exact mode returns the plain order-statistic rank fraction.
    """
    c = float(c)
    if not np.isfinite(c):
        raise ValueError("c must be finite")
    if exact:
        n = e.sorted_stats.size
        return float(np.searchsorted(e.sorted_stats, c, side="right") / n)
    if c < e.bin_edges[0]:
        return 0.0
    if c >= e.bin_edges[-1]:
        return 1.0
    j = int(np.searchsorted(e.bin_edges, c, side="right")) - 1
    return float(e.cdf[j])


def c_at(e: StatEcdf, alpha: float, exact: bool = False) -> float:
    """Band scale that reaches confidence level `alpha` on this pool.

    Histogram mode returns the lower edge of the first bin whose
    cumulative count exceeds `alpha`; at alpha = 1 that bin does not
    exist and the top edge (the pool maximum) is returned.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if exact:
        n = e.sorted_stats.size
        k = min(int(np.floor(alpha * n)), n - 1)
        return float(e.sorted_stats[k])
    idx = int(np.searchsorted(e.cdf, alpha, side="right"))
    if idx >= e.cdf.size:
        return float(e.bin_edges[-1])
    return float(e.bin_edges[idx])


def thread_count() -> int:
    """Worker count from the THREADS environment variable (default 1)."""
    raw = os.environ.get("THREADS", "").strip()
    if not raw:
        return 1
    workers = int(raw)
    if workers < 1:
        raise ValueError("THREADS must be a positive integer")
    return workers


def map_chunks(count: int, fn, chunk: int = 64) -> list:
    """Apply ``fn(start, stop)`` over [0, count) in order, maybe threaded.

    The chunk results are returned in index order whatever the worker
    count, so callers stay schedule-independent for free.
    """
    spans = [(s, min(s + chunk, count)) for s in range(0, count, chunk)]
    workers = thread_count()
    if workers == 1 or len(spans) <= 1:
        return [fn(s, t) for s, t in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda span: fn(*span), spans))
