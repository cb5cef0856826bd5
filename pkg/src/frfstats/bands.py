"""Prediction bands for FRF sets.

A prediction band is a corridor ``mean(t) +/- scale * std(t)`` built so a
fresh draw from the population falls inside it with a chosen confidence.
The scale is calibrated with a pivotized bootstrap: each replication
resamples the set, and every original sample contributes its maximum
standardized deviation from the replicate mean, standardized by the
replicate std.  The pool of B*N such statistics is summarized by a
histogram CDF; converting a confidence level to a scale (or back) is then
a lookup.

The reverse question, "which confidence level would a given test sample
just reach?", is answered by minimal_prediction_band: the scale is fixed
by the test sample's own deviation from the set mean and the confidence
level is read off the same statistic pool.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSpread
from .grid import FrequencyGrid
from .pir import FRF, FRFSet, pir_from_frf, pir_matrix, pir_stats
from .resampling import (
    BootstrapConfig,
    IndexStreams,
    StatEcdf,
    alpha_at,
    c_at,
    ecdf,
    map_chunks,
    resample_indices,
)

#: Redraw attempts per replication before giving up on zero spread.
MAX_REDRAWS = 10


@dataclass(frozen=True)
class Band:
    """A symmetric band around a mean curve.

    `upper` and `lower` are derived as ``mean +/- scale * std``.
    """

    mean: np.ndarray
    std: np.ndarray
    scale: float
    alpha: float
    upper: np.ndarray = field(init=False)
    lower: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=float)
        std = np.asarray(self.std, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)
        if mean.shape != std.shape or mean.ndim != 1:
            raise ValueError("mean and std must be 1-D vectors of equal length")
        if np.any(std < 0):
            raise ValueError("std must be non-negative")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        upper = mean + self.scale * std
        lower = mean - self.scale * std
        for arr in (mean, std, upper, lower):
            arr.setflags(write=False)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)

    def contains(self, values) -> bool:
        """True when the curve stays inside the band at every time point."""
        v = np.asarray(values, dtype=float)
        return bool(np.all((v >= self.lower) & (v <= self.upper)))


@dataclass(frozen=True)
class ReplicateDraws:
    """Everything the band bootstrap produced, one row per replication.

    Kept around so tests (and the curious) can audit each intermediate:
    the resample indices, the replicate means/stds, and the per-sample
    max-deviation statistics whose pool calibrates the band.
    """

    indices: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    stats: np.ndarray

    def __post_init__(self) -> None:
        for name in ("indices", "means", "stds", "stats"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def pool(self) -> np.ndarray:
        """The B*N statistics, flattened in replication-major order."""
        return self.stats.ravel()


def _redraw_replication(pirs, gen, idx_row, means_row, stds_row):
    """Redraw one replication until its std is nonzero everywhere."""
    n = pirs.shape[0]
    for _ in range(MAX_REDRAWS):
        idx = resample_indices(n, gen)
        sub = pirs[idx]
        std = sub.std(axis=0, ddof=1)
        if np.all(std > 0.0):
            idx_row[:] = idx
            means_row[:] = sub.mean(axis=0)
            stds_row[:] = std
            return
    raise DegenerateSpread(
        f"a bootstrap replication kept zero spread after {MAX_REDRAWS} redraws"
    )


def bootstrap_deviation_stats(
    frf_set: FRFSet,
    grid: FrequencyGrid,
    cfg: BootstrapConfig,
    streams: IndexStreams | None = None,
) -> ReplicateDraws:
    """Pivotized max-deviation statistics, B replications x N samples.

    Replication b resamples the N PIRs with replacement (stream key b),
    takes the replicate mean and std, and scores every original sample by
    ``max_t |x_i(t) - replicate_mean(t)| / replicate_std(t)``.
    Replications whose std hits zero anywhere are redrawn from their own
    stream, at most MAX_REDRAWS times.
    """
    if frf_set.n < 3:
        raise ValueError("need at least three samples to bootstrap a band")
    if streams is None:
        streams = IndexStreams(cfg.seed)
    pirs = pir_matrix(frf_set, grid)
    n = pirs.shape[0]

    def run(start, stop):
        gens = [streams.stream(b) for b in range(start, stop)]
        idx = np.stack([resample_indices(n, g) for g in gens])
        sub = pirs[idx]
        means = sub.mean(axis=1)
        stds = sub.std(axis=1, ddof=1)
        for j in np.flatnonzero(np.any(stds == 0.0, axis=1)):
            _redraw_replication(pirs, gens[j], idx[j], means[j], stds[j])
        stats = np.max(
            np.abs(pirs[None, :, :] - means[:, None, :]) / stds[:, None, :],
            axis=2,
        )
        return idx, means, stds, stats

    parts = map_chunks(cfg.replications, run)
    return ReplicateDraws(
        indices=np.concatenate([p[0] for p in parts]),
        means=np.concatenate([p[1] for p in parts]),
        stds=np.concatenate([p[2] for p in parts]),
        stats=np.concatenate([p[3] for p in parts]),
    )


def _checked_stats(frf_set: FRFSet, grid: FrequencyGrid):
    st = pir_stats(frf_set, grid)
    if np.any(st.std == 0.0):
        raise DegenerateSpread(
            "the sample set has zero spread at some time point"
        )
    return st


def prediction_band(
    frf_set: FRFSet,
    grid: FrequencyGrid,
    alpha: float,
    cfg: BootstrapConfig,
    streams: IndexStreams | None = None,
) -> Band:
    """Band expected to contain a fresh draw with confidence `alpha`."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    st = _checked_stats(frf_set, grid)
    draws = bootstrap_deviation_stats(frf_set, grid, cfg, streams)
    e = ecdf(draws.pool, cfg.bins)
    scale = c_at(e, alpha, exact=cfg.exact_quantiles)
    return Band(mean=st.mean, std=st.std, scale=scale, alpha=alpha)


class MinimalBand(NamedTuple):
    band: Band
    alpha: float
    stat_ecdf: StatEcdf


def minimal_prediction_band(
    test: FRF,
    frf_set: FRFSet,
    grid: FrequencyGrid,
    cfg: BootstrapConfig,
    streams: IndexStreams | None = None,
) -> MinimalBand:
    """Tightest band of the family that still contains the test sample.

    The scale is the test PIR's maximum standardized deviation from the
    set mean (original mean and std, not replicate ones); the returned
    alpha is that scale's confidence level on the bootstrap pool, clamped
    to 1 when the test lies beyond every pooled statistic.
    """
    st = _checked_stats(frf_set, grid)
    x_test = pir_from_frf(test, grid).values
    scale = float(np.max(np.abs(x_test - st.mean) / st.std))
    draws = bootstrap_deviation_stats(frf_set, grid, cfg, streams)
    e = ecdf(draws.pool, cfg.bins)
    alpha = alpha_at(e, scale, exact=cfg.exact_quantiles)
    band = Band(mean=st.mean, std=st.std, scale=scale, alpha=alpha)
    return MinimalBand(band=band, alpha=alpha, stat_ecdf=e)
