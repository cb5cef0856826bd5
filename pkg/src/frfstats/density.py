"""Bootstrap estimates of the distribution of a test sample's distance.

The scalar studied is the distance between the test sample's PIR and the
population mean PIR.  Each replication resamples the set, ranks the test
distance among the resampled members' own distances to the replicate
mean, and reads a CDF value off the rank; a PDF value follows as an
incremental ratio over a small rank window.  Means and stds over the B
replications summarize both estimates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroSpread
from .grid import FrequencyGrid
from .pir import FRF, FRFSet, pir_from_frf, pir_matrix
from .resampling import BootstrapConfig, IndexStreams, map_chunks, resample_indices

#: Fraction of replications allowed to have a zero-width PDF window.
MAX_SKIPPED_FRACTION = 0.2

NUMERATOR_MODES = ("code-compatible", "index-span")


def _squared(rows: np.ndarray, center: np.ndarray) -> np.ndarray:
    diff = rows - center
    return np.sum(diff * diff, axis=-1)


def _max_abs(rows: np.ndarray, center: np.ndarray) -> np.ndarray:
    return np.max(np.abs(rows - center), axis=-1)


def resolve_metric(metric):
    """Map a metric name or callable to a (rows, center) -> distances function.

    Built-ins: "squared" is the discrete sum of squared differences (no
    time-step factor, so rescale when comparing across sample rates) and
    "max" the maximum absolute difference.  A callable must map two PIR
    value vectors to a scalar and is applied row by row.
    """
    if callable(metric):
        def rowwise(rows, center):
            out = np.array([float(metric(row, center)) for row in np.atleast_2d(rows)])
            return out if np.ndim(rows) > 1 else out[0]

        return rowwise
    if metric == "squared":
        return _squared
    if metric == "max":
        return _max_abs
    raise ValueError(f"{metric!r} is not a valid metric")


@dataclass(frozen=True)
class DensityEstimate:
    """CDF/PDF estimate of the test distance, with per-replication detail.

    `pdf_stats` holds NaN where a replication's window had zero width and
    its PDF statistic was skipped; `window` is the half-width Ds of the
    rank window.
    """

    cdf_mean: float
    cdf_std: float
    pdf_mean: float
    pdf_std: float
    window: int
    numerator_mode: str
    cdf_stats: np.ndarray
    pdf_stats: np.ndarray

    def __post_init__(self) -> None:
        for name in ("cdf_stats", "pdf_stats"):
            getattr(self, name).setflags(write=False)
        if not 0.0 <= self.cdf_mean <= 1.0:
            raise ValueError("cdf_mean must lie in [0, 1]")
        if self.pdf_mean < 0 or self.cdf_std < 0 or self.pdf_std < 0:
            raise ValueError("density estimates must be non-negative")

    @property
    def skipped(self) -> int:
        """Replications whose PDF statistic was dropped for zero spread."""
        return int(np.count_nonzero(np.isnan(self.pdf_stats)))


def _spread(values: np.ndarray) -> float:
    return float(values.std(ddof=1)) if values.size > 1 else 0.0


def estimate_density(
    test: FRF,
    frf_set: FRFSet,
    grid: FrequencyGrid,
    cfg: BootstrapConfig,
    metric="squared",
    numerator_mode: str = "code-compatible",
    streams: IndexStreams | None = None,
) -> DensityEstimate:
    """Estimate CDF and PDF of the test sample's distance from the mean.

    Per replication b (stream key b): resample the set, compute the
    replicate mean, sort the resampled members' distances to it, and rank
    the test distance as the first position exceeding it (N when none
    does).  The CDF statistic is rank/N.  The PDF statistic divides the
    rank-window mass by the distance increment across a window of
    half-width Ds = max(1, N // 20) around the rank, clamped to [1, N]
    while keeping its span; "code-compatible" keeps Ds in the numerator
    even at clamped edges, "index-span" uses the actual index span.

    Raises ZeroSpread when more than 20% of replications had a zero-width
    distance window.
    """
    if frf_set.n < 3:
        raise ValueError("need at least three samples to estimate a density")
    if numerator_mode not in NUMERATOR_MODES:
        raise ValueError(f"numerator_mode must be one of {NUMERATOR_MODES}")
    if streams is None:
        streams = IndexStreams(cfg.seed)
    distance = resolve_metric(metric)
    pirs = pir_matrix(frf_set, grid)
    x_test = pir_from_frf(test, grid).values
    n = pirs.shape[0]
    ds = max(1, n // 20)

    def run(start, stop):
        idx = np.stack(
            [resample_indices(n, streams.stream(b)) for b in range(start, stop)]
        )
        sub = pirs[idx]
        means = sub.mean(axis=1)
        es = np.sort(
            np.stack([distance(sub[j], means[j]) for j in range(len(idx))]),
            axis=1,
        )
        et = np.array([distance(x_test, means[j]) for j in range(len(idx))])

        # 1-based rank of the test distance among the sorted member
        # distances: first position strictly above it, N when none is.
        rank = np.minimum(np.sum(es <= et[:, None], axis=1) + 1, n)
        cdf_stats = rank / n

        i1 = rank - ds
        i2 = rank + ds
        low = i1 < 1
        i1 = np.where(low, 1, i1)
        i2 = np.where(low, 1 + ds, i2)
        high = i2 > n
        i2 = np.where(high, n, i2)
        i1 = np.where(high, n - ds, i1)
        rows = np.arange(len(idx))
        width = es[rows, i2 - 1] - es[rows, i1 - 1]
        numer = float(ds) if numerator_mode == "code-compatible" else (i2 - i1)
        with np.errstate(divide="ignore", invalid="ignore"):
            pdf_stats = np.where(width > 0.0, numer / (n * width), np.nan)
        return cdf_stats, pdf_stats

    parts = map_chunks(cfg.replications, run)
    cdf_stats = np.concatenate([p[0] for p in parts])
    pdf_stats = np.concatenate([p[1] for p in parts])

    kept = pdf_stats[~np.isnan(pdf_stats)]
    skipped = cfg.replications - kept.size
    if skipped > MAX_SKIPPED_FRACTION * cfg.replications:
        raise ZeroSpread(
            f"{skipped} of {cfg.replications} replications had a zero-width "
            "distance window"
        )
    return DensityEstimate(
        cdf_mean=float(cdf_stats.mean()),
        cdf_std=_spread(cdf_stats),
        pdf_mean=float(kept.mean()),
        pdf_std=_spread(kept),
        window=ds,
        numerator_mode=numerator_mode,
        cdf_stats=cdf_stats,
        pdf_stats=pdf_stats,
    )
