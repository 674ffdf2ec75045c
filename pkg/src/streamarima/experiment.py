"""Experiment harness: streaming runs, batched runs, sweeps and grids.

A run is specified once (model shape, optimizer, rate, trial seeds) and
replayed over a fixed data realization; trials differ only in the model's
coefficient initialization seed, so every curve is an average over inits
on identical data. Residual curves are absolute residuals, per sample or
per batch, and divergence (a non-finite residual) aborts a run cleanly
instead of poisoning downstream aggregation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .model import ArimaModel, ModelConfig
from .optimizers import OPTIMIZERS, Optimizer, make_optimizer
from .series import MicroBatch, TimeSeries, estimate_normalization

TAIL_FRACTION = 0.1


class DivergedError(RuntimeError):
    """Raised when a run produces a non-finite residual."""


@dataclass(frozen=True)
class RunSpec:
    """Everything needed to replay one experiment deterministically."""

    model: ModelConfig
    optimizer: str
    learning_rate: float
    ramp_length: float | None = None
    trial_seeds: tuple[int, ...] = (0,)

    def __post_init__(self):
        if self.optimizer not in OPTIMIZERS:
            known = ", ".join(sorted(OPTIMIZERS))
            raise ValueError(f"unknown optimizer {self.optimizer!r}, expected one of: {known}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if len(self.trial_seeds) == 0:
            raise ValueError("at least one trial seed is required")

    @property
    def trials(self) -> int:
        return len(self.trial_seeds)


@dataclass(frozen=True)
class ResidualCurve:
    """Trial-averaged |residual| against sample or batch position."""

    indices: np.ndarray
    mean: np.ndarray
    per_trial: np.ndarray
    granularity: str

    def __post_init__(self):
        if self.granularity not in ("sample", "batch"):
            raise ValueError(f"unknown granularity {self.granularity!r}")
        if self.indices.shape != self.mean.shape:
            raise ValueError("indices and mean lengths differ")
        if self.per_trial.shape[1:] != self.mean.shape:
            raise ValueError("per_trial width does not match curve length")


def _build_optimizer(spec: RunSpec) -> Optimizer:
    if spec.optimizer == "combined":
        if spec.ramp_length is None:
            raise ValueError("combined optimizer requires ramp_length")
        return make_optimizer(
            "combined", spec.model.mk, spec.learning_rate, ramp_length=spec.ramp_length
        )
    return make_optimizer(spec.optimizer, spec.model.mk, spec.learning_rate)


def _stream_trial(spec: RunSpec, values: np.ndarray, seed: int) -> np.ndarray:
    model = ArimaModel(replace(spec.model, seed=seed))
    opt = _build_optimizer(spec)
    out = np.empty(values.size - spec.model.window)
    pos = 0
    with np.errstate(all="ignore"):
        for x in values:
            pred = model.learn_step(opt, x)
            if pred is None:
                continue
            r = abs(pred.residual)
            if not math.isfinite(r):
                raise DivergedError(
                    f"run diverged at sample {model.samples_seen - 1} "
                    f"(optimizer {spec.optimizer}, rate {spec.learning_rate:g})"
                )
            out[pos] = r
            pos += 1
    return out


def run_stream(spec: RunSpec, series: TimeSeries) -> ResidualCurve:
    """Per-sample run over one contiguous series, averaged over trials."""
    if len(series) <= spec.model.window:
        raise ValueError(
            f"series of length {len(series)} is too short for mk + d = {spec.model.window}"
        )
    per_trial = np.stack([_stream_trial(spec, series.values, s) for s in spec.trial_seeds])
    indices = series.start_index + np.arange(spec.model.window, len(series))
    return ResidualCurve(
        indices=indices,
        mean=per_trial.mean(axis=0),
        per_trial=per_trial,
        granularity="sample",
    )


def batch_residual(predictions, actuals, mk: int, d: int) -> float:
    """Mean absolute residual over a batch's scored positions.

    The first mk + d positions of every batch are excluded from scoring,
    mirroring the warm-up cost of a cold model on its first batch.
    """
    predictions = np.asarray(predictions, dtype=np.float64)
    actuals = np.asarray(actuals, dtype=np.float64)
    if predictions.shape != actuals.shape or predictions.ndim != 1:
        raise ValueError("predictions and actuals must be 1-d arrays of equal length")
    window = mk + d
    if predictions.size <= window:
        raise ValueError(
            f"batch of {predictions.size} samples is too short to score with mk + d = {window}"
        )
    return float(np.mean(np.abs(predictions[window:] - actuals[window:])))


@dataclass(frozen=True)
class BatchRecord:
    """Per-batch trace of one batched trial, for audit and testing."""

    batch_index: int
    predictions: np.ndarray
    actuals: np.ndarray
    scored: np.ndarray


def _batched_trial(
    spec: RunSpec, batches: list[MicroBatch], seed: int, details: bool = False
) -> tuple[np.ndarray, list[BatchRecord]]:
    window = spec.model.window
    for b in batches:
        if len(b) <= window:
            raise ValueError(
                f"batch {b.batch_index} has {len(b)} samples, need more than mk + d = {window}"
            )
    model = ArimaModel(replace(spec.model, seed=seed))
    opt = _build_optimizer(spec)
    residuals = np.empty(len(batches))
    records = []
    with np.errstate(all="ignore"):
        for pos, batch in enumerate(batches):
            values = batch.samples.values
            preds = np.full(values.size, np.nan)
            scored = []
            for i, x in enumerate(values):
                pred = model.learn_step(opt, x)
                if pred is None:
                    continue
                preds[i] = pred.value
                if i >= window:
                    r = abs(pred.residual)
                    if not math.isfinite(r):
                        raise DivergedError(
                            f"run diverged in batch {pos} at offset {i} "
                            f"(optimizer {spec.optimizer}, rate {spec.learning_rate:g})"
                        )
                    scored.append(r)
            residuals[pos] = float(np.mean(scored))
            if details:
                records.append(
                    BatchRecord(
                        batch_index=pos,
                        predictions=preds,
                        actuals=values.copy(),
                        scored=np.asarray(scored),
                    )
                )
    return residuals, records


def run_batched(spec: RunSpec, batches: list[MicroBatch]) -> ResidualCurve:
    """Per-batch run; model and optimizer state persist across batches.

    Only the residual metric restarts at each batch boundary: the first
    mk + d positions of every batch are fed to the model but not scored.
    """
    per_trial = np.stack(
        [_batched_trial(spec, batches, s)[0] for s in spec.trial_seeds]
    )
    return ResidualCurve(
        indices=np.arange(len(batches)),
        mean=per_trial.mean(axis=0),
        per_trial=per_trial,
        granularity="batch",
    )


def run_batched_details(
    spec: RunSpec, batches: list[MicroBatch], seed: int
) -> list[BatchRecord]:
    """Single-trial batched run returning full per-batch traces."""
    return _batched_trial(spec, batches, seed, details=True)[1]


def run_data(spec: RunSpec, data) -> ResidualCurve:
    """Dispatch on data shape: a TimeSeries streams, a batch list runs batched."""
    if isinstance(data, TimeSeries):
        return run_stream(spec, data)
    return run_batched(spec, list(data))


def tail_mean(values, fraction: float = TAIL_FRACTION) -> float:
    """Mean over the trailing ``fraction`` of a curve (at least one point)."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("cannot take the tail of an empty curve")
    if not (0 < fraction <= 1):
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    k = max(1, math.ceil(fraction * values.size))
    return float(values[-k:].mean())


def window_mean(curve: ResidualCurve, lo: int, hi: int) -> float:
    """Mean of the averaged curve over positions in [lo, hi)."""
    mask = (curve.indices >= lo) & (curve.indices < hi)
    if not mask.any():
        raise ValueError(f"no curve points in window [{lo}, {hi})")
    return float(curve.mean[mask].mean())


def normalize_batches(batches: list[MicroBatch]) -> list[MicroBatch]:
    """Normalize every batch with parameters fitted on the first batch only.

    Freezing the map keeps later batches on a consistent scale without
    letting future data leak into earlier normalization.
    """
    if not batches:
        raise ValueError("no batches to normalize")
    params = estimate_normalization(batches[0].samples)
    return [
        MicroBatch(
            samples=TimeSeries(params.apply(b.samples.values), b.samples.start_index),
            batch_index=b.batch_index,
        )
        for b in batches
    ]


def compare_optimizers(
    spec: RunSpec, data, optimizers: tuple[str, ...]
) -> dict[str, ResidualCurve]:
    """Run several optimizers over the same data and seeds."""
    curves = {}
    for name in optimizers:
        curves[name] = run_data(replace(spec, optimizer=name), data)
    return curves


@dataclass(frozen=True)
class RateResult:
    rate: float
    tail: float
    diverged: bool


def grid_search(
    spec: RunSpec, data, rate_grid
) -> tuple[float, list[RateResult]]:
    """Pick the learning rate with the lowest tail-window mean residual.

    Diverged rates score infinity; ties go to the smaller rate; a grid
    where everything diverges is an error.
    """
    rates = [float(r) for r in rate_grid]
    if not rates:
        raise ValueError("rate grid is empty")
    if any(r <= 0 for r in rates):
        raise ValueError("learning rates must be > 0")
    results = []
    for rate in rates:
        candidate = replace(spec, learning_rate=rate)
        try:
            curve = run_data(candidate, data)
            results.append(RateResult(rate, tail_mean(curve.mean), False))
        except DivergedError:
            results.append(RateResult(rate, float("inf"), True))
    stable = [r for r in results if not r.diverged]
    if not stable:
        raise ValueError("no stable rate: every candidate in the grid diverged")
    best = min(stable, key=lambda r: (r.tail, r.rate))
    return best.rate, results


@dataclass(frozen=True)
class SweepEntry:
    label: str
    final_residual: float
    diverged: bool
    curve: ResidualCurve | None = field(repr=False, default=None)


def sweep_lambda(
    spec: RunSpec,
    data,
    lambda_grid,
    baselines: tuple[str, ...] = ("amsgrad", "basic", "momentum"),
) -> list[SweepEntry]:
    """Run the combined optimizer across ramp lengths, plus fixed baselines.

    Every entry reports the tail-window mean of its averaged curve; a
    diverged run is kept in the summary with an infinite residual.
    """
    ramps = [float(r) for r in lambda_grid]
    if not ramps:
        raise ValueError("ramp grid is empty")
    entries = []
    for ramp in ramps:
        candidate = replace(spec, optimizer="combined", ramp_length=ramp)
        entries.append(_sweep_entry(f"combined_lambda_{ramp:g}", candidate, data))
    for name in baselines:
        candidate = replace(spec, optimizer=name, ramp_length=None)
        entries.append(_sweep_entry(name, candidate, data))
    return entries


def _sweep_entry(label: str, spec: RunSpec, data) -> SweepEntry:
    try:
        curve = run_data(spec, data)
        return SweepEntry(label, tail_mean(curve.mean), False, curve)
    except DivergedError:
        return SweepEntry(label, float("inf"), True, None)
