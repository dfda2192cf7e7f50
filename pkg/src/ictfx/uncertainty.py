"""Uncertainty quantification around the deterministic effect engine.

Reproducibility contract: every randomized routine takes an explicit
``RandomSeed``; the same seed yields bit-identical output regardless of
worker count. Monte Carlo draws happen in fixed-size blocks, each block
seeded independently from (seed, stream, block index), so the sample
vector never depends on how blocks were scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .engine import case_study_average, per_usage_effect, scenario_effect
from .model import (
    AssessmentScenario,
    CaseStudy,
    DiscreteWeighted,
    DistributionShape,
    ParameterDistribution,
    PointValue,
    TriangularRange,
    UncertaintyClass,
    UniformRange,
)

_BLOCK = 1024
_MAX_SEED = 2**64


@dataclass(frozen=True)
class RandomSeed:
    """Root entropy plus a stream id separating independent consumers
    (e.g. bootstrap vs Monte Carlo) of the same user-facing seed."""

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < _MAX_SEED:
            raise ValueError(f"seed must lie in [0, 2**64), got {self.seed}")

    def generator(self, *branch: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(
            entropy=self.seed, spawn_key=(self.stream_id, *branch)
        )
        return np.random.default_rng(sequence)


@dataclass(frozen=True)
class BootstrapSummary:
    point: float
    lo: float
    hi: float
    confidence: float
    resamples: int


def bootstrap_interval(
    case_study: CaseStudy,
    confidence: float = 0.95,
    resamples: int = 2000,
    seed: RandomSeed | None = None,
) -> BootstrapSummary:
    """Percentile interval for the per-usage average effect, from
    resampling the modified instances with replacement.

    The point estimate is the plain average; degenerate (constant)
    instance data collapses the interval onto it.
    """
    if len(case_study.modified) < 2:
        raise ValueError("bootstrap needs at least two modified instances")
    if resamples < 100:
        raise ValueError(f"resamples must be >= 100, got {resamples}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    if seed is None:
        seed = RandomSeed(0)
    effects = np.array([per_usage_effect(inst) for inst in case_study.modified])
    n = effects.size
    rng = seed.generator()
    indices = rng.integers(0, n, size=(resamples, n))
    means = effects[indices].mean(axis=1)
    alpha = (1.0 - confidence) / 2.0
    lo, hi = np.quantile(means, [alpha, 1.0 - alpha])
    return BootstrapSummary(
        point=case_study_average(case_study),
        lo=float(lo),
        hi=float(hi),
        confidence=confidence,
        resamples=resamples,
    )


def distribution_central(shape: DistributionShape) -> float:
    """Central evaluation point: the point value, range midpoint,
    triangular mode, or weighted mean of discrete outcomes."""
    if isinstance(shape, PointValue):
        return shape.value
    if isinstance(shape, UniformRange):
        return 0.5 * (shape.lo + shape.hi)
    if isinstance(shape, TriangularRange):
        return shape.mode
    if isinstance(shape, DiscreteWeighted):
        return math.fsum(v * w for v, w in zip(shape.values, shape.weights))
    raise TypeError(f"unknown distribution shape {shape!r}")


def distribution_bounds(shape: DistributionShape) -> tuple[float, float]:
    """Finite (lo, hi) bounds used by the one-at-a-time sweeps."""
    if isinstance(shape, PointValue):
        bounds = (shape.value, shape.value)
    elif isinstance(shape, (UniformRange, TriangularRange)):
        bounds = (shape.lo, shape.hi)
    elif isinstance(shape, DiscreteWeighted):
        if not shape.values:
            raise ValueError("discrete distribution has no outcomes")
        bounds = (min(shape.values), max(shape.values))
    else:
        raise TypeError(f"unknown distribution shape {shape!r}")
    if not all(math.isfinite(b) for b in bounds):
        raise ValueError(f"distribution lacks finite bounds: {bounds}")
    return bounds


def _sample_shape(
    rng: np.random.Generator, shape: DistributionShape, count: int
) -> np.ndarray:
    if isinstance(shape, PointValue):
        return np.full(count, shape.value)
    if isinstance(shape, UniformRange):
        if shape.lo == shape.hi:
            return np.full(count, shape.lo)
        return rng.uniform(shape.lo, shape.hi, count)
    if isinstance(shape, TriangularRange):
        if shape.lo == shape.hi:
            return np.full(count, shape.lo)
        return rng.triangular(shape.lo, shape.mode, shape.hi, count)
    if isinstance(shape, DiscreteWeighted):
        weights = np.asarray(shape.weights, dtype=float)
        weights = weights / weights.sum()
        return rng.choice(np.asarray(shape.values, dtype=float), size=count, p=weights)
    raise TypeError(f"unknown distribution shape {shape!r}")


def _setter(scenario: AssessmentScenario, target: str):
    """Return a function applying a drawn value for ``target`` to a
    scenario copy. Unknown or inapplicable paths raise immediately."""
    if target == "coefficient.k":
        return lambda sc, v: replace(sc, coefficient=replace(sc.coefficient, k=float(v)))
    if target == "partition.modified_count":
        return lambda sc, v: replace(
            sc, partition=replace(sc.partition, modified_count=int(round(v)))
        )
    if target == "rebound_share":
        if scenario.rebound_model is None:
            raise ValueError("'rebound_share' needs a rebound-share model on the scenario")
        return lambda sc, v: replace(
            sc, rebound_model=replace(sc.rebound_model, rebound_share=float(v))
        )
    if target == "rebound_model.usage_total":
        if scenario.rebound_model is None:
            raise ValueError(
                "'rebound_model.usage_total' needs a rebound-share model on the scenario"
            )
        return lambda sc, v: replace(
            sc, rebound_model=replace(sc.rebound_model, usage_total=float(v))
        )
    if target == "baseline.growth_rate":
        if scenario.baseline is None:
            raise ValueError("'baseline.growth_rate' needs a baseline model")
        return lambda sc, v: replace(sc, baseline=replace(sc.baseline, growth_rate=float(v)))
    if target == "baseline.efficiency_rate":
        if scenario.baseline is None:
            raise ValueError("'baseline.efficiency_rate' needs a baseline model")
        return lambda sc, v: replace(
            sc, baseline=replace(sc.baseline, efficiency_rate=float(v))
        )
    if target == "model_average":
        if scenario.model_average is None:
            raise ValueError("'model_average' is not set on this scenario")
        return lambda sc, v: replace(sc, model_average=float(v))
    raise ValueError(f"unknown parameter path {target!r}")


def apply_parameter(scenario: AssessmentScenario, target: str, value: float) -> AssessmentScenario:
    """Return a scenario copy with one parameter replaced by ``value``."""
    return _setter(scenario, target)(scenario, value)


@dataclass(frozen=True)
class MonteCarloSummary:
    samples: int
    mean: float
    sd: float
    q05: float
    q50: float
    q95: float
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]
    data_targets: tuple[str, ...]
    future_targets: tuple[str, ...]
    untagged_targets: tuple[str, ...]
    sample_values: tuple[float, ...] | None = None


def _classify_targets(
    scenario: AssessmentScenario, dists: tuple[ParameterDistribution, ...]
) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    data: list[str] = []
    future: list[str] = []
    untagged: list[str] = []
    for dist in dists:
        klass = dist.uncertainty_class or scenario.perspective.class_of(dist.target)
        if klass is UncertaintyClass.DATA:
            data.append(dist.target)
        elif klass is UncertaintyClass.FUTURE:
            future.append(dist.target)
        else:
            untagged.append(dist.target)
    return tuple(data), tuple(future), tuple(untagged)


def monte_carlo_assess(
    scenario: AssessmentScenario,
    samples: int = 10_000,
    seed: RandomSeed | None = None,
    workers: int = 1,
    keep_samples: bool = False,
    histogram_bins: int = 30,
) -> MonteCarloSummary:
    """Propagate the scenario's parameter distributions through its
    estimation path and summarize the resulting effect distribution.

    The sample vector is a pure function of (seed, samples): block ``b``
    draws from an RNG keyed by (seed, stream, b) with parameters sampled
    in lexicographic target order, so worker count never changes any
    reported digit. Parameters tagged as measurement noise and as
    forecast doubt are listed separately in the summary; the arithmetic
    treats them identically.
    """
    dists = tuple(sorted(scenario.distributions, key=lambda d: d.target))
    if not dists:
        raise ValueError("scenario has no parameter distributions")
    if samples < 1000:
        raise ValueError(f"samples must be >= 1000, got {samples}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if seed is None:
        seed = RandomSeed(0)
    setters = [(_setter(scenario, d.target), d.shape) for d in dists]

    def eval_block(block: int) -> np.ndarray:
        start = block * _BLOCK
        count = min(_BLOCK, samples - start)
        rng = seed.generator(block)
        draws = [_sample_shape(rng, shape, count) for _, shape in setters]
        out = np.empty(count)
        for i in range(count):
            current = scenario
            for (setter, _), column in zip(setters, draws):
                current = setter(current, column[i])
            out[i] = scenario_effect(current).effect
        return out

    blocks = range((samples + _BLOCK - 1) // _BLOCK)
    if workers == 1:
        parts = [eval_block(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(eval_block, blocks))
    values = np.concatenate(parts)

    mean = math.fsum(values) / samples
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (samples - 1))
    q05, q50, q95 = np.quantile(values, [0.05, 0.5, 0.95])
    counts, edges = np.histogram(values, bins=histogram_bins)
    data, future, untagged = _classify_targets(scenario, dists)
    return MonteCarloSummary(
        samples=samples,
        mean=mean,
        sd=sd,
        q05=float(q05),
        q50=float(q50),
        q95=float(q95),
        histogram_edges=tuple(float(e) for e in edges),
        histogram_counts=tuple(int(c) for c in counts),
        data_targets=data,
        future_targets=future,
        untagged_targets=untagged,
        sample_values=tuple(float(v) for v in values) if keep_samples else None,
    )


@dataclass(frozen=True)
class TornadoRow:
    target: str
    low_value: float
    high_value: float
    effect_low: float
    effect_high: float
    swing: float


@dataclass(frozen=True)
class TornadoSummary:
    base_effect: float
    rows: tuple[TornadoRow, ...]


def sensitivity_tornado(
    scenario: AssessmentScenario,
    parameters: tuple[ParameterDistribution, ...] | None = None,
) -> TornadoSummary:
    """One-at-a-time sweep of each distributed parameter between its
    bounds, all others held at their central values.

    Rows are ranked by absolute swing, ties broken lexicographically by
    path; degenerate (point) parameters appear with zero swing at the
    bottom. Deterministic, no sampling involved.
    """
    dists = parameters if parameters is not None else scenario.distributions
    if not dists:
        raise ValueError("no parameters to sweep")
    base = scenario
    for dist in dists:
        base = apply_parameter(base, dist.target, distribution_central(dist.shape))
    base_effect = scenario_effect(base).effect
    rows: list[TornadoRow] = []
    for dist in dists:
        lo, hi = distribution_bounds(dist.shape)
        effect_low = scenario_effect(apply_parameter(base, dist.target, lo)).effect
        effect_high = scenario_effect(apply_parameter(base, dist.target, hi)).effect
        rows.append(
            TornadoRow(
                target=dist.target,
                low_value=lo,
                high_value=hi,
                effect_low=effect_low,
                effect_high=effect_high,
                swing=effect_high - effect_low,
            )
        )
    rows.sort(key=lambda r: (-abs(r.swing), r.target))
    return TornadoSummary(base_effect=base_effect, rows=tuple(rows))


def calibrate_k(case_average: float, population_average: float) -> float:
    """Extrapolation coefficient that makes a case-study per-usage
    average reproduce an independently known population average.

    Both averages must be nonzero and share a sign, otherwise no
    positive coefficient exists.
    """
    if case_average == 0:
        raise ValueError("case-study average is zero; no coefficient reproduces it")
    k = population_average / case_average
    if k <= 0:
        raise ValueError(
            "case-study and population averages differ in sign; "
            "no positive coefficient reproduces the population average"
        )
    return k
