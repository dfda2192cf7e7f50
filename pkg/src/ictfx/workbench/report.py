"""Assessment report assembly.

``run_assessment`` wires the deterministic engine, the bootstrap, the
Monte Carlo propagation, the baseline trajectory and the audit into one
report. Reports carry their own provenance (document echo, seed, option
values), so any report can be reproduced bit-for-bit from itself.
"""

from __future__ import annotations

import math
import os
import secrets
from dataclasses import dataclass, field
from typing import Any

from .. import __version__
from ..audit import USAGE_SPLIT_CHECKLIST, audit_scenario
from ..baseline import TrajectoryPoint, baseline_trajectory
from ..engine import scenario_effect
from ..model import (
    AssessmentResult,
    AssessmentScenario,
    EffectInterval,
    EstimationPath,
    PerspectiveKind,
    ValidationIssue,
    validate_scenario,
)
from ..uncertainty import (
    BootstrapSummary,
    MonteCarloSummary,
    RandomSeed,
    TornadoSummary,
    bootstrap_interval,
    monte_carlo_assess,
    sensitivity_tornado,
)
from .serialization import DocumentError, ScenarioDocument, document_to_dict

ENV_DEFAULT_SEED = "ICTFX_DEFAULT_SEED"

# Stream ids keep the bootstrap and the Monte Carlo draw streams of one
# user-facing seed independent of each other.
_BOOTSTRAP_STREAM = 1
_MONTE_CARLO_STREAM = 2


@dataclass(frozen=True)
class AssessmentOptions:
    seed: int | None = None
    confidence: float = 0.95
    bootstrap_resamples: int = 2000
    monte_carlo_samples: int = 10_000
    workers: int = 1
    horizon: int = 10
    volunteer_k_threshold: float = 0.5


def resolve_seed(seed: int | None) -> int:
    """Explicit seed, else the environment default, else fresh entropy.

    Whatever is chosen ends up echoed in the report, so a run without an
    explicit seed is still reproducible afterwards.
    """
    if seed is not None:
        return seed
    env = os.environ.get(ENV_DEFAULT_SEED)
    if env is not None:
        return int(env)
    return secrets.randbits(64)


@dataclass(frozen=True)
class AssessmentReport:
    result: AssessmentResult
    validation_warnings: tuple[ValidationIssue, ...]
    bootstrap: BootstrapSummary | None
    monte_carlo: MonteCarloSummary | None
    baseline_points: tuple[TrajectoryPoint, ...]
    checklist: tuple[str, ...]
    seed: int
    options: AssessmentOptions
    document: dict = field(default_factory=dict)


def _require_valid(scenario: AssessmentScenario) -> tuple[ValidationIssue, ...]:
    report = validate_scenario(scenario)
    if not report.valid:
        first = report.errors()[0]
        raise DocumentError(first.code, first.path, first.message, issues=report.issues)
    return report.warnings()


def _bootstrap_scale(scenario: AssessmentScenario) -> tuple[float, float]:
    """(shift, scale) mapping the bootstrap per-usage interval onto the
    headline effect. The map is affine and increasing, so it commutes
    with the percentile endpoints."""
    cs = scenario.case_study
    assert cs is not None
    n = len(cs.modified)
    rebound_burden = math.fsum(r.service + r.optimized for r in cs.rebound)
    shift = -rebound_burden / n
    if scenario.perspective.kind is PerspectiveKind.CASE_STUDY:
        return shift, float(n)
    rm = scenario.rebound_model
    if rm is not None:
        return shift, scenario.coefficient.k * (1.0 - rm.rebound_share) * rm.usage_total
    count = scenario.partition.modified_count or 0
    return shift, scenario.coefficient.k * count

def run_assessment(
    document: ScenarioDocument, options: AssessmentOptions | None = None
) -> AssessmentReport:
    """Assess one scenario document.

    Raises ``DocumentError`` when the scenario fails validation with
    error severity; warnings are carried in the report instead.
    """
    options = options or AssessmentOptions()
    scenario = document.scenario
    warnings = _require_valid(scenario)
    seed = resolve_seed(options.seed)

    breakdown = scenario_effect(scenario)

    bootstrap: BootstrapSummary | None = None
    interval: EffectInterval | None = None
    if (
        scenario.estimation_path is EstimationPath.CASE_STUDY
        and scenario.case_study is not None
        and len(scenario.case_study.modified) >= 2
    ):
        bootstrap = bootstrap_interval(
            scenario.case_study,
            confidence=options.confidence,
            resamples=options.bootstrap_resamples,
            seed=RandomSeed(seed, _BOOTSTRAP_STREAM),
        )
        shift, scale = _bootstrap_scale(scenario)
        interval = EffectInterval(
            lo=scale * (bootstrap.lo + shift),
            hi=scale * (bootstrap.hi + shift),
            confidence=options.confidence,
            method="bootstrap",
        )

    monte_carlo: MonteCarloSummary | None = None
    if scenario.distributions:
        monte_carlo = monte_carlo_assess(
            scenario,
            samples=options.monte_carlo_samples,
            seed=RandomSeed(seed, _MONTE_CARLO_STREAM),
            workers=options.workers,
        )
        if interval is None:
            interval = EffectInterval(
                lo=monte_carlo.q05,
                hi=monte_carlo.q95,
                confidence=0.90,
                method="monte_carlo",
            )
    if interval is None:
        interval = EffectInterval(
            lo=breakdown.effect, hi=breakdown.effect, confidence=0.0, method="none"
        )

    preliminary = AssessmentResult(
        effect=breakdown.effect,
        interval=interval,
        naive_effect=breakdown.naive_effect,
        overstatement=breakdown.overstatement,
        per_usage_average=breakdown.per_usage_average,
    )
    flags = audit_scenario(
        scenario, preliminary, volunteer_k_threshold=options.volunteer_k_threshold
    )
    result = AssessmentResult(
        effect=preliminary.effect,
        interval=preliminary.interval,
        naive_effect=preliminary.naive_effect,
        overstatement=preliminary.overstatement,
        per_usage_average=preliminary.per_usage_average,
        audit_flags=flags,
    )

    baseline_points: tuple[TrajectoryPoint, ...] = ()
    if scenario.baseline is not None:
        horizon = max(options.horizon, len(scenario.baseline.with_service) - 1)
        baseline_points = baseline_trajectory(scenario.baseline, horizon)

    return AssessmentReport(
        result=result,
        validation_warnings=warnings,
        bootstrap=bootstrap,
        monte_carlo=monte_carlo,
        baseline_points=baseline_points,
        checklist=USAGE_SPLIT_CHECKLIST,
        seed=seed,
        options=options,
        document=document_to_dict(document),
    )


def _issue_dicts(issues: tuple[ValidationIssue, ...]) -> list[dict[str, Any]]:
    return [
        {
            "code": i.code,
            "path": i.path,
            "message": i.message,
            "severity": i.severity.value,
        }
        for i in issues
    ]


def _trajectory_dicts(points: tuple[TrajectoryPoint, ...]) -> list[dict[str, Any]]:
    out = []
    for p in points:
        row: dict[str, Any] = {
            "period": p.period,
            "baseline_kg": p.baseline,
            "baseline_lo_kg": p.baseline_lo,
            "baseline_hi_kg": p.baseline_hi,
            "with_service_kg": p.with_service,
            "effect_kg": p.effect,
            "effect_lo_kg": p.effect_lo,
            "effect_hi_kg": p.effect_hi,
        }
        out.append(row)
    return out


def _monte_carlo_dict(summary: MonteCarloSummary) -> dict[str, Any]:
    return {
        "samples": summary.samples,
        "mean_kg": summary.mean,
        "sd_kg": summary.sd,
        "q05_kg": summary.q05,
        "q50_kg": summary.q50,
        "q95_kg": summary.q95,
        "histogram": {
            "edges_kg": list(summary.histogram_edges),
            "counts": list(summary.histogram_counts),
        },
        "data_uncertainty_targets": list(summary.data_targets),
        "future_uncertainty_targets": list(summary.future_targets),
        "untagged_targets": list(summary.untagged_targets),
    }


def report_to_dict(report: AssessmentReport) -> dict[str, Any]:
    """Machine form of a report. Stable shape: optional sections are
    null, never missing."""
    result = report.result
    options = report.options
    return {
        "schema_version": 1,
        "unit": "kgCO2e",
        "result": {
            "effect_kg": result.effect,
            "interval": {
                "lo_kg": result.interval.lo,
                "hi_kg": result.interval.hi,
                "confidence": result.interval.confidence,
                "method": result.interval.method,
            },
            "naive_effect_kg": result.naive_effect,
            "overstatement_kg": result.overstatement,
            "per_usage_average_kg": result.per_usage_average,
        },
        "audit_flags": [
            {
                "code": f.code,
                "severity": f.severity.value,
                "message": f.message,
                "rule_source": f.rule_source,
            }
            for f in result.audit_flags
        ],
        "validation_warnings": _issue_dicts(report.validation_warnings),
        "bootstrap": (
            None
            if report.bootstrap is None
            else {
                "point_kg": report.bootstrap.point,
                "lo_kg": report.bootstrap.lo,
                "hi_kg": report.bootstrap.hi,
                "confidence": report.bootstrap.confidence,
                "resamples": report.bootstrap.resamples,
            }
        ),
        "monte_carlo": (
            None if report.monte_carlo is None else _monte_carlo_dict(report.monte_carlo)
        ),
        "baseline_trajectory": (
            _trajectory_dicts(report.baseline_points) if report.baseline_points else None
        ),
        "usage_split_checklist": list(report.checklist),
        "provenance": {
            "engine_version": __version__,
            "seed": report.seed,
            "options": {
                "confidence": options.confidence,
                "bootstrap_resamples": options.bootstrap_resamples,
                "monte_carlo_samples": options.monte_carlo_samples,
                "workers": options.workers,
                "horizon": options.horizon,
                "volunteer_k_threshold": options.volunteer_k_threshold,
            },
            "document": report.document,
        },
    }


def options_from_provenance(provenance: dict[str, Any]) -> AssessmentOptions:
    """Rebuild the options object a report was produced with, seed
    included, for bit-identical reproduction."""
    opts = provenance["options"]
    return AssessmentOptions(
        seed=provenance["seed"],
        confidence=opts["confidence"],
        bootstrap_resamples=opts["bootstrap_resamples"],
        monte_carlo_samples=opts["monte_carlo_samples"],
        workers=opts["workers"],
        horizon=opts["horizon"],
        volunteer_k_threshold=opts["volunteer_k_threshold"],
    )


def _fmt(value: float | None) -> str:
    if value is None:
        return "-"
    return f"{value:,.3f}"


def render_human(report: AssessmentReport) -> str:
    """Terminal-friendly rendering of a report."""
    doc = report.document
    scenario = doc.get("scenario", {})
    result = report.result
    lines: list[str] = []
    title = scenario.get("service_id", "?")
    activity = scenario.get("activity_id", "?")
    lines.append(f"Induced-effect assessment: {title} vs {activity}")
    period = scenario.get("period", {})
    lines.append(
        f"  mechanism {scenario.get('mechanism', '?')}, perspective "
        f"{scenario.get('perspective', {}).get('kind', '?')}, per "
        f"{period.get('unit', '?')}"
        + (f" ({period['label']})" if period.get("label") else "")
    )
    lines.append("")
    direction = "avoided" if result.effect >= 0 else "ADDED"
    lines.append(
        f"Headline effect    : {_fmt(abs(result.effect))} kg CO2e {direction}"
        f" ({abs(result.effect) / 1000.0:,.3f} t)"
    )
    iv = result.interval
    if iv.method != "none":
        lines.append(
            f"Interval ({iv.method}) : [{_fmt(iv.lo)}, {_fmt(iv.hi)}] kg"
            f" at {iv.confidence:.0%}"
        )
    if result.naive_effect is not None:
        lines.append(
            f"Naive reading      : {_fmt(result.naive_effect)} kg"
            f"  (overstated by {_fmt(result.overstatement)} kg)"
        )
    if result.per_usage_average is not None:
        lines.append(f"Per-usage average  : {_fmt(result.per_usage_average)} kg")
    lines.append(f"Seed               : {report.seed}")

    if result.audit_flags:
        lines.append("")
        lines.append(f"Audit flags ({len(result.audit_flags)}):")
        for flag in result.audit_flags:
            lines.append(f"  [{flag.severity.value}] {flag.code}: {flag.message}")
    else:
        lines.append("")
        lines.append("Audit flags: none")

    if report.validation_warnings:
        lines.append("")
        lines.append("Validation warnings:")
        for issue in report.validation_warnings:
            lines.append(f"  [{issue.code}] {issue.path}: {issue.message}")

    if report.bootstrap is not None:
        b = report.bootstrap
        lines.append("")
        lines.append(
            f"Bootstrap ({b.resamples} resamples): per-usage average "
            f"{_fmt(b.point)} kg, {b.confidence:.0%} interval "
            f"[{_fmt(b.lo)}, {_fmt(b.hi)}] kg"
        )
    if report.monte_carlo is not None:
        mc = report.monte_carlo
        lines.append("")
        lines.append(
            f"Monte Carlo ({mc.samples} samples): mean {_fmt(mc.mean)} kg, "
            f"sd {_fmt(mc.sd)} kg, 5-95 % [{_fmt(mc.q05)}, {_fmt(mc.q95)}] kg"
        )
        if mc.future_targets:
            lines.append(
                "  forecast-doubt parameters: " + ", ".join(mc.future_targets)
            )
    if report.baseline_points:
        lines.append("")
        lines.append("Baseline trajectory (first rows):")
        lines.append("  period    baseline [lo, hi]            with-service   effect")
        for p in report.baseline_points[:6]:
            ws = _fmt(p.with_service) if p.with_service is not None else "-"
            ef = _fmt(p.effect) if p.effect is not None else "-"
            lines.append(
                f"  {p.period:>6}  {_fmt(p.baseline)} [{_fmt(p.baseline_lo)}, "
                f"{_fmt(p.baseline_hi)}]  {ws:>12}  {ef:>10}"
            )
        if len(report.baseline_points) > 6:
            lines.append(f"  ... {len(report.baseline_points) - 6} more")
    lines.append("")
    lines.append("Before trusting any modified/rebound split, check:")
    for item in report.checklist:
        lines.append(f"  - {item}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SensitivityReport:
    mode: str
    seed: int | None
    tornado: TornadoSummary | None
    monte_carlo: MonteCarloSummary | None
    document: dict


def run_sensitivity(
    document: ScenarioDocument,
    mode: str,
    options: AssessmentOptions | None = None,
) -> SensitivityReport:
    options = options or AssessmentOptions()
    scenario = document.scenario
    _require_valid(scenario)
    if mode == "tornado":
        return SensitivityReport(
            mode=mode,
            seed=None,
            tornado=sensitivity_tornado(scenario),
            monte_carlo=None,
            document=document_to_dict(document),
        )
    if mode == "montecarlo":
        seed = resolve_seed(options.seed)
        summary = monte_carlo_assess(
            scenario,
            samples=options.monte_carlo_samples,
            seed=RandomSeed(seed, _MONTE_CARLO_STREAM),
            workers=options.workers,
        )
        return SensitivityReport(
            mode=mode,
            seed=seed,
            tornado=None,
            monte_carlo=summary,
            document=document_to_dict(document),
        )
    raise ValueError(f"unknown sensitivity mode {mode!r}")


def sensitivity_to_dict(report: SensitivityReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema_version": 1,
        "mode": report.mode,
        "seed": report.seed,
        "provenance": {"engine_version": __version__, "document": report.document},
    }
    if report.tornado is not None:
        out["base_effect_kg"] = report.tornado.base_effect
        out["rows"] = [
            {
                "target": r.target,
                "low_value": r.low_value,
                "high_value": r.high_value,
                "effect_low_kg": r.effect_low,
                "effect_high_kg": r.effect_high,
                "swing_kg": r.swing,
            }
            for r in report.tornado.rows
        ]
    if report.monte_carlo is not None:
        out["monte_carlo"] = _monte_carlo_dict(report.monte_carlo)
    return out


def render_sensitivity_human(report: SensitivityReport) -> str:
    lines: list[str] = []
    if report.tornado is not None:
        t = report.tornado
        lines.append(f"Tornado around base effect {_fmt(t.base_effect)} kg CO2e:")
        lines.append("  rank  parameter                     swing          [low, high] effect")
        for rank, row in enumerate(t.rows, start=1):
            lines.append(
                f"  {rank:>4}  {row.target:<28}  {_fmt(abs(row.swing)):>12}  "
                f"[{_fmt(row.effect_low)}, {_fmt(row.effect_high)}]"
            )
    if report.monte_carlo is not None:
        mc = report.monte_carlo
        lines.append(f"Monte Carlo ({mc.samples} samples, seed {report.seed}):")
        lines.append(f"  mean {_fmt(mc.mean)} kg, sd {_fmt(mc.sd)} kg")
        lines.append(
            f"  quantiles: 5 % {_fmt(mc.q05)}, 50 % {_fmt(mc.q50)}, 95 % {_fmt(mc.q95)}"
        )
        if mc.data_targets:
            lines.append("  measurement-noise parameters: " + ", ".join(mc.data_targets))
        if mc.future_targets:
            lines.append("  forecast-doubt parameters: " + ", ".join(mc.future_targets))
        if mc.untagged_targets:
            lines.append("  untagged parameters: " + ", ".join(mc.untagged_targets))
    return "\n".join(lines) + "\n"


def run_baseline_table(document: ScenarioDocument, horizon: int) -> dict[str, Any]:
    """Baseline trajectory rows for the baseline CLI command and API
    endpoint."""
    scenario = document.scenario
    _require_valid(scenario)
    if scenario.baseline is None:
        raise DocumentError(
            "missing-field", "baseline", "document declares no baseline model"
        )
    points = baseline_trajectory(scenario.baseline, horizon)
    return {
        "schema_version": 1,
        "horizon": horizon,
        "unit": "kgCO2e",
        "points": _trajectory_dicts(points),
    }


def render_baseline_human(table: dict[str, Any]) -> str:
    lines = [f"Baseline trajectory over {table['horizon']} periods (kg CO2e):"]
    lines.append("  period      baseline            [lo, hi]          with-service      effect")
    for p in table["points"]:
        ws = _fmt(p["with_service_kg"]) if p["with_service_kg"] is not None else "-"
        ef = _fmt(p["effect_kg"]) if p["effect_kg"] is not None else "-"
        lines.append(
            f"  {p['period']:>6}  {_fmt(p['baseline_kg']):>14}  "
            f"[{_fmt(p['baseline_lo_kg'])}, {_fmt(p['baseline_hi_kg'])}]  "
            f"{ws:>12}  {ef:>10}"
        )
    return "\n".join(lines) + "\n"
