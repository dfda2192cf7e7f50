"""Effect arithmetic for service-induced substitutions and optimizations.

All functions take and return kg CO2e per assessment period. Results are
signed: positive means emissions were avoided, negative means the service
added emissions. Nothing here clamps, and nothing here reads baselines;
counterfactual inputs arrive as explicit arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .model import (
    AssessmentScenario,
    CaseStudy,
    EstimationPath,
    ExtrapolationCoefficient,
    InstanceFootprint,
    PerspectiveKind,
)


def _require_non_negative(**named: float) -> None:
    for name, value in named.items():
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value}")


def induced_effect_basic(activity: float, service: float) -> float:
    """Net effect of fully replacing a reference activity with a service."""
    _require_non_negative(activity=activity, service=service)
    return activity - service


def induced_effect_partition(
    activity_modified: float,
    activity_unaffected: float,
    optimized_modified: float,
    service_modified: float,
) -> float:
    """Net effect over a usage population split into modified and
    unaffected sets.

    The unaffected activity appears on both sides of the comparison, so
    the result is computed in the reduced form and is exactly invariant
    under any change of ``activity_unaffected``.
    """
    _require_non_negative(
        activity_modified=activity_modified,
        activity_unaffected=activity_unaffected,
        optimized_modified=optimized_modified,
        service_modified=service_modified,
    )
    return activity_modified - (optimized_modified + service_modified)


def per_usage_effect(instance: InstanceFootprint) -> float:
    """Effect of one modified usage: displaced activity minus what the
    change cost (residual activity plus the service itself)."""
    _require_non_negative(
        activity=instance.activity,
        optimized=instance.optimized,
        service=instance.service,
    )
    return instance.activity - (instance.optimized + instance.service)


def _require_modified(case_study: CaseStudy) -> None:
    if not case_study.modified:
        raise ValueError("case study has no modified instances")


def case_study_effect(case_study: CaseStudy) -> float:
    """Total effect over the study's modified instances."""
    _require_modified(case_study)
    return math.fsum(per_usage_effect(inst) for inst in case_study.modified)


def case_study_average(case_study: CaseStudy) -> float:
    """Average per-usage effect over the study's modified instances."""
    _require_modified(case_study)
    return case_study_effect(case_study) / len(case_study.modified)


def case_study_effect_with_rebound(case_study: CaseStudy) -> float:
    """Study-level effect charging service and residual-activity burdens
    for rebound usages against the modified instances' savings.

    Rebound instances displaced nothing, so they contribute burden only;
    with no rebound instances this agrees with ``case_study_effect`` up
    to summation order.
    """
    _require_modified(case_study)
    for inst in case_study.modified:
        _require_non_negative(
            activity=inst.activity, optimized=inst.optimized, service=inst.service
        )
    for inst in case_study.rebound:
        _require_non_negative(optimized=inst.optimized, service=inst.service)
    displaced = math.fsum(inst.activity for inst in case_study.modified)
    burden = math.fsum(
        inst.service + inst.optimized for inst in case_study.modified
    ) + math.fsum(inst.service + inst.optimized for inst in case_study.rebound)
    return displaced - burden


def model_based_effect(per_usage_average: float, modified_count: float) -> float:
    """Scale a modeled per-usage average effect to a modified-usage count."""
    if modified_count < 0:
        raise ValueError(f"modified_count must be non-negative, got {modified_count}")
    return per_usage_average * modified_count


def extrapolate(
    per_usage_average: float,
    target_count: float,
    coefficient: ExtrapolationCoefficient,
) -> float:
    """Scale a case-study per-usage average to a target population,
    dampened by the extrapolation coefficient.

    ``target_count`` may be fractional when it derives from a share-based
    split of total usage.
    """
    if not coefficient.k > 0:
        raise ValueError(f"extrapolation coefficient must be > 0, got {coefficient.k}")
    if target_count < 0:
        raise ValueError(f"target_count must be non-negative, got {target_count}")
    return coefficient.k * per_usage_average * target_count


def effect_with_rebound(
    activity_modified: float,
    optimized_all_usages: float,
    service_all_usages: float,
) -> float:
    """Population effect when part of the service usage displaced nothing.

    Savings accrue only from the modified set, while service and residual
    activity burdens accrue over every service usage, rebound included.
    """
    _require_non_negative(
        activity_modified=activity_modified,
        optimized_all_usages=optimized_all_usages,
        service_all_usages=service_all_usages,
    )
    return activity_modified - (optimized_all_usages + service_all_usages)


def naive_effect_and_overstatement(
    activity_all_usages: float,
    activity_rebound: float,
    optimized_all_usages: float,
    service_all_usages: float,
) -> tuple[float, float, float]:
    """Decompose the error of crediting every service usage with a
    displaced activity.

    ``activity_rebound`` is the counterfactual footprint wrongly
    attributed to rebound usages. Returns (naive, correct, overstatement);
    the overstatement is exactly the attributed rebound footprint and the
    correct effect is the naive effect minus it.
    """
    _require_non_negative(
        activity_all_usages=activity_all_usages,
        activity_rebound=activity_rebound,
        optimized_all_usages=optimized_all_usages,
        service_all_usages=service_all_usages,
    )
    if activity_rebound > activity_all_usages:
        raise ValueError(
            "rebound-attributed activity footprint exceeds the total "
            f"({activity_rebound} > {activity_all_usages})"
        )
    naive = activity_all_usages - (optimized_all_usages + service_all_usages)
    overstatement = activity_rebound
    correct = naive - overstatement
    return naive, correct, overstatement


def full_pipeline(
    case_study: CaseStudy,
    target_count: float,
    coefficient: ExtrapolationCoefficient,
) -> float:
    """Extrapolate a rebound-aware case-study effect to a target count.

    With no rebound instances and a coefficient of 1 this reduces to
    scaling the plain per-usage average by the target count.
    """
    _require_modified(case_study)
    if not coefficient.k > 0:
        raise ValueError(f"extrapolation coefficient must be > 0, got {coefficient.k}")
    if target_count < 0:
        raise ValueError(f"target_count must be non-negative, got {target_count}")
    total = case_study_effect_with_rebound(case_study)
    return coefficient.k * total * target_count / len(case_study.modified)


@dataclass(frozen=True)
class ScenarioEffect:
    """Headline numbers produced by one scenario evaluation, kg CO2e."""

    effect: float
    naive_effect: float | None = None
    overstatement: float | None = None
    per_usage_average: float | None = None


@lru_cache(maxsize=256)
def _case_study_totals(case_study: CaseStudy) -> tuple[float, int]:
    """Memoized (rebound-aware total, modified count). Case studies are
    frozen, so repeated Monte Carlo evaluation reuses one pass."""
    return case_study_effect_with_rebound(case_study), len(case_study.modified)


def _case_study_scenario_effect(scenario: AssessmentScenario) -> ScenarioEffect:
    assert scenario.case_study is not None
    total, n = _case_study_totals(scenario.case_study)
    average = total / n
    if scenario.perspective.kind is PerspectiveKind.CASE_STUDY:
        return ScenarioEffect(effect=total, per_usage_average=average)
    coeff = scenario.coefficient
    rm = scenario.rebound_model
    if rm is not None:
        # Observed usage splits into a truly modified share and a rebound
        # share that displaced nothing; crediting all of it is the naive
        # reading and the gap is reported as overstatement.
        modified = (1.0 - rm.rebound_share) * rm.usage_total
        effect = extrapolate(average, modified, coeff)
        naive = extrapolate(average, rm.usage_total, coeff)
        return ScenarioEffect(
            effect=effect,
            naive_effect=naive,
            overstatement=naive - effect,
            per_usage_average=average,
        )
    count = scenario.partition.modified_count
    if count is None:
        raise ValueError("extrapolating a case study needs a target modified-usage count")
    effect = extrapolate(average, count, coeff)
    return ScenarioEffect(effect=effect, per_usage_average=average)


def _aggregate_scenario_effect(scenario: AssessmentScenario) -> ScenarioEffect:
    rm = scenario.rebound_model
    if rm is not None:
        if rm.per_usage_activity is None or rm.per_usage_service is None:
            raise ValueError(
                "aggregate path driven by a rebound-share model needs "
                "per-usage activity and service footprints"
            )
        optimized_per_usage = rm.per_usage_optimized or 0.0
        activity_all = rm.usage_total * rm.per_usage_activity
        activity_rebound = rm.rebound_share * activity_all
        optimized_all = rm.usage_total * optimized_per_usage
        service_all = rm.usage_total * rm.per_usage_service
        naive, _, overstatement = naive_effect_and_overstatement(
            activity_all, activity_rebound, optimized_all, service_all
        )
        effect = effect_with_rebound(
            activity_all - activity_rebound, optimized_all, service_all
        )
        return ScenarioEffect(effect=effect, naive_effect=naive, overstatement=overstatement)
    p = scenario.partition
    if p.activity_modified is None or p.service_all_usages is None:
        raise ValueError(
            "aggregate path needs the modified-set activity footprint and the "
            "service footprint over all usages"
        )
    optimized_all = p.optimized_all_usages or 0.0
    effect = effect_with_rebound(p.activity_modified, optimized_all, p.service_all_usages)
    if p.activity_rebound is None:
        return ScenarioEffect(effect=effect)
    naive, _, overstatement = naive_effect_and_overstatement(
        p.activity_modified + p.activity_rebound,
        p.activity_rebound,
        optimized_all,
        p.service_all_usages,
    )
    return ScenarioEffect(effect=effect, naive_effect=naive, overstatement=overstatement)


def scenario_effect(scenario: AssessmentScenario) -> ScenarioEffect:
    """Evaluate the scenario's designated estimation path.

    Deterministic: distributions and baselines are ignored here, only the
    central parameter values enter.
    """
    path = scenario.estimation_path
    if path is EstimationPath.CASE_STUDY:
        if scenario.case_study is None:
            raise ValueError("case-study path without case-study data")
        return _case_study_scenario_effect(scenario)
    if path is EstimationPath.MODEL_AVERAGE:
        if scenario.model_average is None:
            raise ValueError("model-average path without a per-usage average")
        if scenario.partition.modified_count is None:
            raise ValueError("model-average path without a modified-usage count")
        effect = model_based_effect(scenario.model_average, scenario.partition.modified_count)
        return ScenarioEffect(effect=effect, per_usage_average=scenario.model_average)
    return _aggregate_scenario_effect(scenario)
