"""Methodological audit of assessment scenarios.

Each rule inspects declared evidence and flags a known way induced-effect
studies go wrong. Flags never block computation: an error-severity flag
means the headline number should not be trusted, not that it cannot be
produced. Output ordering is deterministic (severity, then code).
"""

from __future__ import annotations

from .model import (
    AssessmentResult,
    AssessmentScenario,
    AuditFlag,
    BaselineStrategy,
    CountBasis,
    PerspectiveKind,
    SamplingScheme,
    Severity,
    severity_rank,
    untagged_population_parameters,
)

REBOUND_IGNORED = "REBOUND_IGNORED"
VOLUNTEER_EXTRAPOLATION = "VOLUNTEER_EXTRAPOLATION"
NONRANDOM_K1 = "NONRANDOM_K1"
USAGE_INTENSITY_SOLE_BASIS = "USAGE_INTENSITY_SOLE_BASIS"
FIXED_BASELINE = "FIXED_BASELINE"
FUTURE_SHARE_REUSE = "FUTURE_SHARE_REUSE"
HAWTHORNE_EXPOSURE = "HAWTHORNE_EXPOSURE"
UNCERTAINTY_UNTAGGED = "UNCERTAINTY_UNTAGGED"
MAINSTREAM_SERVICE = "MAINSTREAM_SERVICE"

# Code -> (default severity, methodology topic the rule enforces).
RULE_REGISTRY: dict[str, tuple[Severity, str]] = {
    REBOUND_IGNORED: (Severity.ERROR, "rebound-accounting"),
    VOLUNTEER_EXTRAPOLATION: (Severity.ERROR, "volunteer-sampling"),
    NONRANDOM_K1: (Severity.WARNING, "sampling-representativeness"),
    USAGE_INTENSITY_SOLE_BASIS: (Severity.WARNING, "usage-split-evidence"),
    FIXED_BASELINE: (Severity.WARNING, "baseline-choice"),
    FUTURE_SHARE_REUSE: (Severity.WARNING, "share-reuse-over-time"),
    HAWTHORNE_EXPOSURE: (Severity.ADVISORY, "observation-bias"),
    UNCERTAINTY_UNTAGGED: (Severity.ADVISORY, "uncertainty-classification"),
    MAINSTREAM_SERVICE: (Severity.ADVISORY, "regime-level-technology"),
}

# Independent evidence sources an assessor should consult before claiming
# a particular modified/rebound split of service usage. Reported with
# every assessment as a checklist, not enforced.
USAGE_SPLIT_CHECKLIST = (
    "activity levels before the service existed",
    "price or cost changes of the reference activity",
    "comparison groups without access to the service",
    "independent demand indicators for the reference activity",
    "longer-term societal or demographic trends",
)

_FORWARD_PERSPECTIVES = (
    PerspectiveKind.PRESENT,
    PerspectiveKind.PREDICTED_PRESENT,
    PerspectiveKind.FUTURE,
)


def _flag(code: str, message: str, severity: Severity | None = None) -> AuditFlag:
    default_severity, source = RULE_REGISTRY[code]
    return AuditFlag(
        code=code,
        severity=severity or default_severity,
        message=message,
        rule_source=source,
    )


def _rebound_accounted(scenario: AssessmentScenario) -> bool:
    if scenario.partition.rebound_count not in (None, 0):
        return True
    if scenario.case_study is not None and scenario.case_study.rebound:
        return True
    rm = scenario.rebound_model
    if rm is not None and rm.rebound_share > 0:
        return True
    if scenario.partition.activity_rebound is not None:
        return True
    return False


def _check_rebound_ignored(scenario: AssessmentScenario) -> AuditFlag | None:
    p = scenario.partition
    if p.modified_count_basis is not CountBasis.OBSERVED_SERVICE_USAGE:
        return None
    if _rebound_accounted(scenario):
        return None
    justification = scenario.evidence.zero_rebound_justification
    if justification:
        return _flag(
            REBOUND_IGNORED,
            "every observed service usage is credited with a displaced activity; "
            "the zero-rebound claim rests on the stated justification only",
            Severity.WARNING,
        )
    return _flag(
        REBOUND_IGNORED,
        "the modified-usage count equals observed service usage and no rebound "
        "usages are accounted for or justified away",
    )


def _check_volunteer_extrapolation(
    scenario: AssessmentScenario, threshold: float
) -> AuditFlag | None:
    cs = scenario.case_study
    if cs is None or cs.sampling is not SamplingScheme.VOLUNTEER:
        return None
    k = scenario.coefficient.k
    if k <= threshold:
        return None
    return _flag(
        VOLUNTEER_EXTRAPOLATION,
        f"extrapolation coefficient {k:g} exceeds {threshold:g} although the "
        "sample is self-selected volunteers",
    )


def _check_nonrandom_k1(scenario: AssessmentScenario) -> AuditFlag | None:
    cs = scenario.case_study
    if cs is None or cs.sampling is SamplingScheme.RANDOM:
        return None
    if scenario.coefficient.k != 1.0:
        return None
    if scenario.perspective.kind is not PerspectiveKind.PRESENT:
        return None
    return _flag(
        NONRANDOM_K1,
        "a non-random sample is scaled to the present population without any "
        "dampening (coefficient exactly 1)",
    )


def _check_usage_intensity(scenario: AssessmentScenario) -> AuditFlag | None:
    if scenario.evidence.mr_split_evidence != ("usage_intensity",):
        return None
    return _flag(
        USAGE_INTENSITY_SOLE_BASIS,
        "the modified/rebound split of service usage rests on usage intensity "
        "alone, with no independent evidence",
    )


def _check_fixed_baseline(scenario: AssessmentScenario) -> AuditFlag | None:
    if scenario.perspective.kind not in (
        PerspectiveKind.PRESENT,
        PerspectiveKind.PREDICTED_PRESENT,
        PerspectiveKind.FUTURE,
    ):
        return None
    model = scenario.baseline
    if model is None:
        return _flag(
            FIXED_BASELINE,
            "no counterfactual baseline is declared for a perspective spanning "
            "several periods",
        )
    if model.strategy is BaselineStrategy.PROJECTION:
        return None
    return _flag(
        FIXED_BASELINE,
        f"baseline is held fixed ({model.strategy.value}) although the "
        "counterfactual activity would have kept evolving",
    )


def _current_modified_count(scenario: AssessmentScenario) -> float | None:
    if scenario.partition.modified_count is not None:
        return float(scenario.partition.modified_count)
    if scenario.rebound_model is not None:
        return float(scenario.rebound_model.usage_total)
    return None


def _check_future_share_reuse(scenario: AssessmentScenario) -> AuditFlag | None:
    if scenario.perspective.kind not in (
        PerspectiveKind.PREDICTED_PRESENT,
        PerspectiveKind.FUTURE,
    ):
        return None
    share = scenario.evidence.modified_share
    if share is None or not share.reused_from_past:
        return None
    if share.modified_count_at_origin is None:
        return None
    current = _current_modified_count(scenario)
    if current is None or current <= share.modified_count_at_origin:
        return None
    origin = f" from {share.origin_label}" if share.origin_label else ""
    return _flag(
        FUTURE_SHARE_REUSE,
        f"the modified share of {share.value:g}{origin} is reused although "
        f"usage grew from {share.modified_count_at_origin:g} to {current:g}; "
        "the old percentage has no claim on the new usage",
    )


def _check_hawthorne(scenario: AssessmentScenario) -> AuditFlag | None:
    cs = scenario.case_study
    if cs is None or not cs.observation_note:
        return None
    return _flag(
        HAWTHORNE_EXPOSURE,
        "participants knew they were observed; measured behaviour may not "
        "carry over (note: " + cs.observation_note + ")",
    )


def _check_uncertainty_untagged(scenario: AssessmentScenario) -> AuditFlag | None:
    if scenario.perspective.kind not in (
        PerspectiveKind.PREDICTED_PRESENT,
        PerspectiveKind.FUTURE,
    ):
        return None
    missing = untagged_population_parameters(scenario)
    if not missing:
        return None
    return _flag(
        UNCERTAINTY_UNTAGGED,
        "population-size parameters lack an uncertainty class for a "
        "forward-looking perspective: " + ", ".join(missing),
    )


def _check_mainstream(scenario: AssessmentScenario) -> AuditFlag | None:
    if not scenario.evidence.mainstream_service:
        return None
    return _flag(
        MAINSTREAM_SERVICE,
        "the service is part of the prevailing technology regime; attributing "
        "an isolated induced effect to it is conceptually shaky",
    )


def audit_scenario(
    scenario: AssessmentScenario,
    result: AssessmentResult | None = None,
    volunteer_k_threshold: float = 0.5,
) -> tuple[AuditFlag, ...]:
    """Run every audit rule against a scenario.

    ``result`` is accepted for rules that may want to inspect computed
    numbers; the current rule set works from the scenario alone.
    ``volunteer_k_threshold`` tunes how much extrapolation a volunteer
    sample is allowed before the error-severity flag fires.
    """
    del result
    checks = (
        _check_rebound_ignored(scenario),
        _check_volunteer_extrapolation(scenario, volunteer_k_threshold),
        _check_nonrandom_k1(scenario),
        _check_usage_intensity(scenario),
        _check_fixed_baseline(scenario),
        _check_future_share_reuse(scenario),
        _check_hawthorne(scenario),
        _check_uncertainty_untagged(scenario),
        _check_mainstream(scenario),
    )
    flags = [flag for flag in checks if flag is not None]
    flags.sort(key=lambda f: (severity_rank(f.severity), f.code))
    return tuple(flags)
