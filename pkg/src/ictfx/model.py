"""Core data types for induced-effect assessments.

Every emission quantity is held internally in kg CO2e per assessment
period; tonne-denominated inputs are converted at the I/O boundary.
Types are frozen dataclasses and safe to share across threads.

Constructors are deliberately permissive: an invalid document must stay
representable so that ``validate_scenario`` can report every violation
with a field path instead of dying on the first one. Engine operations
raise at call time when handed data that breaks their contracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

KG_PER_TONNE = 1000.0

# Package-wide numeric tolerance: relative 1e-9 with an absolute floor
# of 1e-12 for comparisons near zero.
REL_TOL = 1e-9
ABS_TOL = 1e-12

SUPPORTED_SCHEMA_VERSIONS = (1,)
CURRENT_SCHEMA_VERSION = 1


def close(a: float, b: float) -> bool:
    """Equality at the package-wide tolerance (rel 1e-9, abs floor 1e-12)."""
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def to_kg(value: float, unit: str) -> float:
    """Convert a quantity with an explicit unit string to kg CO2e."""
    if unit == "kgCO2e":
        return float(value)
    if unit == "tCO2e":
        return float(value) * KG_PER_TONNE
    raise ValueError(f"unknown emission unit {unit!r}")


class Mechanism(str, Enum):
    """How the service changes the reference activity."""

    SUBSTITUTION = "substitution"
    OPTIMIZATION = "optimization"


class PeriodUnit(str, Enum):
    DAY = "day"
    MONTH = "month"
    YEAR = "year"


class PerspectiveKind(str, Enum):
    """Temporal vantage point of the assessment.

    CASE_STUDY looks at the studied sample itself; PRESENT at the current
    population; PREDICTED_PRESENT at today's population as forecast by an
    earlier study; FUTURE at a projected population.
    """

    CASE_STUDY = "CS"
    PRESENT = "P"
    PREDICTED_PRESENT = "PP"
    FUTURE = "F"


class UncertaintyClass(str, Enum):
    """Whether a parameter's spread is measurement noise or forecast doubt."""

    DATA = "data_uncertainty"
    FUTURE = "future_uncertainty"


class SamplingScheme(str, Enum):
    RANDOM = "random"
    VOLUNTEER = "volunteer"
    UNKNOWN = "unknown"


class CountBasis(str, Enum):
    """Where the modified-usage count came from."""

    OBSERVED_SERVICE_USAGE = "observed_service_usage"
    INDEPENDENT_ESTIMATE = "independent_estimate"
    UNSPECIFIED = "unspecified"


class BaselineStrategy(str, Enum):
    FIXED_AT_INTRODUCTION = "fixed_at_introduction"
    FIXED_AT_ASSESSMENT = "fixed_at_assessment"
    PROJECTION = "projection"


class CoefficientSource(str, Enum):
    USER = "user"
    VOLUNTEER_DEFAULT = "volunteer_default"
    RANDOM_SAMPLE_DEFAULT = "random_sample_default"


class EstimationPath(str, Enum):
    """Which evidence chain produces the headline effect."""

    CASE_STUDY = "case_study"
    MODEL_AVERAGE = "model_average"
    AGGREGATE = "aggregate"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    ADVISORY = "advisory"


_SEVERITY_ORDER = {Severity.ERROR: 0, Severity.WARNING: 1, Severity.ADVISORY: 2}


def severity_rank(severity: Severity) -> int:
    return _SEVERITY_ORDER[severity]


@dataclass(frozen=True)
class AssessmentPeriod:
    """The single time window all quantities in a scenario refer to."""

    unit: PeriodUnit = PeriodUnit.YEAR
    label: str = ""


@dataclass(frozen=True)
class TimePerspective:
    kind: PerspectiveKind = PerspectiveKind.PRESENT
    # Parameter path -> uncertainty class. Untagged parameters default to
    # data uncertainty for CS/P; PP/F are expected to tag population-size
    # parameters explicitly.
    uncertainty_tags: Mapping[str, UncertaintyClass] = field(default_factory=dict)

    def class_of(self, path: str) -> UncertaintyClass | None:
        tagged = self.uncertainty_tags.get(path)
        if tagged is not None:
            return tagged
        if self.kind in (PerspectiveKind.CASE_STUDY, PerspectiveKind.PRESENT):
            return UncertaintyClass.DATA
        return None


@dataclass(frozen=True)
class InstanceFootprint:
    """Per-usage footprints for one modified instance.

    ``activity`` is the reference activity as it ran before the service,
    ``optimized`` the residual activity after the change (zero for pure
    substitution), ``service`` the footprint of the service usage itself.
    All kg CO2e per period.
    """

    instance_id: str
    activity: float
    optimized: float
    service: float


@dataclass(frozen=True)
class ReboundInstance:
    """A service usage with no displaced activity.

    There is intentionally no ``activity`` field: a counterfactual
    footprint for an activity that never ran is not representable here.
    """

    instance_id: str
    optimized: float
    service: float


@dataclass(frozen=True)
class CaseStudy:
    modified: tuple[InstanceFootprint, ...]
    rebound: tuple[ReboundInstance, ...] = ()
    sampling: SamplingScheme = SamplingScheme.UNKNOWN
    # Free-text note recording that participants knew they were watched.
    observation_note: str | None = None


@dataclass(frozen=True)
class UsagePartition:
    """Counts and optional aggregate footprints at the assessed scale.

    ``*_count`` partition all usages into modified (the service displaced
    an activity), unaffected (the activity runs regardless) and rebound
    (service usage with no displaced activity). The aggregate footprints,
    when present, cover the modified set for the activity and the whole
    service-using set (modified plus rebound) for service and residual
    activity.
    """

    modified_count: int | None = None
    unaffected_count: int | None = None
    rebound_count: int | None = None
    modified_count_basis: CountBasis = CountBasis.UNSPECIFIED
    activity_modified: float | None = None
    activity_unaffected: float | None = None
    activity_rebound: float | None = None
    optimized_all_usages: float | None = None
    service_all_usages: float | None = None


@dataclass(frozen=True)
class ReboundShareModel:
    """Population-level split of observed service usage into modified
    and rebound shares.

    ``usage_total`` counts every observed service usage; ``rebound_share``
    is the fraction of it that displaced nothing. The optional per-usage
    footprints let the aggregate estimation path derive its totals,
    including the counterfactual footprint naively attributed to rebound
    usages.
    """

    usage_total: float
    rebound_share: float
    per_usage_activity: float | None = None
    per_usage_optimized: float | None = None
    per_usage_service: float | None = None


@dataclass(frozen=True)
class BaselineCone:
    growth_lo: float
    growth_hi: float
    efficiency_lo: float
    efficiency_hi: float


@dataclass(frozen=True)
class BaselineModel:
    """Counterfactual footprint of the activity had the service not existed.

    ``fixed_*`` strategies freeze the footprint at the named anchor time;
    ``projection`` compounds a growth rate and an efficiency-improvement
    rate per period from ``intro_period`` on. Rates must be zero for the
    fixed strategies in canonical form.
    """

    strategy: BaselineStrategy
    base_value: float
    intro_period: int = 0
    growth_rate: float = 0.0
    efficiency_rate: float = 0.0
    cone: BaselineCone | None = None
    with_service: tuple[float, ...] = ()
    anchor_period: int | None = None


@dataclass(frozen=True)
class ExtrapolationCoefficient:
    """Dampening factor applied when scaling a case-study average out to a
    population that the sample may not represent."""

    k: float = 1.0
    source: CoefficientSource = CoefficientSource.USER


@dataclass(frozen=True)
class PointValue:
    value: float


@dataclass(frozen=True)
class UniformRange:
    lo: float
    hi: float


@dataclass(frozen=True)
class TriangularRange:
    lo: float
    mode: float
    hi: float


@dataclass(frozen=True)
class DiscreteWeighted:
    values: tuple[float, ...]
    weights: tuple[float, ...]


DistributionShape = PointValue | UniformRange | TriangularRange | DiscreteWeighted


@dataclass(frozen=True)
class ParameterDistribution:
    """A sampled-over scenario parameter, addressed by path."""

    target: str
    shape: DistributionShape
    uncertainty_class: UncertaintyClass | None = None


@dataclass(frozen=True)
class ModifiedShare:
    """A claimed fraction of usage that counts as modified, with enough
    provenance to notice when an old share is reused against a grown
    population."""

    value: float
    origin_label: str | None = None
    reused_from_past: bool = False
    modified_count_at_origin: int | None = None


@dataclass(frozen=True)
class EvidenceMetadata:
    # What evidence supports splitting service usage into modified vs
    # rebound. The literal single entry "usage_intensity" marks a split
    # justified by nothing but how often the service is used.
    mr_split_evidence: tuple[str, ...] = ()
    zero_rebound_justification: str | None = None
    modified_share: ModifiedShare | None = None
    mainstream_service: bool = False


@dataclass(frozen=True)
class AssessmentScenario:
    service_id: str
    activity_id: str
    mechanism: Mechanism
    period: AssessmentPeriod
    perspective: TimePerspective
    estimation_path: EstimationPath
    coefficient: ExtrapolationCoefficient
    partition: UsagePartition = field(default_factory=UsagePartition)
    case_study: CaseStudy | None = None
    model_average: float | None = None
    rebound_model: ReboundShareModel | None = None
    baseline: BaselineModel | None = None
    distributions: tuple[ParameterDistribution, ...] = ()
    evidence: EvidenceMetadata = field(default_factory=EvidenceMetadata)
    schema_version: int = CURRENT_SCHEMA_VERSION


@dataclass(frozen=True)
class AuditFlag:
    """One methodological concern raised against a scenario.

    Flags never block computation; ``severity`` orders how loudly the
    report surfaces them and ``rule_source`` names the methodology topic
    the rule enforces.
    """

    code: str
    severity: Severity
    message: str
    rule_source: str


@dataclass(frozen=True)
class EffectInterval:
    lo: float
    hi: float
    confidence: float
    method: str  # "bootstrap", "monte_carlo" or "none"


@dataclass(frozen=True)
class AssessmentResult:
    """Headline numbers of one assessment run, kg CO2e per period.

    ``effect`` counts avoided emissions as positive; a negative value
    means the service made things worse and is reported as-is.
    """

    effect: float
    interval: EffectInterval
    naive_effect: float | None = None
    overstatement: float | None = None
    per_usage_average: float | None = None
    audit_flags: tuple[AuditFlag, ...] = ()


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    path: str
    message: str
    severity: Severity = Severity.ERROR


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def valid(self) -> bool:
        return not any(i.severity is Severity.ERROR for i in self.issues)

    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.ERROR)

    def warnings(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity is not Severity.ERROR)


# Parameter paths that size the assessed population. PP/F perspectives
# must tag each one that is present with an uncertainty class.
POPULATION_SIZE_PARAMETERS = (
    "partition.modified_count",
    "partition.unaffected_count",
    "partition.rebound_count",
    "rebound_model.usage_total",
)


def untagged_population_parameters(scenario: AssessmentScenario) -> tuple[str, ...]:
    """Population-size parameters present in the scenario but lacking an
    uncertainty tag. Only meaningful for PP/F perspectives."""
    present: list[str] = []
    p = scenario.partition
    if p.modified_count is not None:
        present.append("partition.modified_count")
    if p.unaffected_count is not None:
        present.append("partition.unaffected_count")
    if p.rebound_count is not None:
        present.append("partition.rebound_count")
    if scenario.rebound_model is not None:
        present.append("rebound_model.usage_total")
    tags = scenario.perspective.uncertainty_tags
    return tuple(path for path in present if path not in tags)


def _issue(
    issues: list[ValidationIssue],
    code: str,
    path: str,
    message: str,
    severity: Severity = Severity.ERROR,
) -> None:
    issues.append(ValidationIssue(code=code, path=path, message=message, severity=severity))


def _check_non_negative(
    issues: list[ValidationIssue], value: float | None, path: str
) -> None:
    if value is not None and value < 0:
        _issue(issues, "negative-footprint", path, f"footprint must be >= 0, got {value}")


def _validate_counts(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    p = scenario.partition
    for name, count in (
        ("modified_count", p.modified_count),
        ("unaffected_count", p.unaffected_count),
        ("rebound_count", p.rebound_count),
    ):
        if count is not None and count < 0:
            _issue(
                issues,
                "negative-cardinality",
                f"scenario.partition.{name}",
                f"usage count must be >= 0, got {count}",
            )


def _validate_footprints(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    cs = scenario.case_study
    if cs is not None:
        for i, inst in enumerate(cs.modified):
            base = f"scenario.case_study.modified[{i}]"
            _check_non_negative(issues, inst.activity, base + ".activity")
            _check_non_negative(issues, inst.optimized, base + ".optimized")
            _check_non_negative(issues, inst.service, base + ".service")
        for i, inst in enumerate(cs.rebound):
            base = f"scenario.case_study.rebound[{i}]"
            _check_non_negative(issues, inst.optimized, base + ".optimized")
            _check_non_negative(issues, inst.service, base + ".service")
    p = scenario.partition
    for name in (
        "activity_modified",
        "activity_unaffected",
        "activity_rebound",
        "optimized_all_usages",
        "service_all_usages",
    ):
        _check_non_negative(issues, getattr(p, name), f"scenario.partition.{name}")
    rm = scenario.rebound_model
    if rm is not None:
        _check_non_negative(issues, rm.usage_total, "scenario.rebound_model.usage_total")
        for name in ("per_usage_activity", "per_usage_optimized", "per_usage_service"):
            _check_non_negative(issues, getattr(rm, name), f"scenario.rebound_model.{name}")
        if not 0.0 <= rm.rebound_share <= 1.0:
            _issue(
                issues,
                "rebound-share-range",
                "scenario.rebound_model.rebound_share",
                f"rebound share must lie in [0, 1], got {rm.rebound_share}",
            )
    if scenario.baseline is not None:
        _check_non_negative(
            issues, scenario.baseline.base_value, "scenario.baseline.base_value"
        )


def _validate_mechanism(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    if scenario.mechanism is not Mechanism.SUBSTITUTION:
        return
    # Full substitution leaves no residual activity anywhere.
    cs = scenario.case_study
    if cs is not None:
        for i, inst in enumerate(cs.modified):
            if inst.optimized != 0:
                _issue(
                    issues,
                    "optimized-in-substitution",
                    f"scenario.case_study.modified[{i}].optimized",
                    "substitution scenarios must have zero residual-activity footprint",
                )
        for i, inst in enumerate(cs.rebound):
            if inst.optimized != 0:
                _issue(
                    issues,
                    "optimized-in-substitution",
                    f"scenario.case_study.rebound[{i}].optimized",
                    "substitution scenarios must have zero residual-activity footprint",
                )
    p = scenario.partition
    if p.optimized_all_usages not in (None, 0, 0.0):
        _issue(
            issues,
            "optimized-in-substitution",
            "scenario.partition.optimized_all_usages",
            "substitution scenarios must have zero residual-activity footprint",
        )
    rm = scenario.rebound_model
    if rm is not None and rm.per_usage_optimized not in (None, 0, 0.0):
        _issue(
            issues,
            "optimized-in-substitution",
            "scenario.rebound_model.per_usage_optimized",
            "substitution scenarios must have zero residual-activity footprint",
        )


def _validate_coefficient(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    coeff = scenario.coefficient
    path = "scenario.coefficient.k"
    if not coeff.k > 0:
        _issue(issues, "non-positive-coefficient", path, f"coefficient must be > 0, got {coeff.k}")
    if coeff.source is CoefficientSource.RANDOM_SAMPLE_DEFAULT:
        if coeff.k != 1.0:
            _issue(
                issues,
                "coefficient-default-mismatch",
                path,
                f"random-sample default fixes the coefficient at 1, got {coeff.k}",
            )
        cs = scenario.case_study
        if cs is not None and cs.sampling is not SamplingScheme.RANDOM:
            _issue(
                issues,
                "coefficient-default-requires-random-sampling",
                "scenario.coefficient.source",
                "default coefficient of 1 is only defensible for random samples; "
                "supply an explicit coefficient",
            )
    elif coeff.source is CoefficientSource.VOLUNTEER_DEFAULT:
        if not 0.1 <= coeff.k <= 0.2:
            _issue(
                issues,
                "volunteer-coefficient-outside-band",
                path,
                f"volunteer default band is [0.1, 0.2], got {coeff.k}",
                Severity.WARNING,
            )


def _validate_baseline(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    model = scenario.baseline
    if model is None:
        return
    base = "scenario.baseline"
    if not 0.0 <= model.efficiency_rate < 1.0:
        _issue(
            issues,
            "efficiency-rate-range",
            base + ".efficiency_rate",
            f"efficiency rate must lie in [0, 1), got {model.efficiency_rate}",
        )
    if model.growth_rate <= -1.0:
        _issue(
            issues,
            "growth-rate-range",
            base + ".growth_rate",
            f"growth rate must exceed -1, got {model.growth_rate}",
        )
    if model.strategy is not BaselineStrategy.PROJECTION:
        if model.growth_rate != 0.0 or model.efficiency_rate != 0.0:
            _issue(
                issues,
                "rates-on-fixed-baseline",
                base,
                "fixed baselines must carry zero growth and efficiency rates",
            )
    cone = model.cone
    if cone is not None:
        if cone.growth_lo > cone.growth_hi:
            _issue(issues, "inverted-cone", base + ".cone", "growth bounds are inverted")
        elif not cone.growth_lo <= model.growth_rate <= cone.growth_hi:
            _issue(
                issues,
                "cone-excludes-central",
                base + ".cone",
                "growth bounds must bracket the central growth rate",
            )
        if cone.efficiency_lo > cone.efficiency_hi:
            _issue(issues, "inverted-cone", base + ".cone", "efficiency bounds are inverted")
        elif not cone.efficiency_lo <= model.efficiency_rate <= cone.efficiency_hi:
            _issue(
                issues,
                "cone-excludes-central",
                base + ".cone",
                "efficiency bounds must bracket the central efficiency rate",
            )


def _validate_estimation_path(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    path = scenario.estimation_path
    if path is EstimationPath.CASE_STUDY:
        cs = scenario.case_study
        if cs is None or not cs.modified:
            _issue(
                issues,
                "estimation-path-data-missing",
                "scenario.case_study",
                "case-study path needs at least one modified instance",
            )
        if scenario.perspective.kind is not PerspectiveKind.CASE_STUDY:
            if scenario.rebound_model is None and scenario.partition.modified_count is None:
                _issue(
                    issues,
                    "estimation-path-data-missing",
                    "scenario.partition.modified_count",
                    "extrapolating a case study needs the target modified-usage count",
                )
    elif path is EstimationPath.MODEL_AVERAGE:
        if scenario.model_average is None:
            _issue(
                issues,
                "estimation-path-data-missing",
                "scenario.model_average",
                "model-average path needs a per-usage average effect",
            )
        if scenario.partition.modified_count is None:
            _issue(
                issues,
                "estimation-path-data-missing",
                "scenario.partition.modified_count",
                "model-average path needs the modified-usage count",
            )
    else:  # AGGREGATE
        rm = scenario.rebound_model
        p = scenario.partition
        if rm is not None:
            for name in ("per_usage_activity", "per_usage_service"):
                if getattr(rm, name) is None:
                    _issue(
                        issues,
                        "estimation-path-data-missing",
                        f"scenario.rebound_model.{name}",
                        "aggregate path driven by a rebound-share model needs "
                        "per-usage footprints",
                    )
        else:
            if p.activity_modified is None:
                _issue(
                    issues,
                    "estimation-path-data-missing",
                    "scenario.partition.activity_modified",
                    "aggregate path needs the modified-set activity footprint",
                )
            if p.service_all_usages is None:
                _issue(
                    issues,
                    "estimation-path-data-missing",
                    "scenario.partition.service_all_usages",
                    "aggregate path needs the service footprint over all usages",
                )


def _validate_cross_checks(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    """Aggregates are cross-checked against instance sums, never silently
    preferred, whenever the partition plainly describes the case study
    (its modified count equals the instance count)."""
    cs = scenario.case_study
    p = scenario.partition
    if cs is None or not cs.modified:
        return
    if p.modified_count != len(cs.modified):
        return
    checks = [
        ("activity_modified", p.activity_modified, sum(i.activity for i in cs.modified)),
        (
            "optimized_all_usages",
            p.optimized_all_usages,
            sum(i.optimized for i in cs.modified) + sum(r.optimized for r in cs.rebound),
        ),
        (
            "service_all_usages",
            p.service_all_usages,
            sum(i.service for i in cs.modified) + sum(r.service for r in cs.rebound),
        ),
    ]
    for name, stored, computed in checks:
        if stored is not None and not close(stored, computed):
            _issue(
                issues,
                "aggregate-instance-mismatch",
                f"scenario.partition.{name}",
                f"stored aggregate {stored} disagrees with instance sum {computed}",
            )


_KNOWN_TARGETS = (
    "coefficient.k",
    "partition.modified_count",
    "rebound_share",
    "rebound_model.usage_total",
    "baseline.growth_rate",
    "baseline.efficiency_rate",
    "model_average",
)


def _validate_distributions(issues: list[ValidationIssue], scenario: AssessmentScenario) -> None:
    seen: set[str] = set()
    for i, dist in enumerate(scenario.distributions):
        base = f"scenario.distributions[{i}]"
        if dist.target in seen:
            _issue(
                issues,
                "duplicate-distribution-target",
                base + ".target",
                f"parameter {dist.target!r} already has a distribution",
            )
        seen.add(dist.target)
        if dist.target not in _KNOWN_TARGETS:
            _issue(
                issues,
                "unknown-distribution-target",
                base + ".target",
                f"unknown parameter path {dist.target!r}",
            )
            continue
        if dist.target in ("rebound_share", "rebound_model.usage_total"):
            if scenario.rebound_model is None:
                _issue(
                    issues,
                    "distribution-target-not-applicable",
                    base + ".target",
                    f"{dist.target!r} needs a rebound-share model on the scenario",
                )
        if dist.target == "model_average" and scenario.model_average is None:
            _issue(
                issues,
                "distribution-target-not-applicable",
                base + ".target",
                "'model_average' is not set on this scenario",
            )
        if dist.target.startswith("baseline.") and scenario.baseline is None:
            _issue(
                issues,
                "distribution-target-not-applicable",
                base + ".target",
                "scenario has no baseline model",
            )
        shape = dist.shape
        if isinstance(shape, UniformRange) and shape.lo > shape.hi:
            _issue(issues, "invalid-distribution", base + ".shape", "uniform bounds are inverted")
        elif isinstance(shape, TriangularRange):
            if not shape.lo <= shape.mode <= shape.hi:
                _issue(
                    issues,
                    "invalid-distribution",
                    base + ".shape",
                    "triangular shape needs lo <= mode <= hi",
                )
        elif isinstance(shape, DiscreteWeighted):
            if not shape.values:
                _issue(issues, "invalid-distribution", base + ".shape", "empty outcome list")
            elif len(shape.values) != len(shape.weights):
                _issue(
                    issues,
                    "invalid-distribution",
                    base + ".shape",
                    "outcome and weight lists differ in length",
                )
            elif any(w < 0 for w in shape.weights):
                _issue(issues, "invalid-distribution", base + ".shape", "negative weight")
            elif not close(sum(shape.weights), 1.0):
                _issue(
                    issues,
                    "invalid-distribution",
                    base + ".shape",
                    f"weights must sum to 1, got {sum(shape.weights)}",
                )


def validate_scenario(scenario: AssessmentScenario) -> ValidationReport:
    """Check every domain invariant and return the full list of issues.

    A scenario is valid when no issue carries error severity; warnings
    (for example an out-of-band volunteer coefficient) do not block
    assessment.
    """
    issues: list[ValidationIssue] = []
    if scenario.schema_version not in SUPPORTED_SCHEMA_VERSIONS:
        _issue(
            issues,
            "unsupported-schema-version",
            "schema_version",
            f"supported versions: {', '.join(str(v) for v in SUPPORTED_SCHEMA_VERSIONS)}",
        )
    _validate_counts(issues, scenario)
    _validate_footprints(issues, scenario)
    _validate_mechanism(issues, scenario)
    _validate_coefficient(issues, scenario)
    _validate_baseline(issues, scenario)
    _validate_estimation_path(issues, scenario)
    _validate_cross_checks(issues, scenario)
    _validate_distributions(issues, scenario)
    if scenario.perspective.kind in (PerspectiveKind.PREDICTED_PRESENT, PerspectiveKind.FUTURE):
        for path in untagged_population_parameters(scenario):
            _issue(
                issues,
                "untagged-uncertainty",
                f"scenario.{path}",
                "population-size parameter lacks an uncertainty class tag "
                "for a forward-looking perspective",
                Severity.WARNING,
            )
    return ValidationReport(issues=tuple(issues))
