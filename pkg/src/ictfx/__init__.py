"""Assessment workbench for environmental effects induced by ICT services.

The package computes the net emission effect of a service that replaces
or optimizes some reference activity, extrapolates case-study evidence
to larger populations, projects counterfactual baselines, quantifies
uncertainty, and audits scenarios for known methodological traps.
"""

from .audit import RULE_REGISTRY, USAGE_SPLIT_CHECKLIST, audit_scenario
from .baseline import (
    TrajectoryPoint,
    baseline_cone,
    baseline_trajectory,
    baseline_value,
    effect_trajectory,
)
from .engine import (
    ScenarioEffect,
    case_study_average,
    case_study_effect,
    case_study_effect_with_rebound,
    effect_with_rebound,
    extrapolate,
    full_pipeline,
    induced_effect_basic,
    induced_effect_partition,
    model_based_effect,
    naive_effect_and_overstatement,
    per_usage_effect,
    scenario_effect,
)
from .model import (
    AssessmentPeriod,
    AssessmentResult,
    AssessmentScenario,
    AuditFlag,
    BaselineCone,
    BaselineModel,
    BaselineStrategy,
    CaseStudy,
    close,
    CoefficientSource,
    CountBasis,
    DiscreteWeighted,
    EffectInterval,
    EstimationPath,
    EvidenceMetadata,
    ExtrapolationCoefficient,
    InstanceFootprint,
    Mechanism,
    ModifiedShare,
    ParameterDistribution,
    PeriodUnit,
    PerspectiveKind,
    PointValue,
    ReboundInstance,
    ReboundShareModel,
    SamplingScheme,
    Severity,
    severity_rank,
    TimePerspective,
    TriangularRange,
    UncertaintyClass,
    UniformRange,
    UsagePartition,
    ValidationIssue,
    ValidationReport,
    validate_scenario,
)
from .uncertainty import (
    BootstrapSummary,
    MonteCarloSummary,
    RandomSeed,
    TornadoRow,
    TornadoSummary,
    apply_parameter,
    bootstrap_interval,
    calibrate_k,
    monte_carlo_assess,
    sensitivity_tornado,
)

__version__ = "0.1.0"
