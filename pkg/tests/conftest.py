"""Shared builders and fixture loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from ictfx import (
    AssessmentPeriod,
    AssessmentScenario,
    CaseStudy,
    CoefficientSource,
    EstimationPath,
    ExtrapolationCoefficient,
    InstanceFootprint,
    Mechanism,
    PerspectiveKind,
    ReboundInstance,
    SamplingScheme,
    TimePerspective,
    UsagePartition,
)
from ictfx.workbench import ScenarioDocument, parse_scenario

REPO_ROOT = Path(__file__).resolve().parents[1]
SCENARIO_DIR = REPO_ROOT / "scenarios"

GOLDEN_NAMES = (
    "telepresence_case_study",
    "smart_meter_volunteer",
    "ntt_2010",
    "ntt_2013",
    "ebook_model_average",
)


def load_document(name: str) -> ScenarioDocument:
    return parse_scenario((SCENARIO_DIR / f"{name}.json").read_text(encoding="utf-8"))


def make_instance(
    ident: str, activity: float, optimized: float = 0.0, service: float = 0.0
) -> InstanceFootprint:
    return InstanceFootprint(
        instance_id=ident, activity=activity, optimized=optimized, service=service
    )


def make_case_study(
    effects_per_usage: list[tuple[float, float, float]],
    rebound: list[tuple[float, float]] | None = None,
    sampling: SamplingScheme = SamplingScheme.RANDOM,
) -> CaseStudy:
    modified = tuple(
        make_instance(f"m{i}", a, o, s) for i, (a, o, s) in enumerate(effects_per_usage)
    )
    rebound_instances = tuple(
        ReboundInstance(instance_id=f"r{i}", optimized=o, service=s)
        for i, (o, s) in enumerate(rebound or [])
    )
    return CaseStudy(modified=modified, rebound=rebound_instances, sampling=sampling)


def build_scenario(**overrides) -> AssessmentScenario:
    """A small valid case-study scenario; override any field."""
    defaults = dict(
        service_id="svc",
        activity_id="act",
        mechanism=Mechanism.SUBSTITUTION,
        period=AssessmentPeriod(),
        perspective=TimePerspective(kind=PerspectiveKind.PRESENT),
        estimation_path=EstimationPath.CASE_STUDY,
        coefficient=ExtrapolationCoefficient(
            k=1.0, source=CoefficientSource.RANDOM_SAMPLE_DEFAULT
        ),
        partition=UsagePartition(modified_count=1000),
        case_study=make_case_study([(10.0, 0.0, 2.0), (12.0, 0.0, 2.0), (9.0, 0.0, 3.0)]),
    )
    defaults.update(overrides)
    return AssessmentScenario(**defaults)


@pytest.fixture
def golden_doc() -> ScenarioDocument:
    return load_document("telepresence_case_study")


@pytest.fixture
def ntt_2013_doc() -> ScenarioDocument:
    return load_document("ntt_2013")
