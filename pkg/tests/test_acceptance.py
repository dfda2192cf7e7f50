"""Acceptance gate: one test per headline guarantee of the package.

Each test prints a single ACCEPTANCE PASS line when its guarantee holds,
visible with ``pytest -s`` or in captured output. Tolerances and time
budgets are part of the guarantee and asserted, not advisory.
"""

from __future__ import annotations

import json
import math
import time

import numpy as np
from fastapi.testclient import TestClient

from ictfx import (
    CoefficientSource,
    DiscreteWeighted,
    ExtrapolationCoefficient,
    ParameterDistribution,
    PointValue,
    RandomSeed,
    apply_parameter,
    bootstrap_interval,
    calibrate_k,
    monte_carlo_assess,
    scenario_effect,
)
from ictfx.audit import FUTURE_SHARE_REUSE, REBOUND_IGNORED, audit_scenario
from ictfx.baseline import baseline_cone, baseline_value, effect_trajectory
from ictfx.engine import (
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
)
from ictfx.model import (
    BaselineCone,
    BaselineModel,
    BaselineStrategy,
    CaseStudy,
    InstanceFootprint,
    ReboundInstance,
)
from ictfx.workbench import canonical_json, parse_scenario, serialize_scenario
from ictfx.workbench.cli import main as cli_main
from ictfx.workbench.report import (
    AssessmentOptions,
    options_from_provenance,
    report_to_dict,
    run_assessment,
)
from ictfx.workbench.service import create_app

from conftest import GOLDEN_NAMES, SCENARIO_DIR, build_scenario, load_document

REL = 1e-9


def rel_close(a: float, b: float, scale: float = 1.0) -> bool:
    return abs(a - b) <= REL * max(1.0, abs(a), abs(b), scale)


def test_effect_identity_suite_on_random_tuples():
    """Every algebraic identity between the effect forms holds on at
    least 10000 random inputs at relative tolerance 1e-9, within 10 s."""
    rng = np.random.default_rng(20260823)
    tuples = 10_000
    draws = rng.uniform(0.0, 1.0e6, size=(tuples, 6))
    ks = rng.uniform(0.05, 5.0, size=tuples)
    counts = rng.uniform(0.0, 1.0e6, size=tuples)
    started = time.perf_counter()
    for i in range(tuples):
        a_m, a_n, a_n2, opt, svc, extra = draws[i]
        k, count = float(ks[i]), float(counts[i])

        # The unaffected usages cancel: the effect is exactly invariant.
        assert induced_effect_partition(a_m, a_n, opt, svc) == induced_effect_partition(
            a_m, a_n2, opt, svc
        )
        # Without residual burden the partition form reduces to the
        # basic replacement effect.
        assert induced_effect_partition(a_m, a_n, 0.0, svc) == induced_effect_basic(
            a_m, svc
        )
        # The rebound-aware aggregate form shares the reduced formula.
        assert effect_with_rebound(a_m, opt, svc) == induced_effect_partition(
            a_m, a_n, opt, svc
        )
        # A unit coefficient means plain scaling.
        avg = a_m - (opt + svc)
        assert extrapolate(
            avg, count, ExtrapolationCoefficient(k=1.0)
        ) == model_based_effect(avg, count)
        # Exact two-homogeneity in the coefficient and the count.
        one = extrapolate(avg, count, ExtrapolationCoefficient(k=k))
        assert extrapolate(avg, count, ExtrapolationCoefficient(k=2.0 * k)) == 2.0 * one
        assert extrapolate(avg, 2.0 * count, ExtrapolationCoefficient(k=k)) == 2.0 * one
        # Extra service burden can only lower the effect.
        assert effect_with_rebound(a_m, opt, svc + extra) <= effect_with_rebound(
            a_m, opt, svc
        )
        # Crediting rebound usages overstates by exactly their
        # attributed activity footprint.
        rebound_attr = 0.5 * a_m
        naive, correct, overstatement = naive_effect_and_overstatement(
            a_m, rebound_attr, opt, svc
        )
        assert overstatement == rebound_attr
        assert abs((naive - correct) - overstatement) <= REL * max(1.0, abs(naive))
        # Per-study total versus a manually associated sum.
        instances = (
            InstanceFootprint("x0", a_m, opt, svc),
            InstanceFootprint("x1", a_n, 0.0, extra),
            InstanceFootprint("x2", a_n2, 0.0, 0.0),
        )
        study = CaseStudy(modified=instances)
        manual = (a_m - (opt + svc)) + (a_n - extra) + a_n2
        assert rel_close(case_study_effect(study), manual, scale=a_m + a_n + a_n2)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"identity suite took {elapsed:.1f} s"
    print(
        f"ACCEPTANCE PASS: effect identity suite ({tuples} random tuples, "
        f"rel 1e-9, {elapsed:.1f} s)"
    )


def test_case_study_totals_match_independent_oracles():
    """Study totals, averages and the rebound-aware total agree with
    independent column-sum oracles on 1000 random studies of up to 500
    instances, at relative tolerance 1e-9, within 5 s."""
    rng = np.random.default_rng(404)
    started = time.perf_counter()
    for _ in range(1000):
        n = int(rng.integers(1, 501))
        cols = rng.uniform(0.0, 1000.0, size=(n, 3))
        modified = tuple(
            InstanceFootprint(f"i{j}", float(a), float(o), float(s))
            for j, (a, o, s) in enumerate(cols)
        )
        m = int(rng.integers(0, 51))
        reb = rng.uniform(0.0, 50.0, size=(m, 2))
        rebound = tuple(
            ReboundInstance(f"r{j}", optimized=float(o), service=float(s))
            for j, (o, s) in enumerate(reb)
        )
        study = CaseStudy(modified=modified, rebound=rebound)

        scale = float(cols.sum() + reb.sum())
        oracle_total = float(cols[:, 0].sum() - cols[:, 1].sum() - cols[:, 2].sum())
        assert rel_close(case_study_effect(study), oracle_total, scale=scale)
        assert rel_close(case_study_average(study), oracle_total / n, scale=scale)
        oracle_rebound = oracle_total - float(reb.sum())
        assert rel_close(
            case_study_effect_with_rebound(study), oracle_rebound, scale=scale
        )
        # Extrapolating the whole study is averaging then scaling.
        expected = 0.25 * (oracle_rebound / n) * 1000.0
        assert rel_close(
            full_pipeline(study, 1000.0, ExtrapolationCoefficient(k=0.25)),
            expected,
            scale=scale,
        )
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"oracle comparison took {elapsed:.1f} s"
    print(
        "ACCEPTANCE PASS: case-study totals vs independent oracles "
        f"(1000 studies, n <= 500, rel 1e-9, {elapsed:.1f} s)"
    )


def test_coefficient_calibration_brackets_and_round_trips():
    """Calibrating a 17.5 kg case average against a 2.0 kg population
    average lands in [0.100, 0.134] and reproduces the population effect
    through extrapolation at relative tolerance 1e-9."""
    k = calibrate_k(17.5, 2.0)
    assert 0.100 <= k <= 0.134
    population = 2_000_000.0
    reproduced = extrapolate(
        17.5, population, ExtrapolationCoefficient(k=k, source=CoefficientSource.USER)
    )
    assert rel_close(reproduced, 2.0 * population)
    print(
        f"ACCEPTANCE PASS: coefficient calibration (k = {k:.6f} in "
        "[0.100, 0.134], population round trip rel 1e-9)"
    )


def test_grown_usage_fixtures_flag_and_decompose_overstatement():
    """The grown-usage fixture pair audits as designed, and sweeping the
    rebound share decomposes the naive effect with an overstatement that
    is bit-identical to the attributed rebound footprint."""
    early = load_document("ntt_2010").scenario
    late = load_document("ntt_2013").scenario

    early_codes = [f.code for f in audit_scenario(early)]
    late_codes = [f.code for f in audit_scenario(late)]
    assert REBOUND_IGNORED in early_codes
    assert REBOUND_IGNORED in late_codes
    assert FUTURE_SHARE_REUSE in late_codes
    assert FUTURE_SHARE_REUSE not in early_codes

    assert scenario_effect(early).effect == 1.0e10
    assert scenario_effect(late).effect == 29_000_000_000.000004

    usage_total = late.rebound_model.usage_total
    per_usage_activity = late.rebound_model.per_usage_activity
    for rho in np.linspace(0.01, 0.999, 25):
        swept = apply_parameter(late, "rebound_share", float(rho))
        breakdown = scenario_effect(swept)
        expected_overstatement = float(rho) * (usage_total * per_usage_activity)
        assert breakdown.overstatement == expected_overstatement  # bitwise
        assert rel_close(
            breakdown.naive_effect - breakdown.effect, breakdown.overstatement
        )
    print(
        "ACCEPTANCE PASS: grown-usage fixtures (audit flags as designed, "
        "overstatement bit-identical across 25-point rebound-share sweep)"
    )


def test_bootstrap_interval_covers_known_mean():
    """Over 500 synthetic studies of 200 instances drawn uniformly on
    [0, 10], the 95 % bootstrap interval covers the true mean 5.0 in at
    least 90 % of runs, within 30 s."""
    data_rng = np.random.default_rng(1234)
    covered = 0
    repetitions = 500
    started = time.perf_counter()
    for rep in range(repetitions):
        activities = data_rng.uniform(0.0, 10.0, size=200)
        study = CaseStudy(
            modified=tuple(
                InstanceFootprint(f"i{j}", float(a), 0.0, 0.0)
                for j, a in enumerate(activities)
            )
        )
        summary = bootstrap_interval(
            study, confidence=0.95, resamples=2000, seed=RandomSeed(9000 + rep)
        )
        if summary.lo <= 5.0 <= summary.hi:
            covered += 1
    elapsed = time.perf_counter() - started
    coverage = covered / repetitions
    assert coverage >= 0.90, f"coverage {coverage:.3f} below 0.90"
    assert elapsed < 30.0, f"coverage study took {elapsed:.1f} s"
    print(
        f"ACCEPTANCE PASS: bootstrap coverage ({coverage:.1%} of {repetitions} "
        f"runs cover the true mean, {elapsed:.1f} s)"
    )


def test_monte_carlo_matches_closed_forms_and_is_run_invariant():
    """Monte Carlo reproduces closed-form answers for degenerate and
    two-point parameter laws at 1e-12, and a seed fixes every digit
    regardless of repetition or worker count."""
    point_scenario = build_scenario(
        distributions=(
            ParameterDistribution(target="coefficient.k", shape=PointValue(1.0)),
        )
    )
    point = monte_carlo_assess(point_scenario, samples=1000, seed=RandomSeed(21))
    expected = scenario_effect(point_scenario).effect
    assert point.mean == expected
    assert point.sd == 0.0
    assert point.q05 == point.q50 == point.q95 == expected

    two_point = build_scenario(
        distributions=(
            ParameterDistribution(
                target="coefficient.k",
                shape=DiscreteWeighted(values=(0.5, 1.5), weights=(0.5, 0.5)),
            ),
        )
    )
    summary = monte_carlo_assess(
        two_point, samples=4096, seed=RandomSeed(22), keep_samples=True
    )
    values = summary.sample_values
    lo_count = sum(1 for v in values if v == 4000.0)
    hi_count = sum(1 for v in values if v == 12000.0)
    assert lo_count + hi_count == 4096  # every sample is one of the two atoms
    mean_oracle = (lo_count * 4000.0 + hi_count * 12000.0) / 4096.0
    assert abs(summary.mean - mean_oracle) <= 1e-12 * abs(mean_oracle)
    var_oracle = (
        lo_count * (4000.0 - mean_oracle) ** 2 + hi_count * (12000.0 - mean_oracle) ** 2
    ) / (4096 - 1)
    assert abs(summary.sd - math.sqrt(var_oracle)) <= 1e-12 * summary.sd
    assert abs(summary.mean - 8000.0) <= 400.0  # 3 sigma of the sample mean
    assert summary.q05 == 4000.0
    assert summary.q95 == 12000.0

    rerun = monte_carlo_assess(two_point, samples=4096, seed=RandomSeed(22), keep_samples=True)
    pooled = monte_carlo_assess(
        two_point, samples=4096, seed=RandomSeed(22), keep_samples=True, workers=4
    )
    assert summary == rerun
    assert summary == pooled
    print(
        "ACCEPTANCE PASS: Monte Carlo closed forms at 1e-12, bit-identical "
        "across reruns and 1/4 workers"
    )


def test_baseline_projection_matches_compounding_oracle():
    """Projected baselines agree with step-by-step compounding at
    relative tolerance 1e-9; a degenerate cone collapses exactly onto the
    central path; per-period effects sum to the window total."""
    model = BaselineModel(
        strategy=BaselineStrategy.PROJECTION,
        base_value=100.0,
        intro_period=0,
        growth_rate=0.03,
        efficiency_rate=0.01,
    )
    assert rel_close(baseline_value(model, 2), 100.0 * 1.03 * 1.03 * 0.99 * 0.99)
    value = 100.0
    for period in range(1, 41):
        value = value * 1.03 * 0.99
        assert rel_close(baseline_value(model, period), value)

    degenerate = BaselineModel(
        strategy=BaselineStrategy.PROJECTION,
        base_value=100.0,
        intro_period=0,
        growth_rate=0.03,
        efficiency_rate=0.01,
        cone=BaselineCone(
            growth_lo=0.03, growth_hi=0.03, efficiency_lo=0.01, efficiency_hi=0.01
        ),
    )
    for period in (0, 7, 23):
        lo, hi = baseline_cone(degenerate, period)
        central = baseline_value(degenerate, period)
        assert lo == central == hi  # exact collapse

    with_service = [95.0, 96.0, 97.5, 99.0]
    points = effect_trajectory(model, with_service)
    window = math.fsum(p.effect for p in points)
    independent = math.fsum(
        baseline_value(model, i) for i in range(len(with_service))
    ) - math.fsum(with_service)
    assert rel_close(window, independent)
    print(
        "ACCEPTANCE PASS: baseline projection (compounding oracle over 40 "
        "periods rel 1e-9, exact degenerate-cone collapse, window totals)"
    )


def test_documents_round_trip_and_interfaces_agree_bytewise(capsys):
    """Every shipped scenario survives parse/serialize unchanged, the
    CLI and the HTTP API emit byte-identical reports for the same seed,
    and a report reproduces itself from its own provenance echo."""
    for name in GOLDEN_NAMES:
        text = (SCENARIO_DIR / f"{name}.json").read_text(encoding="utf-8")
        document = parse_scenario(text, validate=False)
        emitted = serialize_scenario(document)
        assert parse_scenario(emitted, validate=False) == document
        assert serialize_scenario(parse_scenario(emitted, validate=False)) == emitted

    client = TestClient(create_app())
    body = (SCENARIO_DIR / "telepresence_case_study.json").read_bytes()
    api_text = client.post("/v1/assess?seed=42", content=body).text
    code = cli_main(
        [
            "assess",
            str(SCENARIO_DIR / "telepresence_case_study.json"),
            "--seed",
            "42",
            "--format",
            "machine",
        ]
    )
    assert code == 0
    cli_text = capsys.readouterr().out
    assert api_text == cli_text

    original = json.loads(api_text)
    replay_doc = parse_scenario(canonical_json(original["provenance"]["document"]))
    replay_options = options_from_provenance(original["provenance"])
    replayed = report_to_dict(run_assessment(replay_doc, replay_options))
    assert canonical_json(replayed) == canonical_json(original)

    print(
        "ACCEPTANCE PASS: document round trips, CLI/API byte parity at a "
        "fixed seed, report replay from provenance echo"
    )
