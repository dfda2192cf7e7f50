"""Counterfactual baseline projection and effect trajectories.

The projection compounds discretely per assessment period: a growth rate
pushes the counterfactual footprint up, an efficiency-improvement rate
pulls it down, both applied once per period elapsed since introduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import BaselineCone, BaselineModel, BaselineStrategy


def _project(base: float, growth: float, efficiency: float, steps: int) -> float:
    if not 0.0 <= efficiency < 1.0:
        raise ValueError(f"efficiency rate must lie in [0, 1), got {efficiency}")
    if growth <= -1.0:
        raise ValueError(f"growth rate must exceed -1, got {growth}")
    return base * (1.0 + growth) ** steps * (1.0 - efficiency) ** steps


def baseline_value(model: BaselineModel, period: int) -> float:
    """Counterfactual footprint of the activity at ``period``.

    Fixed strategies return the anchored constant for every period;
    the projection compounds from the introduction period on.
    """
    if period < model.intro_period:
        raise ValueError(
            f"period {period} precedes the introduction period {model.intro_period}"
        )
    if model.strategy is not BaselineStrategy.PROJECTION:
        return model.base_value
    return _project(
        model.base_value,
        model.growth_rate,
        model.efficiency_rate,
        period - model.intro_period,
    )


def baseline_cone(model: BaselineModel, period: int) -> tuple[float, float]:
    """Pessimistic/optimistic bracket (lo, hi) around the baseline.

    The low edge combines the weakest growth with the strongest
    efficiency gains, the high edge the opposite corner, so the central
    projection always lies inside. A missing or degenerate cone collapses
    onto the central value.
    """
    if model.strategy is not BaselineStrategy.PROJECTION:
        value = baseline_value(model, period)
        return value, value
    cone = model.cone
    if cone is None:
        value = baseline_value(model, period)
        return value, value
    _check_cone(model, cone)
    steps = period - model.intro_period
    if steps < 0:
        raise ValueError(
            f"period {period} precedes the introduction period {model.intro_period}"
        )
    lo = _project(model.base_value, cone.growth_lo, cone.efficiency_hi, steps)
    hi = _project(model.base_value, cone.growth_hi, cone.efficiency_lo, steps)
    return lo, hi


def _check_cone(model: BaselineModel, cone: BaselineCone) -> None:
    if cone.growth_lo > cone.growth_hi or cone.efficiency_lo > cone.efficiency_hi:
        raise ValueError("cone bounds are inverted")
    if not cone.growth_lo <= model.growth_rate <= cone.growth_hi:
        raise ValueError("cone growth bounds must bracket the central rate")
    if not cone.efficiency_lo <= model.efficiency_rate <= cone.efficiency_hi:
        raise ValueError("cone efficiency bounds must bracket the central rate")


@dataclass(frozen=True)
class TrajectoryPoint:
    """One period of the counterfactual-versus-observed comparison."""

    period: int
    baseline: float
    baseline_lo: float
    baseline_hi: float
    with_service: float | None = None
    effect: float | None = None
    effect_lo: float | None = None
    effect_hi: float | None = None


def baseline_trajectory(model: BaselineModel, horizon: int) -> tuple[TrajectoryPoint, ...]:
    """Baseline and cone for periods intro .. intro + horizon inclusive,
    paired with the with-service path where the model carries one."""
    if horizon < 0:
        raise ValueError(f"horizon must be non-negative, got {horizon}")
    points: list[TrajectoryPoint] = []
    for step in range(horizon + 1):
        period = model.intro_period + step
        central = baseline_value(model, period)
        lo, hi = baseline_cone(model, period)
        observed = model.with_service[step] if step < len(model.with_service) else None
        if observed is None:
            points.append(TrajectoryPoint(period, central, lo, hi))
        else:
            points.append(
                TrajectoryPoint(
                    period,
                    central,
                    lo,
                    hi,
                    with_service=observed,
                    effect=central - observed,
                    effect_lo=lo - observed,
                    effect_hi=hi - observed,
                )
            )
    return tuple(points)


def effect_trajectory(
    model: BaselineModel,
    with_service: tuple[float, ...] | list[float],
) -> tuple[TrajectoryPoint, ...]:
    """Per-period effect of the service: baseline minus the footprint
    actually observed with the service in place.

    ``with_service[0]`` refers to the introduction period. The effect
    band comes from the baseline cone; a with-service path equal to the
    baseline yields an identically zero effect.
    """
    if not with_service:
        raise ValueError("with-service path is empty")
    points: list[TrajectoryPoint] = []
    for step, observed in enumerate(with_service):
        period = model.intro_period + step
        central = baseline_value(model, period)
        lo, hi = baseline_cone(model, period)
        points.append(
            TrajectoryPoint(
                period,
                central,
                lo,
                hi,
                with_service=float(observed),
                effect=central - observed,
                effect_lo=lo - observed,
                effect_hi=hi - observed,
            )
        )
    return tuple(points)
