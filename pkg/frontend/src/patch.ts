/**
 * Slider-to-document patches.
 *
 * Each helper clones the scenario document, rewrites the one assumption the
 * slider controls, and returns the clone; the service recomputes everything.
 * No arithmetic on footprints happens here, which is the point: the UI stays
 * a pure view over the assessment service.
 *
 * When a parameter carries a sampling distribution, moving its slider pins
 * that distribution to a point at the new value. Headline and Monte Carlo
 * summaries then describe the same document, instead of the slider silently
 * fighting the distribution's old central value.
 */

import type { ScenarioDocument } from "./types.js";

function cloneDocument(doc: ScenarioDocument): ScenarioDocument {
  return structuredClone(doc);
}

function pinDistribution(doc: ScenarioDocument, target: string, value: number): void {
  if (!doc.distributions) {
    return;
  }
  for (const spec of doc.distributions) {
    if (spec.target === target) {
      spec.shape = { kind: "point", value };
    }
  }
}

/** Set the extrapolation coefficient. The source becomes "user": a dragged
 * slider is an analyst override, whatever default the document started with. */
export function setCoefficient(doc: ScenarioDocument, k: number): ScenarioDocument {
  const out = cloneDocument(doc);
  out.scenario.coefficient = { k, source: "user" };
  pinDistribution(out, "coefficient.k", k);
  return out;
}

/** Set the population rebound share on the usage model. */
export function setReboundShare(doc: ScenarioDocument, share: number): ScenarioDocument {
  const out = cloneDocument(doc);
  if (!out.scenario.rebound_model) {
    throw new Error("scenario has no rebound model; the rebound-share slider does not apply");
  }
  out.scenario.rebound_model.rebound_share = share;
  pinDistribution(out, "rebound_share", share);
  return out;
}

/** Set the total service usage count on the usage model. */
export function setUsageTotal(doc: ScenarioDocument, total: number): ScenarioDocument {
  const out = cloneDocument(doc);
  if (!out.scenario.rebound_model) {
    throw new Error("scenario has no rebound model; the usage-total slider does not apply");
  }
  out.scenario.rebound_model.usage_total = total;
  pinDistribution(out, "rebound_model.usage_total", total);
  return out;
}

/** Set the modified-usage count on the explicit partition. Counts are whole
 * usages, so the value is rounded before it is written. */
export function setModifiedCount(doc: ScenarioDocument, count: number): ScenarioDocument {
  const out = cloneDocument(doc);
  if (!out.scenario.partition) {
    throw new Error("scenario has no usage partition; the modified-count slider does not apply");
  }
  out.scenario.partition.modified_count = Math.round(count);
  pinDistribution(out, "partition.modified_count", Math.round(count));
  return out;
}

function requireProjection(doc: ScenarioDocument): asserts doc is ScenarioDocument & {
  baseline: NonNullable<ScenarioDocument["baseline"]>;
} {
  if (!doc.baseline || doc.baseline.strategy !== "projection") {
    throw new Error("scenario has no projection baseline; the rate sliders do not apply");
  }
}

/** Set the baseline growth rate, widening the uncertainty cone so it still
 * brackets the central path (the validator rejects a cone that excludes it). */
export function setBaselineGrowth(doc: ScenarioDocument, rate: number): ScenarioDocument {
  const out = cloneDocument(doc);
  requireProjection(out);
  out.baseline.growth_rate = rate;
  if (out.baseline.cone) {
    out.baseline.cone.growth_lo = Math.min(out.baseline.cone.growth_lo, rate);
    out.baseline.cone.growth_hi = Math.max(out.baseline.cone.growth_hi, rate);
  }
  pinDistribution(out, "baseline.growth_rate", rate);
  return out;
}

/** Set the baseline efficiency rate; same cone-widening rule as growth. */
export function setBaselineEfficiency(doc: ScenarioDocument, rate: number): ScenarioDocument {
  const out = cloneDocument(doc);
  requireProjection(out);
  out.baseline.efficiency_rate = rate;
  if (out.baseline.cone) {
    out.baseline.cone.efficiency_lo = Math.min(out.baseline.cone.efficiency_lo, rate);
    out.baseline.cone.efficiency_hi = Math.max(out.baseline.cone.efficiency_hi, rate);
  }
  pinDistribution(out, "baseline.efficiency_rate", rate);
  return out;
}

/** Which sliders a given document supports. */
export interface SliderSupport {
  coefficient: boolean;
  reboundShare: boolean;
  usageTotal: boolean;
  modifiedCount: boolean;
  baselineRates: boolean;
}

export function sliderSupport(doc: ScenarioDocument): SliderSupport {
  return {
    coefficient: true,
    reboundShare: doc.scenario.rebound_model !== undefined,
    usageTotal: doc.scenario.rebound_model !== undefined,
    modifiedCount: doc.scenario.partition !== undefined,
    baselineRates: doc.baseline !== undefined && doc.baseline.strategy === "projection",
  };
}
