/**
 * DOM wiring for the what-if explorer. Everything testable lives in the
 * sibling modules; this file only connects controls to the queue and pours
 * service responses into the page.
 */

import { ApiError, WorkbenchClient } from "./api.js";
import {
  flagListHtml,
  histogramSvg,
  reboundDecompositionSvg,
  trajectorySvg,
  usagesEffectSvg,
} from "./charts.js";
import { issuesByPath, prettyPrint, tryParse } from "./editor.js";
import { formatEffect } from "./format.js";
import {
  setBaselineEfficiency,
  setBaselineGrowth,
  setCoefficient,
  setModifiedCount,
  setReboundShare,
  setUsageTotal,
  sliderSupport,
} from "./patch.js";
import { AssessmentQueue } from "./state.js";
import type { AssessmentReport, ScenarioDocument } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setBadge(stale: boolean, message = ""): void {
  const badge = byId<HTMLElement>("staleness");
  badge.hidden = !stale;
  badge.textContent = message || "showing last good result";
}

function renderReport(report: AssessmentReport): void {
  byId<HTMLElement>("headline").textContent = formatEffect(report.result.effect_kg);
  byId<HTMLElement>("flags").innerHTML = flagListHtml(report.audit_flags);
  byId<HTMLElement>("chart-usages").innerHTML = usagesEffectSvg(report);
  byId<HTMLElement>("chart-trajectory").innerHTML = trajectorySvg(report.baseline_trajectory);
  byId<HTMLElement>("chart-decomposition").innerHTML = reboundDecompositionSvg(report.result);
  byId<HTMLElement>("chart-histogram").innerHTML = histogramSvg(report.monte_carlo);
  setBadge(false);
}

function renderValidation(report: AssessmentReport): void {
  const index = issuesByPath(report.validation_warnings);
  const lines: string[] = [];
  for (const [path, issues] of index) {
    for (const issue of issues) {
      lines.push(`${path}: ${issue.message}`);
    }
  }
  byId<HTMLElement>("warnings").textContent = lines.join("\n");
}

function main(): void {
  const client = new WorkbenchClient({ baseUrl: "" });
  const editor = byId<HTMLTextAreaElement>("editor");

  let current: ScenarioDocument | null = null;

  const queue = new AssessmentQueue(
    (doc, signal) => client.assess(doc, undefined, { signal }),
    {
      onReport: (report) => {
        renderReport(report);
        renderValidation(report);
      },
      onError: (error) => {
        if (error instanceof ApiError) {
          setBadge(true, error.message);
        } else {
          setBadge(true, "service unreachable");
        }
      },
    },
  );

  const applyPatch = (patched: ScenarioDocument): void => {
    current = patched;
    editor.value = prettyPrint(patched);
    queue.submit(patched);
  };

  const bindSlider = (id: string, apply: (doc: ScenarioDocument, value: number) => ScenarioDocument): void => {
    const slider = byId<HTMLInputElement>(id);
    slider.addEventListener("input", () => {
      if (current && !slider.disabled) {
        applyPatch(apply(current, Number(slider.value)));
      }
    });
    slider.addEventListener("change", () => queue.flush());
  };

  bindSlider("slider-k", setCoefficient);
  bindSlider("slider-rho", setReboundShare);
  bindSlider("slider-usage", setUsageTotal);
  bindSlider("slider-count", setModifiedCount);
  bindSlider("slider-growth", setBaselineGrowth);
  bindSlider("slider-efficiency", setBaselineEfficiency);

  editor.addEventListener("change", () => {
    const outcome = tryParse(editor.value);
    const status = byId<HTMLElement>("parse-status");
    if (!outcome.ok) {
      status.textContent = `line ${outcome.line}, column ${outcome.column}: ${outcome.message}`;
      return;
    }
    status.textContent = "";
    current = outcome.doc;
    const support = sliderSupport(outcome.doc);
    byId<HTMLInputElement>("slider-rho").disabled = !support.reboundShare;
    byId<HTMLInputElement>("slider-usage").disabled = !support.usageTotal;
    byId<HTMLInputElement>("slider-count").disabled = !support.modifiedCount;
    byId<HTMLInputElement>("slider-growth").disabled = !support.baselineRates;
    byId<HTMLInputElement>("slider-efficiency").disabled = !support.baselineRates;
    queue.submit(outcome.doc);
  });

  client
    .schema()
    .then(() => setBadge(false))
    .catch(() => setBadge(true, "service unreachable; controls disabled"));
}

document.addEventListener("DOMContentLoaded", main);
