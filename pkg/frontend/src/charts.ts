/**
 * Chart builders for the what-if panel.
 *
 * Every builder is a pure function from a machine report (or one block of
 * it) to an SVG string. That is deliberate: if a chart needed anything
 * beyond the report payload, the report would be incomplete, so the tests
 * treat "renders from the fixture alone, deterministically" as the contract.
 */

import type {
  AssessmentReport,
  AuditFlag,
  MonteCarloBlock,
  ResultBlock,
  TornadoReport,
  TrajectoryPoint,
} from "./types.js";

const WIDTH = 640;
const HEIGHT = 320;
const MARGIN = 48;

const PLOT_W = WIDTH - 2 * MARGIN;
const PLOT_H = HEIGHT - 2 * MARGIN;

function fmt(n: number): string {
  return n.toFixed(2);
}

function svg(body: string, cls: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" class="${cls}">` +
    body +
    `</svg>`
  );
}

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function emptyChart(cls: string, message: string): string {
  return svg(
    `<text class="empty" x="${fmt(WIDTH / 2)}" y="${fmt(HEIGHT / 2)}" text-anchor="middle">${escapeText(message)}</text>`,
    cls,
  );
}

interface Scale {
  (value: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  if (span === 0) {
    return () => (r0 + r1) / 2;
  }
  return (value: number) => r0 + ((value - d0) / span) * (r1 - r0);
}

/** Monte Carlo outcome histogram with 5/50/95 percentile markers. */
export function histogramSvg(mc: MonteCarloBlock | null): string {
  if (!mc || mc.histogram.counts.length === 0) {
    return emptyChart("chart-histogram", "no sampled parameters");
  }
  const { counts, edges_kg: edges } = mc.histogram;
  const lo = edges[0] ?? 0;
  const hi = edges[edges.length - 1] ?? 1;
  const peak = Math.max(...counts, 1);
  const x = linearScale(lo, hi, MARGIN, WIDTH - MARGIN);
  const y = linearScale(0, peak, HEIGHT - MARGIN, MARGIN);

  const parts: string[] = [];
  counts.forEach((count, i) => {
    const x0 = x(edges[i] ?? lo);
    const x1 = x(edges[i + 1] ?? hi);
    const top = y(count);
    parts.push(
      `<rect class="bin" data-count="${count}" x="${fmt(x0)}" y="${fmt(top)}" ` +
        `width="${fmt(Math.max(x1 - x0, 0))}" height="${fmt(HEIGHT - MARGIN - top)}"/>`,
    );
  });
  for (const [label, value] of [
    ["q05", mc.q05_kg],
    ["q50", mc.q50_kg],
    ["q95", mc.q95_kg],
  ] as const) {
    const qx = fmt(x(value));
    parts.push(
      `<line class="quantile quantile-${label}" x1="${qx}" y1="${fmt(MARGIN)}" x2="${qx}" y2="${fmt(HEIGHT - MARGIN)}"/>`,
    );
  }
  parts.push(
    `<line class="axis" x1="${fmt(MARGIN)}" y1="${fmt(HEIGHT - MARGIN)}" x2="${fmt(WIDTH - MARGIN)}" y2="${fmt(HEIGHT - MARGIN)}"/>`,
  );
  return svg(parts.join(""), "chart-histogram");
}

/** One-at-a-time sensitivity bars, in the report's own (pre-ranked) order. */
export function tornadoSvg(report: TornadoReport): string {
  if (report.rows.length === 0) {
    return emptyChart("chart-tornado", "no sampled parameters");
  }
  let lo = report.base_effect_kg;
  let hi = report.base_effect_kg;
  for (const row of report.rows) {
    lo = Math.min(lo, row.effect_low_kg, row.effect_high_kg);
    hi = Math.max(hi, row.effect_low_kg, row.effect_high_kg);
  }
  const x = linearScale(lo, hi, MARGIN, WIDTH - MARGIN);
  const rowHeight = PLOT_H / report.rows.length;
  const barHeight = Math.min(24, rowHeight * 0.6);

  const parts: string[] = [];
  const baseX = fmt(x(report.base_effect_kg));
  parts.push(`<line class="base" x1="${baseX}" y1="${fmt(MARGIN)}" x2="${baseX}" y2="${fmt(HEIGHT - MARGIN)}"/>`);
  report.rows.forEach((row, i) => {
    const left = Math.min(row.effect_low_kg, row.effect_high_kg);
    const right = Math.max(row.effect_low_kg, row.effect_high_kg);
    const top = MARGIN + i * rowHeight + (rowHeight - barHeight) / 2;
    parts.push(
      `<g class="bar" data-target="${escapeText(row.target)}">` +
        `<rect x="${fmt(x(left))}" y="${fmt(top)}" width="${fmt(x(right) - x(left))}" height="${fmt(barHeight)}"/>` +
        `<text x="${fmt(MARGIN)}" y="${fmt(top - 4)}">${escapeText(row.target)}</text>` +
        `</g>`,
    );
  });
  return svg(parts.join(""), "chart-tornado");
}

/** Baseline-versus-with-service trajectory with the projection cone. */
export function trajectorySvg(points: TrajectoryPoint[] | null): string {
  if (!points || points.length === 0) {
    return emptyChart("chart-trajectory", "no baseline declared");
  }
  let lo = 0;
  let hi = 0;
  for (const p of points) {
    lo = Math.min(lo, p.baseline_lo_kg, p.with_service_kg ?? p.baseline_lo_kg);
    hi = Math.max(hi, p.baseline_hi_kg, p.with_service_kg ?? p.baseline_hi_kg);
  }
  const first = points[0]!.period;
  const last = points[points.length - 1]!.period;
  const x = linearScale(first, last === first ? first + 1 : last, MARGIN, WIDTH - MARGIN);
  const y = linearScale(lo, hi, HEIGHT - MARGIN, MARGIN);

  const coneForward = points.map((p) => `${fmt(x(p.period))},${fmt(y(p.baseline_hi_kg))}`);
  const coneBack = [...points].reverse().map((p) => `${fmt(x(p.period))},${fmt(y(p.baseline_lo_kg))}`);
  const central = points.map((p) => `${fmt(x(p.period))},${fmt(y(p.baseline_kg))}`);
  const observed = points
    .filter((p) => p.with_service_kg !== null)
    .map((p) => `${fmt(x(p.period))},${fmt(y(p.with_service_kg as number))}`);

  const parts = [
    `<polygon class="cone" points="${[...coneForward, ...coneBack].join(" ")}"/>`,
    `<polyline class="baseline" points="${central.join(" ")}"/>`,
  ];
  if (observed.length > 0) {
    parts.push(`<polyline class="with-service" points="${observed.join(" ")}"/>`);
  }
  return svg(parts.join(""), "chart-trajectory");
}

function usageCount(report: AssessmentReport): number | null {
  const scenario = report.provenance.document.scenario;
  if (scenario.rebound_model) {
    return scenario.rebound_model.usage_total;
  }
  if (scenario.partition) {
    return scenario.partition.modified_count;
  }
  if (scenario.case_study) {
    return scenario.case_study.modified.length;
  }
  return null;
}

/** Usage level against induced effect: a ray from zero usage (zero effect)
 * to the assessed point, marked with the scenario's time perspective. */
export function usagesEffectSvg(report: AssessmentReport): string {
  const count = usageCount(report);
  if (count === null || count <= 0) {
    return emptyChart("chart-usages", "no usage count in scenario");
  }
  const effect = report.result.effect_kg;
  const x = linearScale(0, count, MARGIN, WIDTH - MARGIN);
  const y = linearScale(Math.min(0, effect), Math.max(0, effect), HEIGHT - MARGIN, MARGIN);
  const kind = report.provenance.document.scenario.perspective.kind;

  const body =
    `<line class="effect-line" x1="${fmt(x(0))}" y1="${fmt(y(0))}" x2="${fmt(x(count))}" y2="${fmt(y(effect))}"/>` +
    `<circle class="marker" data-perspective="${escapeText(kind)}" cx="${fmt(x(count))}" cy="${fmt(y(effect))}" r="5"/>` +
    `<text class="marker-label" x="${fmt(x(count) - 10)}" y="${fmt(y(effect) - 10)}">${escapeText(kind)}</text>`;
  return svg(body, "chart-usages");
}

/** Stacked decomposition of the naive claim into the rebound-corrected
 * effect plus the grey overstatement band. With no rebound the band has
 * exactly zero height. */
export function reboundDecompositionSvg(result: ResultBlock): string {
  const effect = result.effect_kg;
  const naive = result.naive_effect_kg ?? effect;
  const overstatement = result.overstatement_kg ?? 0;
  const top = Math.max(naive, effect, 0);
  if (top <= 0) {
    return emptyChart("chart-decomposition", "no positive effect to decompose");
  }
  const y = linearScale(0, top, HEIGHT - MARGIN, MARGIN);
  const barX = MARGIN + PLOT_W / 3;
  const barW = PLOT_W / 3;

  const effectTop = y(Math.max(effect, 0));
  const naiveTop = y(Math.max(naive, 0));
  const body =
    `<rect class="effect" x="${fmt(barX)}" y="${fmt(effectTop)}" width="${fmt(barW)}" ` +
    `height="${fmt(HEIGHT - MARGIN - effectTop)}"/>` +
    `<rect class="overstatement" x="${fmt(barX)}" y="${fmt(naiveTop)}" width="${fmt(barW)}" ` +
    `height="${fmt(effectTop - naiveTop)}" data-overstatement-kg="${overstatement}"/>` +
    `<line class="axis" x1="${fmt(MARGIN)}" y1="${fmt(HEIGHT - MARGIN)}" x2="${fmt(WIDTH - MARGIN)}" y2="${fmt(HEIGHT - MARGIN)}"/>`;
  return svg(body, "chart-decomposition");
}

/** Audit flags as a list; an empty flag set renders an explicit "none". */
export function flagListHtml(flags: AuditFlag[]): string {
  if (flags.length === 0) {
    return `<p class="flags-none">none</p>`;
  }
  const items = flags
    .map(
      (flag) =>
        `<li class="flag severity-${flag.severity}" data-code="${escapeText(flag.code)}">` +
        `<strong>${escapeText(flag.code)}</strong> ${escapeText(flag.message)}</li>`,
    )
    .join("");
  return `<ul class="flags">${items}</ul>`;
}
