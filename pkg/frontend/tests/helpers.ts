import { readFileSync } from "node:fs";

import type { AssessmentReport, BaselineTable, ScenarioDocument, TornadoReport } from "../src/types.js";

export function fixtureText(name: string): string {
  return readFileSync(new URL(`../fixtures/${name}`, import.meta.url), "utf8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export function loadReport(name: string): AssessmentReport {
  return fixture<AssessmentReport>(name);
}

export function loadBaseDocument(): ScenarioDocument {
  return fixture<ScenarioDocument>("document_base.json");
}

export function loadTornado(): TornadoReport {
  return fixture<TornadoReport>("tornado.json");
}

export function loadBaselineTable(): BaselineTable {
  return fixture<BaselineTable>("baseline.json");
}

/** All slider-state report fixtures, keyed by what produced them. */
export const REPORT_FIXTURES = [
  "report_base.json",
  "report_k01.json",
  "report_k02.json",
  "report_rho0.json",
  "report_g06.json",
  "report_ntt2010.json",
] as const;
