/**
 * Scenario editor helpers: JSON parsing with positions, pretty-printing,
 * inline validation lookup, and the kg/t display toggle.
 */

import type { ScenarioDocument, ValidationIssue } from "./types.js";

export interface ParseFailure {
  ok: false;
  message: string;
  line: number;
  column: number;
}

export interface ParseSuccess {
  ok: true;
  doc: ScenarioDocument;
}

export type ParseOutcome = ParseSuccess | ParseFailure;

function positionToLineColumn(text: string, position: number): { line: number; column: number } {
  let line = 1;
  let column = 1;
  const end = Math.min(position, text.length);
  for (let i = 0; i < end; i += 1) {
    if (text[i] === "\n") {
      line += 1;
      column = 1;
    } else {
      column += 1;
    }
  }
  return { line, column };
}

/** Parse editor text; syntax failures come back with a 1-based line/column
 * when the engine's error message carries an offset, else line 1. */
export function tryParse(text: string): ParseOutcome {
  try {
    const doc = JSON.parse(text) as ScenarioDocument;
    if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
      return { ok: false, message: "document must be a JSON object", line: 1, column: 1 };
    }
    return { ok: true, doc };
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    const match = /position (\d+)/.exec(message);
    if (match) {
      const { line, column } = positionToLineColumn(text, Number(match[1]));
      return { ok: false, message, line, column };
    }
    const lineMatch = /line (\d+) column (\d+)/.exec(message);
    if (lineMatch) {
      return { ok: false, message, line: Number(lineMatch[1]), column: Number(lineMatch[2]) };
    }
    return { ok: false, message, line: 1, column: 1 };
  }
}

export function prettyPrint(doc: ScenarioDocument): string {
  return `${JSON.stringify(doc, null, 2)}\n`;
}

/** Index validation issues by field path for inline display. Multiple issues
 * on one path keep their reported order. */
export function issuesByPath(issues: ValidationIssue[]): Map<string, ValidationIssue[]> {
  const index = new Map<string, ValidationIssue[]>();
  for (const issue of issues) {
    const bucket = index.get(issue.path);
    if (bucket) {
      bucket.push(issue);
    } else {
      index.set(issue.path, [issue]);
    }
  }
  return index;
}

export type DisplayUnit = "kgCO2e" | "tCO2e";

const KG_PER_TONNE = 1000;

/** Value to show for a canonical kg quantity under the chosen display unit.
 * The stored document always stays in kilograms; this is display-only. */
export function displayValue(kg: number, unit: DisplayUnit): number {
  return unit === "tCO2e" ? kg / KG_PER_TONNE : kg;
}

/** Inverse of displayValue: what a user-entered number means in kilograms. */
export function storedValue(entered: number, unit: DisplayUnit): number {
  return unit === "tCO2e" ? entered * KG_PER_TONNE : entered;
}
