/**
 * Display formatting. The headline rule for the whole UI is "three
 * significant figures, largest unit that keeps the number at or above one".
 */

const LADDER: ReadonlyArray<readonly [number, string]> = [
  [1e9, "MtCO2e"],
  [1e6, "ktCO2e"],
  [1e3, "tCO2e"],
  [1, "kgCO2e"],
];

/** Round to `digits` significant figures, keeping plain decimal notation. */
export function toSignificant(value: number, digits = 3): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  if (value === 0) {
    return "0";
  }
  const raw = value.toPrecision(digits);
  if (raw.includes("e") || raw.includes("E")) {
    // toPrecision falls back to exponent notation for large magnitudes;
    // re-expand so "5.00e+3" renders as "5000".
    return Number(raw).toString();
  }
  return raw;
}

/**
 * Format a mass of CO2e given in kilograms, e.g. 8726737.5 -> "8.73 ktCO2e".
 *
 * Exact zero stays in kilograms; the sign rides along unchanged.
 */
export function formatEffect(kg: number, digits = 3): string {
  if (!Number.isFinite(kg)) {
    return `${String(kg)} kgCO2e`;
  }
  if (kg === 0) {
    return "0 kgCO2e";
  }
  const magnitude = Math.abs(kg);
  let factor = 1;
  let unit = "kgCO2e";
  for (const [step, label] of LADDER) {
    if (magnitude >= step) {
      factor = step;
      unit = label;
      break;
    }
  }
  return `${toSignificant(kg / factor, digits)} ${unit}`;
}

/** Format a usage count with thousands separators (counts are unitless). */
export function formatCount(count: number): string {
  if (!Number.isFinite(count)) {
    return String(count);
  }
  return count.toLocaleString("en-US");
}

/** Format a dimensionless rate such as a rebound share, e.g. 0.15 -> "15.0%". */
export function formatShare(share: number, digits = 3): string {
  return `${toSignificant(share * 100, digits)}%`;
}
