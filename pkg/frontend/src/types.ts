/**
 * Wire types for the assessment service.
 *
 * These mirror the machine-format JSON emitted by the backend. The UI never
 * computes effects itself; every number rendered comes out of one of these
 * payloads, so the types double as the contract the charts are allowed to
 * depend on.
 */

export interface Quantity {
  value: number;
  unit: string;
}

export interface DistributionShape {
  kind: string;
  [key: string]: unknown;
}

export interface DistributionSpec {
  target: string;
  shape: DistributionShape;
  uncertainty_class?: string;
}

export interface CaseStudyUsage {
  id: string;
  activity: Quantity;
  optimized: Quantity;
  service: Quantity;
}

export interface ReboundUsage {
  id: string;
  optimized: Quantity;
  service: Quantity;
}

export interface BaselineCone {
  growth_lo: number;
  growth_hi: number;
  efficiency_lo: number;
  efficiency_hi: number;
}

export interface BaselineSection {
  strategy: string;
  base_value: Quantity;
  intro_period?: number;
  growth_rate?: number;
  efficiency_rate?: number;
  cone?: BaselineCone;
  with_service?: Quantity[];
  [key: string]: unknown;
}

export interface ScenarioBody {
  service_id: string;
  activity_id: string;
  mechanism: string;
  period: { unit: string; label?: string };
  perspective: { kind: string; [key: string]: unknown };
  estimation_path: string;
  coefficient: { k: number; source: string };
  partition?: { modified_count: number; [key: string]: unknown };
  case_study?: {
    sampling: string;
    modified: CaseStudyUsage[];
    rebound?: ReboundUsage[];
    [key: string]: unknown;
  };
  rebound_model?: {
    usage_total: number;
    rebound_share: number;
    per_usage_activity?: Quantity;
    per_usage_optimized?: Quantity;
    per_usage_service?: Quantity;
  };
  model_average?: Quantity;
  evidence?: Record<string, unknown>;
  [key: string]: unknown;
}

export interface ScenarioDocument {
  schema_version: number;
  metadata?: Record<string, unknown>;
  scenario: ScenarioBody;
  baseline?: BaselineSection;
  distributions?: DistributionSpec[];
  [key: string]: unknown;
}

export type Severity = "error" | "warning" | "advisory";

export interface AuditFlag {
  code: string;
  severity: Severity;
  message: string;
  rule_source: string;
}

export interface ValidationIssue {
  code: string;
  path: string;
  message: string;
  severity: Severity;
}

export interface EffectInterval {
  confidence: number;
  lo_kg: number;
  hi_kg: number;
  method: string;
}

export interface ResultBlock {
  effect_kg: number;
  naive_effect_kg: number | null;
  overstatement_kg: number | null;
  per_usage_average_kg: number | null;
  interval: EffectInterval;
}

export interface TrajectoryPoint {
  period: number;
  baseline_kg: number;
  baseline_lo_kg: number;
  baseline_hi_kg: number;
  with_service_kg: number | null;
  effect_kg: number | null;
  effect_lo_kg: number | null;
  effect_hi_kg: number | null;
}

export interface BootstrapBlock {
  confidence: number;
  lo_kg: number;
  hi_kg: number;
  point_kg: number;
  resamples: number;
}

export interface MonteCarloBlock {
  mean_kg: number;
  sd_kg: number;
  q05_kg: number;
  q50_kg: number;
  q95_kg: number;
  samples: number;
  histogram: { counts: number[]; edges_kg: number[] };
  data_uncertainty_targets: string[];
  future_uncertainty_targets: string[];
  untagged_targets: string[];
}

export interface Provenance {
  engine_version: string;
  seed: number;
  options: Record<string, unknown>;
  document: ScenarioDocument;
}

export interface AssessmentReport {
  schema_version: number;
  unit: string;
  result: ResultBlock;
  audit_flags: AuditFlag[];
  validation_warnings: ValidationIssue[];
  baseline_trajectory: TrajectoryPoint[] | null;
  bootstrap: BootstrapBlock | null;
  monte_carlo: MonteCarloBlock | null;
  usage_split_checklist: string[];
  provenance: Provenance;
}

export interface TornadoRow {
  target: string;
  low_value: number;
  high_value: number;
  effect_low_kg: number;
  effect_high_kg: number;
  swing_kg: number;
}

export interface TornadoReport {
  mode: "tornado";
  base_effect_kg: number;
  rows: TornadoRow[];
  schema_version: number;
  seed: number | null;
  provenance: { engine_version: string; document: ScenarioDocument };
}

export interface MonteCarloSensitivity {
  mode: "montecarlo";
  monte_carlo: MonteCarloBlock;
  schema_version: number;
  seed: number;
  provenance: { engine_version: string; document: ScenarioDocument };
}

export interface BaselineTable {
  horizon: number;
  points: TrajectoryPoint[];
  [key: string]: unknown;
}

export interface ErrorEnvelope {
  error: {
    code: string;
    path: string;
    message: string;
    issues?: ValidationIssue[];
  };
}
