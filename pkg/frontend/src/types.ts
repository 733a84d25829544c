// Request and response shapes of the /v1 JSON API, mirrored field by field.

export interface BetaPrior {
  alpha: number;
  beta: number;
}

export interface DesignSpecBody {
  prior_a: [number, number];
  prior_b: [number, number];
  expected_rate_a: number;
  expected_rate_b: number;
  margin: number;
  ambiguity_weight: number;
  design_threshold: number;
  decision_threshold?: number;
  n_lo?: number;
  n_hi?: number;
  replicates?: number;
  seed?: number;
}

export interface ArmDataBody {
  n: number;
  responders: number;
}

export interface AnalyzeBody {
  prior_a: [number, number];
  prior_b: [number, number];
  data_a: ArmDataBody;
  data_b: ArmDataBody;
  margin: number;
  ambiguity_weight: number;
  decision_threshold: number;
}

export interface OcScenarioBody {
  label: string;
  true_rate_a: number;
  true_rate_b: number;
  prior_a: [number, number];
  prior_b: [number, number];
  margin: number;
  ambiguity_weight: number;
  n_per_arm: number;
  decision_threshold: number;
  replicates: number;
  seed: number;
}

export type SearchMethod = "deterministic" | "simulated";

export interface SampleSizeResult {
  method: string;
  n_min: number | null;
  under_lower_bound: boolean;
  threshold: number;
  curve: [number, number][];
}

export interface DecisionReport {
  p_correct: number;
  p_ambiguous: number;
  p_below: number;
  lambda_star: number;
  decision: "select_a" | "consider_other_factors";
  posterior_a: BetaPrior;
  posterior_b: BetaPrior;
}

export interface OcResult {
  xi: number;
  nu: number;
  mc_standard_error: number;
  replicates_used: number;
}

export interface CurveResult {
  method: SearchMethod;
  points: [number, number][];
}

export interface ReportResult {
  text: string;
}

export interface Envelope<T> {
  schema_version: string;
  request: unknown;
  elapsed_ms: number;
  result: T;
}

export interface DeferredResponse {
  status: "deferred";
  message: string;
  replicate_ceiling: number;
}

export interface ApiErrorBody {
  error: string;
  message: string;
  field?: string;
}

export type ReportKind = "design" | "analysis" | "oc";
export type ReportTemplate = "protocol" | "sap" | "summary";
