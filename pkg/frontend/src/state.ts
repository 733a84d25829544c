// Session state and transitions for the design studio.
//
// Every computed result is tagged with a hash of the exact request that
// produced it; a panel shows its result only alongside a freshness check of
// that hash against the current form, so edited forms immediately flag the
// displayed numbers as stale until recomputed. Numeric work happens on the
// server; this module only shuffles request and response payloads.

import type {
  AnalyzeBody,
  DecisionReport,
  DesignSpecBody,
  OcResult,
  OcScenarioBody,
  SampleSizeResult,
  SearchMethod,
} from "./types.js";
import {
  type AnalyzeFormFields,
  type DesignFormFields,
  type OcFormFields,
  parseInteger,
  parseNumber,
  validateAnalyzeForm,
  validateDesignForm,
  validateOcForm,
} from "./validate.js";

export const FULL_PRECISION_REPLICATES = 100_000;
export const INTERACTIVE_REPLICATES = 10_000;

export interface Tagged<T> {
  specHash: string;
  value: T;
}

export interface CurveCacheEntry {
  points: [number, number][];
  method: SearchMethod;
}

export type PanelName = "design" | "analyze" | "oc" | "report";

export interface SessionState {
  activePanel: PanelName;
  designForm: DesignFormFields;
  designMethod: SearchMethod;
  analyzeForm: AnalyzeFormFields;
  ocForm: OcFormFields;
  designResult: Tagged<SampleSizeResult> | null;
  analyzeResult: Tagged<DecisionReport> | null;
  ocResult: Tagged<OcResult> | null;
  reportText: Tagged<string> | null;
  reportTemplate: "protocol" | "sap" | "summary";
  curveCache: Record<string, CurveCacheEntry>;
  pending: string | null;
  lastError: string | null;
}

export function initialState(): SessionState {
  return {
    activePanel: "design",
    designForm: {
      prior_a_alpha: "1",
      prior_a_beta: "1",
      prior_b_alpha: "1",
      prior_b_beta: "1",
      expected_rate_a: "0.20",
      expected_rate_b: "0.05",
      margin: "0.05",
      ambiguity_weight: "0",
      design_threshold: "0.90",
      decision_threshold: "0.90",
      n_lo: "10",
      n_hi: "200",
      replicates: String(FULL_PRECISION_REPLICATES),
      seed: "20240",
    },
    designMethod: "deterministic",
    analyzeForm: {
      prior_a_alpha: "1",
      prior_a_beta: "1",
      prior_b_alpha: "1",
      prior_b_beta: "1",
      n_a: "40",
      responders_a: "22",
      n_b: "40",
      responders_b: "16",
      margin: "0.10",
      ambiguity_weight: "0.5",
      decision_threshold: "0.90",
    },
    ocForm: {
      label: "scenario",
      true_rate_a: "0.30",
      true_rate_b: "0.15",
      prior_a_alpha: "1",
      prior_a_beta: "1",
      prior_b_alpha: "1",
      prior_b_beta: "1",
      margin: "0.05",
      ambiguity_weight: "0.5",
      n_per_arm: "39",
      decision_threshold: "0.90",
      replicates: String(INTERACTIVE_REPLICATES),
      seed: "20240",
    },
    designResult: null,
    analyzeResult: null,
    ocResult: null,
    reportText: null,
    reportTemplate: "protocol",
    curveCache: {},
    pending: null,
    lastError: null,
  };
}

function stableStringify(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(stableStringify).join(",")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([key, inner]) => `${JSON.stringify(key)}:${stableStringify(inner)}`);
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}

export function specHash(body: unknown): string {
  return stableStringify(body);
}

function num(raw: string): number {
  const value = parseNumber(raw);
  if (value === null) {
    throw new Error(`form field does not parse as a number: ${raw}`);
  }
  return value;
}

function int(raw: string): number {
  const value = parseInteger(raw);
  if (value === null) {
    throw new Error(`form field does not parse as an integer: ${raw}`);
  }
  return value;
}

export function designBody(form: DesignFormFields): DesignSpecBody {
  return {
    prior_a: [num(form.prior_a_alpha), num(form.prior_a_beta)],
    prior_b: [num(form.prior_b_alpha), num(form.prior_b_beta)],
    expected_rate_a: num(form.expected_rate_a),
    expected_rate_b: num(form.expected_rate_b),
    margin: num(form.margin),
    ambiguity_weight: num(form.ambiguity_weight),
    design_threshold: num(form.design_threshold),
    decision_threshold: num(form.decision_threshold),
    n_lo: int(form.n_lo),
    n_hi: int(form.n_hi),
    replicates: int(form.replicates),
    seed: int(form.seed),
  };
}

export function analyzeBody(form: AnalyzeFormFields): AnalyzeBody {
  return {
    prior_a: [num(form.prior_a_alpha), num(form.prior_a_beta)],
    prior_b: [num(form.prior_b_alpha), num(form.prior_b_beta)],
    data_a: { n: int(form.n_a), responders: int(form.responders_a) },
    data_b: { n: int(form.n_b), responders: int(form.responders_b) },
    margin: num(form.margin),
    ambiguity_weight: num(form.ambiguity_weight),
    decision_threshold: num(form.decision_threshold),
  };
}

export function ocBody(form: OcFormFields): OcScenarioBody {
  return {
    label: form.label,
    true_rate_a: num(form.true_rate_a),
    true_rate_b: num(form.true_rate_b),
    prior_a: [num(form.prior_a_alpha), num(form.prior_a_beta)],
    prior_b: [num(form.prior_b_alpha), num(form.prior_b_beta)],
    margin: num(form.margin),
    ambiguity_weight: num(form.ambiguity_weight),
    n_per_arm: int(form.n_per_arm),
    decision_threshold: num(form.decision_threshold),
    replicates: int(form.replicates),
    seed: int(form.seed),
  };
}

// hashes for the design panel also cover the search method, since the same
// spec under another method is a different computation
export function designHash(form: DesignFormFields, method: SearchMethod): string {
  return specHash({ body: designBody(form), method });
}

export function designBodyHash(form: DesignFormFields): string {
  return specHash(designBody(form));
}

export function curveCacheKey(bodyHash: string, method: SearchMethod): string {
  return `${bodyHash}|${method}`;
}

export function designFormValid(form: DesignFormFields): boolean {
  return Object.keys(validateDesignForm(form)).length === 0;
}

export function analyzeFormValid(form: AnalyzeFormFields): boolean {
  return Object.keys(validateAnalyzeForm(form)).length === 0;
}

export function ocFormValid(form: OcFormFields): boolean {
  return Object.keys(validateOcForm(form)).length === 0;
}

export function designResultStale(state: SessionState): boolean {
  if (state.designResult === null) {
    return false;
  }
  if (!designFormValid(state.designForm)) {
    return true;
  }
  return designHash(state.designForm, state.designMethod) !== state.designResult.specHash;
}

export function analyzeResultStale(state: SessionState): boolean {
  if (state.analyzeResult === null) {
    return false;
  }
  if (!analyzeFormValid(state.analyzeForm)) {
    return true;
  }
  return specHash(analyzeBody(state.analyzeForm)) !== state.analyzeResult.specHash;
}

export function ocResultStale(state: SessionState): boolean {
  if (state.ocResult === null) {
    return false;
  }
  if (!ocFormValid(state.ocForm)) {
    return true;
  }
  return specHash(ocBody(state.ocForm)) !== state.ocResult.specHash;
}

export function reportStale(state: SessionState): boolean {
  if (state.reportText === null) {
    return false;
  }
  if (!designFormValid(state.designForm)) {
    return true;
  }
  return reportHash(state) !== state.reportText.specHash;
}

export function reportHash(state: SessionState): string {
  return specHash({
    body: designBody(state.designForm),
    method: state.designMethod,
    template: state.reportTemplate,
  });
}

export function setDesignField(state: SessionState, field: keyof DesignFormFields, value: string): SessionState {
  return { ...state, designForm: { ...state.designForm, [field]: value } };
}

export function setAnalyzeField(state: SessionState, field: keyof AnalyzeFormFields, value: string): SessionState {
  return { ...state, analyzeForm: { ...state.analyzeForm, [field]: value } };
}

export function setOcField(state: SessionState, field: keyof OcFormFields, value: string): SessionState {
  return { ...state, ocForm: { ...state.ocForm, [field]: value } };
}

export function storeDesignResult(
  state: SessionState,
  hash: string,
  bodyHash: string,
  result: SampleSizeResult,
): SessionState {
  const cache = {
    ...state.curveCache,
    [curveCacheKey(bodyHash, state.designMethod)]: {
      points: result.curve,
      method: state.designMethod,
    },
  };
  return {
    ...state,
    designResult: { specHash: hash, value: result },
    curveCache: cache,
    lastError: null,
  };
}

export function storeAnalyzeResult(
  state: SessionState,
  hash: string,
  result: DecisionReport,
): SessionState {
  return { ...state, analyzeResult: { specHash: hash, value: result }, lastError: null };
}

export function storeOcResult(state: SessionState, hash: string, result: OcResult): SessionState {
  return { ...state, ocResult: { specHash: hash, value: result }, lastError: null };
}

export function storeReport(state: SessionState, hash: string, text: string): SessionState {
  return { ...state, reportText: { specHash: hash, value: text }, lastError: null };
}

export function ocUsesReducedPrecision(state: SessionState): boolean {
  const replicates = parseInteger(state.ocForm.replicates);
  return replicates !== null && replicates < FULL_PRECISION_REPLICATES;
}
