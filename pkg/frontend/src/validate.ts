// Client-side validation mirroring the server's invariants, so obviously
// invalid forms never generate a request. Everything works on the raw string
// field values; a null error map entry means the field parses and passes.

export type FieldErrors = Record<string, string>;

export function parseNumber(raw: string): number | null {
  if (raw.trim() === "") {
    return null;
  }
  const value = Number(raw);
  return Number.isFinite(value) ? value : null;
}

export function parseInteger(raw: string): number | null {
  const value = parseNumber(raw);
  if (value === null || !Number.isInteger(value)) {
    return null;
  }
  return value;
}

function checkPrior(errors: FieldErrors, field: string, alpha: string, beta: string): void {
  const a = parseNumber(alpha);
  const b = parseNumber(beta);
  if (a === null || a <= 0) {
    errors[`${field}_alpha`] = "shape must be a positive number";
  }
  if (b === null || b <= 0) {
    errors[`${field}_beta`] = "shape must be a positive number";
  }
}

function checkOpenUnit(errors: FieldErrors, field: string, raw: string, label: string): void {
  const value = parseNumber(raw);
  if (value === null || value <= 0 || value >= 1) {
    errors[field] = `${label} must lie strictly between 0 and 1`;
  }
}

export interface DesignFormFields {
  prior_a_alpha: string;
  prior_a_beta: string;
  prior_b_alpha: string;
  prior_b_beta: string;
  expected_rate_a: string;
  expected_rate_b: string;
  margin: string;
  ambiguity_weight: string;
  design_threshold: string;
  decision_threshold: string;
  n_lo: string;
  n_hi: string;
  replicates: string;
  seed: string;
}

export function validateDesignForm(form: DesignFormFields): FieldErrors {
  const errors: FieldErrors = {};
  checkPrior(errors, "prior_a", form.prior_a_alpha, form.prior_a_beta);
  checkPrior(errors, "prior_b", form.prior_b_alpha, form.prior_b_beta);
  checkOpenUnit(errors, "expected_rate_a", form.expected_rate_a, "rate");
  checkOpenUnit(errors, "expected_rate_b", form.expected_rate_b, "rate");
  const rateA = parseNumber(form.expected_rate_a);
  const rateB = parseNumber(form.expected_rate_b);
  if (rateA !== null && rateB !== null && !(rateA > rateB) && !errors.expected_rate_a) {
    errors.expected_rate_b = "arm A is the assumed-better arm: its rate must exceed arm B's";
  }
  const margin = parseNumber(form.margin);
  if (margin === null || margin < 0 || margin >= 1) {
    errors.margin = "margin must lie in [0, 1)";
  }
  const weight = parseNumber(form.ambiguity_weight);
  if (weight === null || weight < 0 || weight > 1) {
    errors.ambiguity_weight = "weight must lie in [0, 1]";
  }
  checkOpenUnit(errors, "design_threshold", form.design_threshold, "threshold");
  checkOpenUnit(errors, "decision_threshold", form.decision_threshold, "threshold");
  const nLo = parseInteger(form.n_lo);
  const nHi = parseInteger(form.n_hi);
  if (nLo === null || nLo < 1) {
    errors.n_lo = "lower bound must be a positive integer";
  }
  if (nHi === null || nHi < 1) {
    errors.n_hi = "upper bound must be a positive integer";
  }
  if (nLo !== null && nHi !== null && nLo > nHi && !errors.n_lo && !errors.n_hi) {
    errors.n_hi = "upper bound must be at least the lower bound";
  }
  const replicates = parseInteger(form.replicates);
  if (replicates === null || replicates < 1) {
    errors.replicates = "replicates must be a positive integer";
  }
  const seed = parseInteger(form.seed);
  if (seed === null || seed < 0) {
    errors.seed = "seed must be a nonnegative integer";
  }
  return errors;
}

export interface AnalyzeFormFields {
  prior_a_alpha: string;
  prior_a_beta: string;
  prior_b_alpha: string;
  prior_b_beta: string;
  n_a: string;
  responders_a: string;
  n_b: string;
  responders_b: string;
  margin: string;
  ambiguity_weight: string;
  decision_threshold: string;
}

function checkArm(errors: FieldErrors, nField: string, sField: string, n: string, s: string): void {
  const count = parseInteger(n);
  const responders = parseInteger(s);
  if (count === null || count < 0) {
    errors[nField] = "patient count must be a nonnegative integer";
  }
  if (responders === null || responders < 0) {
    errors[sField] = "responder count must be a nonnegative integer";
  } else if (count !== null && responders > count) {
    errors[sField] = "responders cannot exceed the patient count";
  }
}

export function validateAnalyzeForm(form: AnalyzeFormFields): FieldErrors {
  const errors: FieldErrors = {};
  checkPrior(errors, "prior_a", form.prior_a_alpha, form.prior_a_beta);
  checkPrior(errors, "prior_b", form.prior_b_alpha, form.prior_b_beta);
  checkArm(errors, "n_a", "responders_a", form.n_a, form.responders_a);
  checkArm(errors, "n_b", "responders_b", form.n_b, form.responders_b);
  const margin = parseNumber(form.margin);
  if (margin === null || margin < 0 || margin >= 1) {
    errors.margin = "margin must lie in [0, 1)";
  }
  const weight = parseNumber(form.ambiguity_weight);
  if (weight === null || weight < 0 || weight > 1) {
    errors.ambiguity_weight = "weight must lie in [0, 1]";
  }
  checkOpenUnit(errors, "decision_threshold", form.decision_threshold, "threshold");
  return errors;
}

export interface OcFormFields {
  label: string;
  true_rate_a: string;
  true_rate_b: string;
  prior_a_alpha: string;
  prior_a_beta: string;
  prior_b_alpha: string;
  prior_b_beta: string;
  margin: string;
  ambiguity_weight: string;
  n_per_arm: string;
  decision_threshold: string;
  replicates: string;
  seed: string;
}

export function validateOcForm(form: OcFormFields): FieldErrors {
  const errors: FieldErrors = {};
  for (const field of ["true_rate_a", "true_rate_b"] as const) {
    const value = parseNumber(form[field]);
    if (value === null || value < 0 || value > 1) {
      errors[field] = "rate must lie in [0, 1]";
    }
  }
  checkPrior(errors, "prior_a", form.prior_a_alpha, form.prior_a_beta);
  checkPrior(errors, "prior_b", form.prior_b_alpha, form.prior_b_beta);
  const margin = parseNumber(form.margin);
  if (margin === null || margin < 0 || margin >= 1) {
    errors.margin = "margin must lie in [0, 1)";
  }
  const weight = parseNumber(form.ambiguity_weight);
  if (weight === null || weight < 0 || weight > 1) {
    errors.ambiguity_weight = "weight must lie in [0, 1]";
  }
  const n = parseInteger(form.n_per_arm);
  if (n === null || n < 1) {
    errors.n_per_arm = "patients per arm must be a positive integer";
  }
  checkOpenUnit(errors, "decision_threshold", form.decision_threshold, "threshold");
  const replicates = parseInteger(form.replicates);
  if (replicates === null || replicates < 1) {
    errors.replicates = "replicates must be a positive integer";
  }
  const seed = parseInteger(form.seed);
  if (seed === null || seed < 0) {
    errors.seed = "seed must be a nonnegative integer";
  }
  return errors;
}
