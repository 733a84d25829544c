// Sample size panel: design form, required size, score-versus-size curve
// with the design-threshold line, and prior density silhouettes.

import { escapeHtml, prob } from "../format.js";
import { curvePlot, densityPlot, type PlotSeries } from "../plot.js";
import {
  curveCacheKey,
  designBodyHash,
  designFormValid,
  designHash,
  designResultStale,
  type SessionState,
} from "../state.js";
import { validateDesignForm } from "../validate.js";
import { fieldRow, presetRow, staleBadge } from "./widgets.js";

const THRESHOLD_PRESETS = ["0.80", "0.90"];

export function renderDesignPanel(state: SessionState): string {
  const errors = validateDesignForm(state.designForm);
  const form = state.designForm;
  const stale = designResultStale(state);

  const fields = [
    fieldRow("design", "prior_a_alpha", "Arm A prior: pseudo-responders", form.prior_a_alpha, errors),
    fieldRow("design", "prior_a_beta", "Arm A prior: pseudo-non-responders", form.prior_a_beta, errors),
    fieldRow("design", "prior_b_alpha", "Arm B prior: pseudo-responders", form.prior_b_alpha, errors),
    fieldRow("design", "prior_b_beta", "Arm B prior: pseudo-non-responders", form.prior_b_beta, errors),
    fieldRow("design", "expected_rate_a", "Expected response rate, arm A", form.expected_rate_a, errors),
    fieldRow("design", "expected_rate_b", "Expected response rate, arm B", form.expected_rate_b, errors),
    fieldRow("design", "margin", "Clinically meaningful difference", form.margin, errors),
    fieldRow("design", "ambiguity_weight", "Ambiguity weight", form.ambiguity_weight, errors),
    presetRow("design", "design_threshold", "Design threshold", form.design_threshold, THRESHOLD_PRESETS, errors),
    presetRow("design", "decision_threshold", "Decision threshold", form.decision_threshold, THRESHOLD_PRESETS, errors),
    fieldRow("design", "n_lo", "Search lower bound", form.n_lo, errors),
    fieldRow("design", "n_hi", "Search upper bound", form.n_hi, errors),
    fieldRow("design", "replicates", "Simulation replicates", form.replicates, errors),
    fieldRow("design", "seed", "Random seed", form.seed, errors),
  ].join("");

  const methodToggle = `
    <div class="row">
      <label>Method</label>
      <select data-action="design-method">
        <option value="deterministic"${state.designMethod === "deterministic" ? " selected" : ""}>deterministic (plug-in score)</option>
        <option value="simulated"${state.designMethod === "simulated" ? " selected" : ""}>simulated (averaged score)</option>
      </select>
    </div>`;

  const canCompute = designFormValid(form) && state.pending === null;
  const compute = `<button data-action="compute-design"${canCompute ? "" : " disabled"}>Compute sample size</button>`;

  let resultBlock = `<p class="placeholder">No result yet — fill in the design and compute.</p>`;
  if (state.designResult !== null) {
    const result = state.designResult.value;
    const sizeText = result.under_lower_bound
      ? "below the scanned lower bound (criterion holds everywhere scanned)"
      : String(result.n_min);
    resultBlock = `
      <div class="result${stale ? " stale" : ""}" data-role="design-result">
        ${stale ? staleBadge() : ""}
        <p class="headline">n per group: <strong data-role="n-min">${escapeHtml(sizeText)}</strong></p>
        <p>method: ${escapeHtml(result.method)}, threshold ${prob(result.threshold)}</p>
        ${renderCurves(state)}
      </div>`;
  }

  const densities = densityPlot([
    { label: "arm A prior", alpha: Number(form.prior_a_alpha) || 1, beta: Number(form.prior_a_beta) || 1 },
    { label: "arm B prior", alpha: Number(form.prior_b_alpha) || 1, beta: Number(form.prior_b_beta) || 1 },
  ]);

  return `
    <section class="panel" data-panel="design">
      <h2>Sample size</h2>
      <form data-form="design">${fields}${methodToggle}${compute}</form>
      ${resultBlock}
      <h3>Prior densities</h3>
      ${densities}
    </section>`;
}

function renderCurves(state: SessionState): string {
  const result = state.designResult;
  if (result === null) {
    return "";
  }
  const series: PlotSeries[] = [];
  // overlay the deterministic and simulated curves when both are cached for
  // the spec the displayed result belongs to
  let bodyHash: string | null = null;
  try {
    bodyHash = designBodyHash(state.designForm);
  } catch {
    bodyHash = null;
  }
  if (bodyHash !== null) {
    for (const method of ["deterministic", "simulated"] as const) {
      const entry = state.curveCache[curveCacheKey(bodyHash, method)];
      if (entry) {
        series.push({ label: method, points: entry.points });
      }
    }
  }
  const current = result.value;
  if (series.length === 0) {
    series.push({ label: current.method, points: current.curve });
  }
  const marker = current.under_lower_bound || current.n_min === null ? undefined : current.n_min;
  return curvePlot(series, current.threshold, marker);
}

export function currentDesignHash(state: SessionState): string {
  return designHash(state.designForm, state.designMethod);
}
