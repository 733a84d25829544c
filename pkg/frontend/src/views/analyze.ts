// Trial analysis panel: observed data in, posterior probabilities, the
// selection score against its threshold gauge, posterior densities and the
// categorical decision out.

import { escapeHtml, prob } from "../format.js";
import { densityPlot } from "../plot.js";
import { analyzeFormValid, analyzeResultStale, type SessionState } from "../state.js";
import { validateAnalyzeForm } from "../validate.js";
import { fieldRow, staleBadge } from "./widgets.js";

export function renderAnalyzePanel(state: SessionState): string {
  const form = state.analyzeForm;
  const errors = validateAnalyzeForm(form);
  const stale = analyzeResultStale(state);

  const fields = [
    fieldRow("analyze", "prior_a_alpha", "Arm A prior: pseudo-responders", form.prior_a_alpha, errors),
    fieldRow("analyze", "prior_a_beta", "Arm A prior: pseudo-non-responders", form.prior_a_beta, errors),
    fieldRow("analyze", "prior_b_alpha", "Arm B prior: pseudo-responders", form.prior_b_alpha, errors),
    fieldRow("analyze", "prior_b_beta", "Arm B prior: pseudo-non-responders", form.prior_b_beta, errors),
    fieldRow("analyze", "n_a", "Arm A patients", form.n_a, errors),
    fieldRow("analyze", "responders_a", "Arm A responders", form.responders_a, errors),
    fieldRow("analyze", "n_b", "Arm B patients", form.n_b, errors),
    fieldRow("analyze", "responders_b", "Arm B responders", form.responders_b, errors),
    fieldRow("analyze", "margin", "Clinically meaningful difference", form.margin, errors),
    fieldRow("analyze", "ambiguity_weight", "Ambiguity weight", form.ambiguity_weight, errors),
    fieldRow("analyze", "decision_threshold", "Decision threshold", form.decision_threshold, errors),
  ].join("");

  const canCompute = analyzeFormValid(form) && state.pending === null;
  const compute = `<button data-action="compute-analyze"${canCompute ? "" : " disabled"}>Analyze trial</button>`;

  let resultBlock = `<p class="placeholder">No analysis yet.</p>`;
  if (state.analyzeResult !== null) {
    const report = state.analyzeResult.value;
    const decisionText =
      report.decision === "select_a" ? "select treatment A" : "consider other factors";
    const threshold = Number(form.decision_threshold) || 0.9;
    const gauge = renderGauge(report.lambda_star, threshold);
    const densities = densityPlot([
      { label: "arm A posterior", alpha: report.posterior_a.alpha, beta: report.posterior_a.beta },
      { label: "arm B posterior", alpha: report.posterior_b.alpha, beta: report.posterior_b.beta },
    ]);
    resultBlock = `
      <div class="result${stale ? " stale" : ""}" data-role="analyze-result">
        ${stale ? staleBadge() : ""}
        <p class="headline">λ* = <strong data-role="lambda-star">${prob(report.lambda_star)}</strong></p>
        <ul>
          <li>probability the arm-A rate exceeds arm B's by more than the margin: ${prob(report.p_correct)}</li>
          <li>probability the arms lie within the margin of each other: ${prob(report.p_ambiguous)}</li>
          <li>probability arm A trails by more than the margin: ${prob(report.p_below)}</li>
        </ul>
        ${gauge}
        <p class="decision-banner" data-role="decision">${escapeHtml(decisionText)}</p>
        <p class="rule-note">rule: select treatment A if the score exceeds ${prob(threshold)},
        otherwise weigh secondary factors (toxicity, cost, ease of administration, quality of life).</p>
        ${densities}
      </div>`;
  }

  return `
    <section class="panel" data-panel="analyze">
      <h2>Trial analysis</h2>
      <form data-form="analyze">${fields}${compute}</form>
      ${resultBlock}
    </section>`;
}

function renderGauge(score: number, threshold: number): string {
  const width = 420;
  const pos = Math.max(0, Math.min(1, score)) * width;
  const thresholdPos = Math.max(0, Math.min(1, threshold)) * width;
  return `
    <svg viewBox="0 0 ${width + 20} 36" class="gauge" role="img">
      <rect x="10" y="12" width="${width}" height="10" fill="#e5e7eb" rx="4"/>
      <rect x="10" y="12" width="${pos.toFixed(1)}" height="10" fill="#2563eb" rx="4"/>
      <line x1="${(10 + thresholdPos).toFixed(1)}" y1="6" x2="${(10 + thresholdPos).toFixed(1)}" y2="30" stroke="#dc2626" stroke-width="2"/>
    </svg>`;
}
