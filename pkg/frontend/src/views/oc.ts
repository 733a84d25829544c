// Operating characteristics panel. Interactive runs default to 10,000
// replicates with a visible reduced-precision badge; one click re-runs the
// same scenario at the full 100,000.

import { percent } from "../format.js";
import {
  FULL_PRECISION_REPLICATES,
  ocFormValid,
  ocResultStale,
  ocUsesReducedPrecision,
  type SessionState,
} from "../state.js";
import { validateOcForm } from "../validate.js";
import { fieldRow, reducedPrecisionBadge, staleBadge } from "./widgets.js";

export function renderOcPanel(state: SessionState): string {
  const form = state.ocForm;
  const errors = validateOcForm(form);
  const stale = ocResultStale(state);

  const fields = [
    fieldRow("oc", "label", "Scenario label", form.label, errors),
    fieldRow("oc", "true_rate_a", "True response rate, arm A", form.true_rate_a, errors),
    fieldRow("oc", "true_rate_b", "True response rate, arm B", form.true_rate_b, errors),
    fieldRow("oc", "prior_a_alpha", "Arm A prior: pseudo-responders", form.prior_a_alpha, errors),
    fieldRow("oc", "prior_a_beta", "Arm A prior: pseudo-non-responders", form.prior_a_beta, errors),
    fieldRow("oc", "prior_b_alpha", "Arm B prior: pseudo-responders", form.prior_b_alpha, errors),
    fieldRow("oc", "prior_b_beta", "Arm B prior: pseudo-non-responders", form.prior_b_beta, errors),
    fieldRow("oc", "margin", "Clinically meaningful difference", form.margin, errors),
    fieldRow("oc", "ambiguity_weight", "Ambiguity weight", form.ambiguity_weight, errors),
    fieldRow("oc", "n_per_arm", "Patients per arm", form.n_per_arm, errors),
    fieldRow("oc", "decision_threshold", "Decision threshold", form.decision_threshold, errors),
    fieldRow("oc", "replicates", "Replicates", form.replicates, errors),
    fieldRow("oc", "seed", "Random seed", form.seed, errors),
  ].join("");

  const canCompute = ocFormValid(form) && state.pending === null;
  const compute = `<button data-action="compute-oc"${canCompute ? "" : " disabled"}>Simulate</button>`;

  let resultBlock = `<p class="placeholder">No simulation yet.</p>`;
  if (state.ocResult !== null) {
    const result = state.ocResult.value;
    const reduced = result.replicates_used < FULL_PRECISION_REPLICATES;
    const rerun = reduced
      ? `<button data-action="oc-full-precision">Re-run at ${FULL_PRECISION_REPLICATES.toLocaleString("en-US")} replicates</button>`
      : "";
    resultBlock = `
      <div class="result${stale ? " stale" : ""}" data-role="oc-result">
        ${stale ? staleBadge() : ""}
        ${reduced ? reducedPrecisionBadge() : ""}
        <p class="headline">selected on efficacy: <strong data-role="xi">${percent(result.xi)}</strong></p>
        <p>deferred to secondary factors: <span data-role="nu">${percent(result.nu)}</span></p>
        <p>Monte-Carlo standard error ${(result.mc_standard_error * 100).toFixed(2)} percentage points
           over ${result.replicates_used.toLocaleString("en-US")} replicates</p>
        ${rerun}
      </div>`;
  }

  const plannedReduced = ocUsesReducedPrecision(state);
  return `
    <section class="panel" data-panel="oc">
      <h2>Operating characteristics</h2>
      ${plannedReduced ? `<p class="note">interactive runs use reduced replicates; full-precision re-run is one click after simulating</p>` : ""}
      <form data-form="oc">${fields}${compute}</form>
      ${resultBlock}
    </section>`;
}
