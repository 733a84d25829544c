// Report panel: protocol / SAP / summary text generated server-side from the
// design form, download included. The text is the same byte stream the CLI
// emits for identical inputs.

import { escapeHtml } from "../format.js";
import { designFormValid, reportStale, type SessionState } from "../state.js";
import { staleBadge } from "./widgets.js";

export function renderReportPanel(state: SessionState): string {
  const stale = reportStale(state);
  const templates = ["protocol", "sap", "summary"] as const;
  const options = templates
    .map(
      (t) =>
        `<option value="${t}"${state.reportTemplate === t ? " selected" : ""}>${t}</option>`,
    )
    .join("");
  const canGenerate = designFormValid(state.designForm) && state.pending === null;

  let body = `<p class="placeholder">Generate a report from the current design.</p>`;
  if (state.reportText !== null) {
    body = `
      <div class="result${stale ? " stale" : ""}" data-role="report-result">
        ${stale ? staleBadge() : ""}
        <pre data-role="report-text">${escapeHtml(state.reportText.value)}</pre>
        <button data-action="download-report"${stale ? " disabled" : ""}>Download</button>
      </div>`;
  }

  return `
    <section class="panel" data-panel="report">
      <h2>Protocol &amp; SAP text</h2>
      <div class="row">
        <label for="report-template">Template</label>
        <select id="report-template" data-action="report-template">${options}</select>
      </div>
      <button data-action="generate-report"${canGenerate ? "" : " disabled"}>Generate from design</button>
      ${body}
    </section>`;
}
