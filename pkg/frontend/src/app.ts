// Application controller: owns the session state, performs server calls, and
// re-renders the active panel into the mount point. Views are pure
// state-to-HTML functions; this is the only module that touches the DOM.

import { ApiClient, ApiError } from "./api.js";
import { escapeHtml } from "./format.js";
import {
  analyzeBody,
  analyzeFormValid,
  designBody,
  designBodyHash,
  designFormValid,
  designHash,
  initialState,
  ocBody,
  ocFormValid,
  reportHash,
  setAnalyzeField,
  setDesignField,
  setOcField,
  specHash,
  storeAnalyzeResult,
  storeDesignResult,
  storeOcResult,
  storeReport,
  FULL_PRECISION_REPLICATES,
  type PanelName,
  type SessionState,
} from "./state.js";
import type { AnalyzeFormFields, DesignFormFields, OcFormFields } from "./validate.js";
import { renderAnalyzePanel } from "./views/analyze.js";
import { renderDesignPanel } from "./views/design.js";
import { renderOcPanel } from "./views/oc.js";
import { renderReportPanel } from "./views/report.js";

const PANELS: { name: PanelName; label: string }[] = [
  { name: "design", label: "Design" },
  { name: "analyze", label: "Analyze" },
  { name: "oc", label: "Operating characteristics" },
  { name: "report", label: "Reports" },
];

export function renderApp(state: SessionState): string {
  const tabs = PANELS.map(
    ({ name, label }) =>
      `<button class="tab${state.activePanel === name ? " active" : ""}" data-tab="${name}">${label}</button>`,
  ).join("");
  const panel = {
    design: renderDesignPanel,
    analyze: renderAnalyzePanel,
    oc: renderOcPanel,
    report: renderReportPanel,
  }[state.activePanel](state);
  const pending = state.pending
    ? `<div class="pending" data-role="pending">${escapeHtml(state.pending)}</div>`
    : "";
  const error = state.lastError
    ? `<div class="error-banner" data-role="error">${escapeHtml(state.lastError)}</div>`
    : "";
  return `
    <header><h1>selecta design studio</h1><nav>${tabs}</nav></header>
    ${pending}${error}
    <main>${panel}</main>`;
}

export class App {
  state: SessionState;
  private readonly root: HTMLElement;
  private readonly api: ApiClient;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.state = initialState();
    root.addEventListener("click", (event) => this.onClick(event));
    root.addEventListener("input", (event) => this.onInput(event));
    root.addEventListener("change", (event) => this.onChange(event));
    this.render();
  }

  render(): void {
    this.root.innerHTML = renderApp(this.state);
  }

  private update(next: SessionState): void {
    this.state = next;
    this.render();
  }

  private onInput(event: Event): void {
    const target = event.target as HTMLInputElement;
    const panel = target.dataset.panelField;
    if (!panel) {
      return;
    }
    const name = target.getAttribute("name") ?? "";
    if (panel === "design") {
      this.update(setDesignField(this.state, name as keyof DesignFormFields, target.value));
    } else if (panel === "analyze") {
      this.update(setAnalyzeField(this.state, name as keyof AnalyzeFormFields, target.value));
    } else if (panel === "oc") {
      this.update(setOcField(this.state, name as keyof OcFormFields, target.value));
    }
  }

  private onChange(event: Event): void {
    const target = event.target as HTMLSelectElement;
    if (target.dataset.action === "design-method") {
      this.update({ ...this.state, designMethod: target.value as "deterministic" | "simulated" });
      return;
    }
    if (target.dataset.action === "report-template") {
      this.update({
        ...this.state,
        reportTemplate: target.value as "protocol" | "sap" | "summary",
      });
      return;
    }
    const presetFor = target.dataset.presetFor;
    if (presetFor && target.dataset.panelFieldPreset === "design") {
      const value = target.value === "custom" ? "" : target.value;
      this.update(setDesignField(this.state, presetFor as keyof DesignFormFields, value));
    }
  }

  private onClick(event: Event): void {
    const target = (event.target as HTMLElement).closest("[data-tab],[data-action]");
    if (!(target instanceof HTMLElement)) {
      return;
    }
    const tab = target.dataset.tab;
    if (tab) {
      this.update({ ...this.state, activePanel: tab as PanelName });
      return;
    }
    switch (target.dataset.action) {
      case "compute-design":
        void this.computeDesign();
        break;
      case "compute-analyze":
        void this.computeAnalyze();
        break;
      case "compute-oc":
        void this.computeOc();
        break;
      case "oc-full-precision":
        this.update(setOcField(this.state, "replicates", String(FULL_PRECISION_REPLICATES)));
        void this.computeOc();
        break;
      case "generate-report":
        void this.generateReport();
        break;
      case "download-report":
        this.downloadReport();
        break;
    }
  }

  async computeDesign(): Promise<void> {
    if (!designFormValid(this.state.designForm)) {
      return;
    }
    const hash = designHash(this.state.designForm, this.state.designMethod);
    const bodyHash = designBodyHash(this.state.designForm);
    const body = designBody(this.state.designForm);
    this.update({ ...this.state, pending: "computing sample size…" });
    try {
      const [sizeEnvelope, curveEnvelope] = await Promise.all([
        this.api.sampleSize(body, this.state.designMethod),
        this.api.curve(body, this.state.designMethod, body.n_lo ?? 10, body.n_hi ?? 1000),
      ]);
      const next = storeDesignResult(
        { ...this.state, pending: null },
        hash,
        bodyHash,
        sizeEnvelope.result,
      );
      // the dedicated curve response covers the full requested range even
      // when the search scanned only part of it
      next.curveCache[`${bodyHash}|${this.state.designMethod}`] = {
        points: curveEnvelope.result.points,
        method: this.state.designMethod,
      };
      this.update(next);
    } catch (error) {
      this.fail(error);
    }
  }

  async computeAnalyze(): Promise<void> {
    if (!analyzeFormValid(this.state.analyzeForm)) {
      return;
    }
    const body = analyzeBody(this.state.analyzeForm);
    const hash = specHash(body);
    this.update({ ...this.state, pending: "analyzing…" });
    try {
      const envelope = await this.api.analyze(body);
      this.update(storeAnalyzeResult({ ...this.state, pending: null }, hash, envelope.result));
    } catch (error) {
      this.fail(error);
    }
  }

  async computeOc(): Promise<void> {
    if (!ocFormValid(this.state.ocForm)) {
      return;
    }
    const body = ocBody(this.state.ocForm);
    const hash = specHash(body);
    this.update({ ...this.state, pending: "simulating…" });
    try {
      const envelope = await this.api.oc(body);
      this.update(storeOcResult({ ...this.state, pending: null }, hash, envelope.result));
    } catch (error) {
      this.fail(error);
    }
  }

  async generateReport(): Promise<void> {
    if (!designFormValid(this.state.designForm)) {
      return;
    }
    const hash = reportHash(this.state);
    const body = designBody(this.state.designForm);
    this.update({ ...this.state, pending: "generating report…" });
    try {
      const envelope = await this.api.report(
        "design",
        this.state.reportTemplate,
        body,
        this.state.designMethod,
      );
      this.update(storeReport({ ...this.state, pending: null }, hash, envelope.result.text));
    } catch (error) {
      this.fail(error);
    }
  }

  private downloadReport(): void {
    if (this.state.reportText === null) {
      return;
    }
    const blob = new Blob([this.state.reportText.value], { type: "text/plain" });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = `selecta-${this.state.reportTemplate}.txt`;
    anchor.click();
    URL.revokeObjectURL(url);
  }

  private fail(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `${error.kind}: ${error.message}`
        : error instanceof Error
          ? error.message
          : String(error);
    this.update({ ...this.state, pending: null, lastError: message });
  }
}
