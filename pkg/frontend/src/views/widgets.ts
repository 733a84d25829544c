// Small shared rendering helpers: labelled inputs with inline validation
// messages, preset dropdowns with a free-entry escape hatch, and the
// stale-result badge.

import { escapeHtml } from "../format.js";
import type { FieldErrors } from "../validate.js";

export function staleBadge(): string {
  return `<span class="badge stale-badge" data-role="stale-badge">stale — form edited, recompute to refresh</span>`;
}

export function reducedPrecisionBadge(): string {
  return `<span class="badge precision-badge" data-role="reduced-precision-badge">reduced precision</span>`;
}

export function fieldRow(
  panel: string,
  name: string,
  label: string,
  value: string,
  errors: FieldErrors,
): string {
  const error = errors[name];
  const message = error
    ? `<span class="field-error" data-error-for="${name}">${escapeHtml(error)}</span>`
    : "";
  return `
    <div class="row${error ? " invalid" : ""}">
      <label for="${panel}-${name}">${escapeHtml(label)}</label>
      <input id="${panel}-${name}" name="${name}" data-panel-field="${panel}" value="${escapeHtml(value)}"/>
      ${message}
    </div>`;
}

export function presetRow(
  panel: string,
  name: string,
  label: string,
  value: string,
  presets: string[],
  errors: FieldErrors,
): string {
  const error = errors[name];
  const isPreset = presets.includes(value);
  const options = presets
    .map((p) => `<option value="${p}"${p === value ? " selected" : ""}>${p}</option>`)
    .join("");
  const custom = `<option value="custom"${isPreset ? "" : " selected"}>custom…</option>`;
  const freeEntry = isPreset
    ? ""
    : `<input id="${panel}-${name}" name="${name}" data-panel-field="${panel}" value="${escapeHtml(value)}"/>`;
  const message = error
    ? `<span class="field-error" data-error-for="${name}">${escapeHtml(error)}</span>`
    : "";
  return `
    <div class="row${error ? " invalid" : ""}">
      <label for="${panel}-${name}-preset">${escapeHtml(label)}</label>
      <select id="${panel}-${name}-preset" data-preset-for="${name}" data-panel-field-preset="${panel}">
        ${options}${custom}
      </select>
      ${freeEntry}
      ${message}
    </div>`;
}
