// Display formatting. Numbers shown to users follow the reporting
// conventions of the service's text output: probabilities at two decimals,
// proportions as one-decimal percentages.

export function prob(value: number): string {
  return value.toFixed(2);
}

export function percent(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
