// Hand-rolled SVG plots: the score-versus-size curve with its threshold
// line, and Beta density silhouettes for the posterior/prior panels.
//
// Density curves are drawn from the server-provided shape parameters; the
// pointwise density evaluation here is presentation geometry only — every
// number the UI displays comes from a server response.

export interface PlotSeries {
  label: string;
  points: [number, number][];
}

const WIDTH = 560;
const HEIGHT = 240;
const PAD = 36;

function scale(
  lo: number,
  hi: number,
  outLo: number,
  outHi: number,
): (v: number) => number {
  const span = hi - lo || 1;
  return (v) => outLo + ((v - lo) / span) * (outHi - outLo);
}

function path(points: [number, number][], x: (v: number) => number, y: (v: number) => number): string {
  return points
    .map(([px, py], index) => `${index === 0 ? "M" : "L"}${x(px).toFixed(1)},${y(py).toFixed(1)}`)
    .join(" ");
}

const SERIES_COLORS = ["#2563eb", "#d97706", "#059669"];

export function curvePlot(series: PlotSeries[], threshold: number, marker?: number): string {
  const all = series.flatMap((s) => s.points);
  if (all.length === 0) {
    return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="plot" role="img"></svg>`;
  }
  const xs = all.map(([n]) => n);
  const ys = all.map(([, v]) => v).concat([threshold]);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys) - 0.02;
  const yHi = Math.max(...ys) + 0.02;
  const x = scale(xLo, xHi, PAD, WIDTH - 8);
  const y = scale(yLo, yHi, HEIGHT - PAD, 10);

  const curves = series
    .map(
      (s, i) =>
        `<path d="${path(s.points, x, y)}" fill="none" stroke="${SERIES_COLORS[i % SERIES_COLORS.length]}" stroke-width="1.6"><title>${s.label}</title></path>`,
    )
    .join("");
  const thresholdLine = `<line x1="${PAD}" y1="${y(threshold).toFixed(1)}" x2="${WIDTH - 8}" y2="${y(threshold).toFixed(1)}" stroke="#dc2626" stroke-dasharray="5 4" stroke-width="1"/>`;
  const markerLine = marker
    ? `<line x1="${x(marker).toFixed(1)}" y1="10" x2="${x(marker).toFixed(1)}" y2="${HEIGHT - PAD}" stroke="#6b7280" stroke-dasharray="2 3" stroke-width="1"/>`
    : "";
  const axes = `
    <line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - 8}" y2="${HEIGHT - PAD}" stroke="#111" stroke-width="1"/>
    <line x1="${PAD}" y1="10" x2="${PAD}" y2="${HEIGHT - PAD}" stroke="#111" stroke-width="1"/>
    <text x="${WIDTH / 2}" y="${HEIGHT - 6}" text-anchor="middle" class="axis">patients per group</text>
    <text x="${PAD - 6}" y="${y(threshold).toFixed(1)}" text-anchor="end" class="axis">${threshold.toFixed(2)}</text>
    <text x="${PAD - 6}" y="16" text-anchor="end" class="axis">${yHi.toFixed(2)}</text>
    <text x="${PAD - 6}" y="${HEIGHT - PAD}" text-anchor="end" class="axis">${yLo.toFixed(2)}</text>
    <text x="${PAD}" y="${HEIGHT - PAD + 14}" text-anchor="middle" class="axis">${xLo}</text>
    <text x="${WIDTH - 8}" y="${HEIGHT - PAD + 14}" text-anchor="end" class="axis">${xHi}</text>`;
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="plot" role="img">${axes}${thresholdLine}${markerLine}${curves}</svg>`;
}

// Lanczos log-gamma, good to ~13 digits: ample for on-screen curve geometry.
const LANCZOS = [
  676.5203681218851, -1259.1392167224028, 771.32342877765313,
  -176.61502916214059, 12.507343278686905, -0.13857109526572012,
  9.9843695780195716e-6, 1.5056327351493116e-7,
];

function logGamma(z: number): number {
  if (z < 0.5) {
    return Math.log(Math.PI / Math.sin(Math.PI * z)) - logGamma(1 - z);
  }
  z -= 1;
  let acc = 0.99999999999980993;
  for (let i = 0; i < LANCZOS.length; i++) {
    acc += LANCZOS[i]! / (z + i + 1);
  }
  const t = z + LANCZOS.length - 0.5;
  return 0.5 * Math.log(2 * Math.PI) + (z + 0.5) * Math.log(t) - t + Math.log(acc);
}

export function betaDensityPoints(alpha: number, beta: number, samples = 161): [number, number][] {
  const logNorm = logGamma(alpha + beta) - logGamma(alpha) - logGamma(beta);
  const points: [number, number][] = [];
  for (let i = 1; i < samples; i++) {
    const x = i / samples;
    const logPdf = logNorm + (alpha - 1) * Math.log(x) + (beta - 1) * Math.log(1 - x);
    points.push([x, Math.exp(logPdf)]);
  }
  return points;
}

export function densityPlot(
  series: { label: string; alpha: number; beta: number }[],
): string {
  const curves = series.map((s) => ({
    label: `${s.label} Beta(${s.alpha}, ${s.beta})`,
    points: betaDensityPoints(s.alpha, s.beta),
  }));
  const ys = curves.flatMap((c) => c.points.map(([, v]) => v));
  const yHi = Math.max(...ys, 1) * 1.05;
  const x = scale(0, 1, PAD, WIDTH - 8);
  const y = scale(0, yHi, HEIGHT - PAD, 10);
  const body = curves
    .map(
      (c, i) =>
        `<path d="${path(c.points, x, y)}" fill="none" stroke="${SERIES_COLORS[i % SERIES_COLORS.length]}" stroke-width="1.6"><title>${c.label}</title></path>`,
    )
    .join("");
  const legend = curves
    .map(
      (c, i) =>
        `<text x="${PAD + 8}" y="${20 + 16 * i}" class="axis" fill="${SERIES_COLORS[i % SERIES_COLORS.length]}">${c.label}</text>`,
    )
    .join("");
  const axes = `
    <line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - 8}" y2="${HEIGHT - PAD}" stroke="#111" stroke-width="1"/>
    <text x="${PAD}" y="${HEIGHT - PAD + 14}" text-anchor="middle" class="axis">0</text>
    <text x="${WIDTH - 8}" y="${HEIGHT - PAD + 14}" text-anchor="end" class="axis">1</text>
    <text x="${WIDTH / 2}" y="${HEIGHT - 6}" text-anchor="middle" class="axis">response rate</text>`;
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="plot" role="img">${axes}${body}${legend}</svg>`;
}
