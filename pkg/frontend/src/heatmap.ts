/** Log-modulus heatmaps of pipeline snapshots.
 *
 * Every entry is mapped to log10|entry|, clipped to the shared range
 * [log10(EPS), 0] so the three magnitude regimes — O(1), O(sqrt(EPS)),
 * O(EPS) — land at fixed colors across panels and runs.
 */
import { Matrix, at } from "./matrix.js";

/** Unit roundoff of IEEE double precision. */
export const EPS = 2.220446049250313e-16;
export const LOG_FLOOR = Math.log10(EPS); // about -15.65

export interface Panel {
  label: string;
  matrix: Matrix;
}

/** Clipped log10 magnitudes, the pixel values behind the colors. */
export function logModulus(m: Matrix): Float64Array {
  const out = new Float64Array(m.entries.length);
  for (let k = 0; k < m.entries.length; k++) {
    const a = Math.abs(m.entries[k]);
    const v = a === 0 ? LOG_FLOOR : Math.log10(a);
    out[k] = Math.min(0, Math.max(LOG_FLOOR, v));
  }
  return out;
}

/** Histogram of pixel values over [LOG_FLOOR, 0]. */
export function pixelHistogram(values: Float64Array, bins = 32): number[] {
  const counts = new Array<number>(bins).fill(0);
  const width = -LOG_FLOOR / bins;
  for (const v of values) {
    let b = Math.floor((v - LOG_FLOOR) / width);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    counts[b] += 1;
  }
  return counts;
}

/** Contiguous runs of non-empty bins ("modes") in a histogram. */
export function histogramModes(counts: number[]): Array<[number, number]> {
  const modes: Array<[number, number]> = [];
  let start = -1;
  for (let b = 0; b < counts.length; b++) {
    if (counts[b] > 0 && start < 0) start = b;
    if (counts[b] === 0 && start >= 0) {
      modes.push([start, b - 1]);
      start = -1;
    }
  }
  if (start >= 0) modes.push([start, counts.length - 1]);
  return modes;
}

/** Blue -> green -> yellow ramp over t in [0, 1] (floor -> O(1)). */
export function colorFor(t: number): string {
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [40, 50, 120]], // deep blue: rounding floor
    [0.5, [60, 160, 90]], // green: sqrt(eps) regime
    [1.0, [250, 220, 60]], // yellow: O(1)
  ];
  let lo = stops[0];
  let hi = stops[stops.length - 1];
  for (let i = 0; i + 1 < stops.length; i++) {
    if (t >= stops[i][0] && t <= stops[i + 1][0]) {
      lo = stops[i];
      hi = stops[i + 1];
      break;
    }
  }
  const u = hi[0] === lo[0] ? 0 : (t - lo[0]) / (hi[0] - lo[0]);
  const mix = lo[1].map((c, k) => Math.round(c + u * (hi[1][k] - c)));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}

const CELL = 12;
const MARGIN = 24;

export function renderHeatmap(panel: Panel): string {
  const { matrix, label } = panel;
  const n = matrix.n;
  const size = n * CELL + 2 * MARGIN;
  const values = logModulus(matrix);
  const cells: string[] = [];
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      const v = values[r * n + c];
      const t = 1 - v / LOG_FLOOR; // floor -> 0, O(1) -> 1
      cells.push(
        `<rect x="${MARGIN + c * CELL}" y="${MARGIN + r * CELL}" ` +
          `width="${CELL}" height="${CELL}" fill="${colorFor(t)}"/>`,
      );
    }
  }
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" ` +
    `height="${size + 16}" viewBox="0 0 ${size} ${size + 16}">\n` +
    `<title>${label}</title>\n` +
    cells.join("\n") +
    `\n<text x="${MARGIN}" y="${size + 12}" font-size="12" ` +
    `font-family="sans-serif">${label}</text>\n</svg>\n`
  );
}

export function renderHeatmaps(panels: Panel[]): Map<string, string> {
  const n0 = panels[0]?.matrix.n;
  for (const p of panels) {
    if (p.matrix.n !== n0) {
      throw new Error("all snapshots must share the same dimension");
    }
  }
  const out = new Map<string, string>();
  for (const p of panels) out.set(p.label, renderHeatmap(p));
  return out;
}
