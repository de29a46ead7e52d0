/** Timing curves: absolute seconds (log-log) and ratio-to-alg2 panels. */
import { TimingRow } from "./csv.js";

export interface Curve {
  solver: string;
  points: Array<{ n: number; y: number }>;
}

/** One curve per solver; y is either seconds or relative_to_alg2.
 * Point values are taken verbatim from the rows (pass-through). */
export function buildCurves(
  rows: TimingRow[],
  field: "seconds" | "relative_to_alg2",
): Curve[] {
  const bySolver = new Map<string, Array<{ n: number; y: number }>>();
  for (const row of rows) {
    if (!bySolver.has(row.solver)) bySolver.set(row.solver, []);
    bySolver.get(row.solver)!.push({ n: row.n, y: row[field] });
  }
  return [...bySolver.entries()].map(([solver, points]) => ({
    solver,
    points: points.slice().sort((a, b) => a.n - b.n),
  }));
}

export function groupByAlpha(rows: TimingRow[]): Map<string, TimingRow[]> {
  const groups = new Map<string, TimingRow[]>();
  for (const row of rows) {
    const key = `a${row.alpha1}_b${row.alpha2}`;
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(row);
  }
  return groups;
}

const W = 360;
const H = 280;
const PAD = 48;

function scale(
  value: number,
  lo: number,
  hi: number,
  outLo: number,
  outHi: number,
): number {
  if (hi === lo) return (outLo + outHi) / 2;
  return outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
}

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

function panel(
  curves: Curve[],
  title: string,
  xOffset: number,
  logY: boolean,
): string {
  const ns = curves.flatMap((c) => c.points.map((p) => Math.log10(p.n)));
  const ys = curves.flatMap((c) =>
    c.points.map((p) => (logY ? Math.log10(p.y) : p.y)),
  );
  const [nLo, nHi] = [Math.min(...ns), Math.max(...ns)];
  const [yLo, yHi] = [Math.min(...ys, logY ? Infinity : 0), Math.max(...ys)];
  const parts: string[] = [];
  curves.forEach((curve, ci) => {
    const pts = curve.points
      .map((p) => {
        const x = scale(Math.log10(p.n), nLo, nHi, xOffset + PAD, xOffset + W - PAD);
        const yv = logY ? Math.log10(p.y) : p.y;
        const y = scale(yv, yLo, yHi, H - PAD, PAD);
        return `${x.toFixed(2)},${y.toFixed(2)}`;
      })
      .join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${COLORS[ci % COLORS.length]}" stroke-width="2"/>`,
      `<text x="${xOffset + PAD}" y="${PAD - 10 + 14 * ci}" font-size="11" ` +
        `fill="${COLORS[ci % COLORS.length]}" font-family="sans-serif">${curve.solver}</text>`,
    );
  });
  parts.push(
    `<text x="${xOffset + W / 2}" y="${H - 8}" text-anchor="middle" ` +
      `font-size="12" font-family="sans-serif">${title}</text>`,
  );
  return parts.join("\n");
}

/** Two-panel figure: absolute time (log-log) and ratio to alg2. */
export function renderTiming(rows: TimingRow[], label: string): string {
  if (rows.length === 0) throw new Error("no timing rows");
  const abs = buildCurves(rows, "seconds");
  const rel = buildCurves(rows, "relative_to_alg2");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${2 * W}" height="${H}" ` +
    `viewBox="0 0 ${2 * W} ${H}">\n` +
    `<title>${label}</title>\n` +
    panel(abs, "seconds vs n (log-log)", 0, true) +
    "\n" +
    panel(rel, "time relative to alg2", W, false) +
    "\n</svg>\n"
  );
}
