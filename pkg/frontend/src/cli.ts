#!/usr/bin/env node
/** Render benchmark outputs to SVG.
 *
 *   normal-schur-plots heatmaps <snapshot-dir> <out-dir>
 *   normal-schur-plots timing <bench.csv> <out-dir>
 */
import * as fs from "node:fs";
import * as path from "node:path";

import { parseMatrix } from "./matrix.js";
import { parseTimingCsv } from "./csv.js";
import { Panel, renderHeatmaps } from "./heatmap.js";
import { groupByAlpha, renderTiming } from "./timing.js";

function fail(msg: string): never {
  console.error(`error: ${msg}`);
  process.exit(1);
}

function cmdHeatmaps(snapshotDir: string, outDir: string): void {
  if (!fs.existsSync(snapshotDir)) fail(`no such directory: ${snapshotDir}`);
  const files = fs
    .readdirSync(snapshotDir)
    .filter((f) => f.endsWith(".txt"))
    .sort();
  if (files.length === 0) fail(`no snapshot .txt files in ${snapshotDir}`);
  const panels: Panel[] = files.map((f) => ({
    label: path.basename(f, ".txt"),
    matrix: parseMatrix(
      fs.readFileSync(path.join(snapshotDir, f), "utf8"),
      f,
    ),
  }));
  fs.mkdirSync(outDir, { recursive: true });
  for (const [label, svg] of renderHeatmaps(panels)) {
    const out = path.join(outDir, `${label}.svg`);
    fs.writeFileSync(out, svg);
    console.log(`wrote ${out}`);
  }
}

function cmdTiming(csvPath: string, outDir: string): void {
  if (!fs.existsSync(csvPath)) fail(`no such file: ${csvPath}`);
  const rows = parseTimingCsv(fs.readFileSync(csvPath, "utf8"), csvPath);
  fs.mkdirSync(outDir, { recursive: true });
  for (const [key, group] of groupByAlpha(rows)) {
    const out = path.join(outDir, `timing_${key}.svg`);
    fs.writeFileSync(out, renderTiming(group, key));
    console.log(`wrote ${out}`);
  }
}

function main(argv: string[]): void {
  const [cmd, input, outDir] = argv;
  if (!cmd || !input || !outDir) {
    fail("usage: normal-schur-plots <heatmaps|timing> <input> <out-dir>");
  }
  try {
    if (cmd === "heatmaps") cmdHeatmaps(input, outDir);
    else if (cmd === "timing") cmdTiming(input, outDir);
    else fail(`unknown command ${cmd}`);
  } catch (err) {
    fail(err instanceof Error ? err.message : String(err));
  }
}

main(process.argv.slice(2));
