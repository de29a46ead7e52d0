/** Readers for the solver CLI's benchmark CSV schemas. */
import Papa from "papaparse";

export interface TimingRow {
  alpha1: number;
  alpha2: number;
  n: number;
  solver: string;
  trials: number;
  seed: number;
  seconds: number;
  relative_to_alg2: number;
}

const TIMING_COLUMNS = [
  "alpha1",
  "alpha2",
  "n",
  "solver",
  "trials",
  "seed",
  "seconds",
  "relative_to_alg2",
];

export class CsvFormatError extends Error {}

export function parseTimingCsv(text: string, name = "<csv>"): TimingRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new CsvFormatError(`${name}: ${e.message} (row ${e.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of TIMING_COLUMNS) {
    if (!fields.includes(col)) {
      throw new CsvFormatError(`${name}: missing column ${col}`);
    }
  }
  return parsed.data.map((row, i) => {
    const num = (col: string): number => {
      const v = Number(row[col]);
      if (!Number.isFinite(v)) {
        throw new CsvFormatError(`${name}: row ${i + 1}: bad ${col} value`);
      }
      return v;
    };
    return {
      alpha1: num("alpha1"),
      alpha2: num("alpha2"),
      n: num("n"),
      solver: row["solver"],
      trials: num("trials"),
      seed: num("seed"),
      seconds: num("seconds"),
      relative_to_alg2: num("relative_to_alg2"),
    };
  });
}
