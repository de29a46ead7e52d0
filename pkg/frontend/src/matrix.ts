/** Matrix text format: line 1 is n, then n rows of n whitespace-separated
 * values. This mirrors the solver package's reader/writer exactly. */

export interface Matrix {
  n: number;
  /** Row-major entries, length n*n. */
  entries: Float64Array;
}

export class MatrixFormatError extends Error {}

export function parseMatrix(text: string, name = "<matrix>"): Matrix {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new MatrixFormatError(`${name}:1: empty file`);
  }
  const n = Number(lines[0].trim());
  if (!Number.isInteger(n) || n <= 0) {
    throw new MatrixFormatError(`${name}:1: bad dimension ${lines[0].trim()}`);
  }
  if (lines.length < n + 1) {
    throw new MatrixFormatError(
      `${name}: expected ${n} rows, found ${lines.length - 1}`,
    );
  }
  const entries = new Float64Array(n * n);
  for (let r = 0; r < n; r++) {
    const parts = lines[r + 1].trim().split(/\s+/);
    if (parts.length !== n) {
      throw new MatrixFormatError(
        `${name}:${r + 2}: expected ${n} values, found ${parts.length}`,
      );
    }
    for (let c = 0; c < n; c++) {
      const v = Number(parts[c]);
      if (!Number.isFinite(v)) {
        throw new MatrixFormatError(
          `${name}:${r + 2}: non-finite value ${parts[c]}`,
        );
      }
      entries[r * n + c] = v;
    }
  }
  return { n, entries };
}

export function at(m: Matrix, r: number, c: number): number {
  return m.entries[r * m.n + c];
}
