import { describe, expect, it } from "vitest";
import { at, MatrixFormatError, parseMatrix } from "../src/matrix.js";

describe("parseMatrix", () => {
  it("parses the text format", () => {
    const m = parseMatrix("2\n1 2\n3 4\n");
    expect(m.n).toBe(2);
    expect(at(m, 0, 1)).toBe(2);
    expect(at(m, 1, 0)).toBe(3);
  });

  it("round-trips scientific notation exactly", () => {
    const v = "1.2345678901234567e-13";
    const m = parseMatrix(`1\n${v}\n`);
    expect(m.entries[0]).toBe(Number(v));
  });

  it("rejects empty input", () => {
    expect(() => parseMatrix("")).toThrow(MatrixFormatError);
  });

  it("rejects a bad header", () => {
    expect(() => parseMatrix("two\n1 2\n3 4\n")).toThrow(/bad dimension/);
  });

  it("rejects short rows with a line number", () => {
    expect(() => parseMatrix("2\n1 2\n3\n")).toThrow(/:3:/);
  });

  it("rejects non-finite values", () => {
    expect(() => parseMatrix("2\n1 2\n3 nan\n")).toThrow(/non-finite/);
  });
});
