import { describe, expect, it } from "vitest";
import {
  cloneGrid,
  diffIndices,
  equalsModuloInversion,
  fromRows,
  makeGrid,
  setCell,
  toRows,
  toggleCell,
} from "../src/grid";

describe("makeGrid", () => {
  it("builds an all-white grid of the right shape", () => {
    const g = makeGrid(3, 2, "probe");
    expect(g.cells).toEqual([0, 0, 0, 0, 0, 0]);
    expect(g.width).toBe(3);
    expect(g.height).toBe(2);
  });

  it("rejects non-positive and fractional dimensions", () => {
    expect(() => makeGrid(0, 3, "probe")).toThrow(RangeError);
    expect(() => makeGrid(3, -1, "probe")).toThrow(RangeError);
    expect(() => makeGrid(2.5, 3, "probe")).toThrow(RangeError);
  });
});

describe("cell edits", () => {
  it("setCell and toggleCell update in place", () => {
    const g = makeGrid(2, 2, "memory-pattern");
    setCell(g, 3, 1);
    expect(g.cells).toEqual([0, 0, 0, 1]);
    expect(toggleCell(g, 3)).toBe(0);
    expect(toggleCell(g, 0)).toBe(1);
    expect(g.cells).toEqual([1, 0, 0, 0]);
  });

  it("setCell rejects out-of-range indices", () => {
    const g = makeGrid(2, 2, "probe");
    expect(() => setCell(g, 4, 1)).toThrow(RangeError);
    expect(() => setCell(g, -1, 1)).toThrow(RangeError);
  });
});

describe("cloneGrid", () => {
  it("copies cells and can re-role", () => {
    const g = makeGrid(2, 2, "memory-pattern");
    setCell(g, 1, 1);
    const c = cloneGrid(g, "probe");
    expect(c.cells).toEqual(g.cells);
    expect(c.role).toBe("probe");
    setCell(c, 0, 1);
    expect(g.cells[0]).toBe(0);
  });
});

describe("row round trip", () => {
  it("toRows/fromRows invert each other", () => {
    const rows = [
      [1, 0, 0],
      [1, 0, 0],
      [1, 1, 1],
    ];
    const g = fromRows(rows, "memory-pattern");
    expect(g.width).toBe(3);
    expect(g.height).toBe(3);
    expect(g.cells).toEqual([1, 0, 0, 1, 0, 0, 1, 1, 1]);
    expect(toRows(g)).toEqual(rows);
  });

  it("fromRows rejects ragged or empty input", () => {
    expect(() => fromRows([], "probe")).toThrow(RangeError);
    expect(() => fromRows([[1], [1, 0]], "probe")).toThrow(RangeError);
  });
});

describe("diffIndices", () => {
  it("lists exactly the differing cells", () => {
    expect(diffIndices([0, 1, 0, 1], [0, 0, 0, 0])).toEqual([1, 3]);
    expect(diffIndices([1, 1], [1, 1])).toEqual([]);
  });

  it("rejects mismatched lengths", () => {
    expect(() => diffIndices([0], [0, 1])).toThrow(RangeError);
  });
});

describe("equalsModuloInversion", () => {
  it("accepts equal grids and exact complements", () => {
    expect(equalsModuloInversion([1, 0, 1], [1, 0, 1])).toBe(true);
    expect(equalsModuloInversion([1, 0, 1], [0, 1, 0])).toBe(true);
  });

  it("rejects anything else", () => {
    expect(equalsModuloInversion([1, 0, 1], [1, 1, 1])).toBe(false);
    expect(equalsModuloInversion([1, 0], [1, 0, 1])).toBe(false);
  });
});
