/** Binary pixel-grid documents and the pure helpers the UI needs. */

export type GridRole = "memory-pattern" | "probe";

export interface GridDocument {
  width: number;
  height: number;
  /** Row-major cells, values 0 or 1 (1 = black). */
  cells: number[];
  role: GridRole;
}

export function makeGrid(width: number, height: number, role: GridRole): GridDocument {
  if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
    throw new RangeError(`grid dimensions must be positive integers, got ${width}x${height}`);
  }
  return { width, height, cells: new Array(width * height).fill(0), role };
}

export function cloneGrid(grid: GridDocument, role?: GridRole): GridDocument {
  return { ...grid, cells: grid.cells.slice(), role: role ?? grid.role };
}

export function setCell(grid: GridDocument, index: number, value: 0 | 1): void {
  if (index < 0 || index >= grid.cells.length) {
    throw new RangeError(`cell ${index} out of range for ${grid.width}x${grid.height}`);
  }
  grid.cells[index] = value;
}

export function toggleCell(grid: GridDocument, index: number): 0 | 1 {
  const value = (1 - grid.cells[index]) as 0 | 1;
  setCell(grid, index, value);
  return value;
}

/** Wire format: the service takes and returns grids as arrays of rows. */
export function toRows(grid: GridDocument): number[][] {
  const rows: number[][] = [];
  for (let y = 0; y < grid.height; y++) {
    rows.push(grid.cells.slice(y * grid.width, (y + 1) * grid.width));
  }
  return rows;
}

export function fromRows(rows: number[][], role: GridRole): GridDocument {
  if (rows.length === 0 || rows[0].length === 0) {
    throw new RangeError("rows must form a non-empty grid");
  }
  const width = rows[0].length;
  if (rows.some((r) => r.length !== width)) {
    throw new RangeError("rows must all have the same length");
  }
  return { width, height: rows.length, cells: rows.flat(), role };
}

/** Indices where two equally sized grids differ. */
export function diffIndices(a: number[], b: number[]): number[] {
  if (a.length !== b.length) {
    throw new RangeError(`cannot diff grids of ${a.length} and ${b.length} cells`);
  }
  const out: number[] = [];
  for (let i = 0; i < a.length; i++) if (a[i] !== b[i]) out.push(i);
  return out;
}

/** Retrieval correctness as the engine judges it: a settled network has
 * no absolute black/white, so a pattern and its complement are the same
 * memory. */
export function equalsModuloInversion(a: number[], b: number[]): boolean {
  if (a.length !== b.length) return false;
  let same = true;
  let inverted = true;
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) same = false;
    if (a[i] === b[i]) inverted = false;
    if (!same && !inverted) return false;
  }
  return same || inverted;
}
