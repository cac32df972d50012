/** Pixel-grid editor: click to toggle, drag to paint.
 *
 * The editor owns a GridDocument and re-renders on every change.  A
 * locked editor (after the session is trained) refuses dimension
 * changes and explains why; cell edits stay allowed so the user can
 * keep drawing probes.
 */

import { GridDocument, makeGrid, setCell, toggleCell } from "./grid";

export class GridEditor {
  readonly element: HTMLElement;
  private doc: GridDocument;
  private table: HTMLElement;
  private status: HTMLElement;
  private highlights = new Set<number>();
  private painting: 0 | 1 | null = null;
  private lockReason: string | null = null;
  private onChange: () => void;

  constructor(doc: GridDocument, onChange: () => void = () => {}) {
    this.doc = doc;
    this.onChange = onChange;
    this.element = document.createElement("div");
    this.element.className = `grid-editor role-${doc.role}`;
    this.table = document.createElement("div");
    this.table.className = "grid-cells";
    this.status = document.createElement("p");
    this.status.className = "grid-status";
    this.element.append(this.table, this.status);
    // One listener ends any drag, wherever the pointer is released.
    document.addEventListener("mouseup", () => {
      this.painting = null;
    });
    this.render();
  }

  get document(): GridDocument {
    return this.doc;
  }

  setDocument(doc: GridDocument): void {
    this.doc = doc;
    this.highlights.clear();
    this.render();
  }

  /** Replace the highlight set (e.g. predicted corruption flips). */
  setHighlights(indices: Iterable<number>): void {
    this.highlights = new Set(indices);
    this.render();
  }

  lockDimensions(reason: string): void {
    this.lockReason = reason;
    this.render();
  }

  unlockDimensions(): void {
    this.lockReason = null;
    this.render();
  }

  /** Resize the grid; blocked while locked. Returns whether it happened. */
  resize(width: number, height: number): boolean {
    if (this.lockReason !== null) {
      this.status.textContent = `Cannot resize: ${this.lockReason}`;
      return false;
    }
    this.doc = makeGrid(width, height, this.doc.role);
    this.highlights.clear();
    this.render();
    this.onChange();
    return true;
  }

  private cellIndex(target: EventTarget | null): number | null {
    if (!(target instanceof HTMLElement)) return null;
    const raw = target.dataset.index;
    return raw === undefined ? null : Number(raw);
  }

  private render(): void {
    this.table.style.gridTemplateColumns = `repeat(${this.doc.width}, 1.6em)`;
    this.table.textContent = "";
    this.doc.cells.forEach((value, index) => {
      const cell = document.createElement("button");
      cell.type = "button";
      cell.dataset.index = String(index);
      cell.className = value ? "cell on" : "cell off";
      if (this.highlights.has(index)) cell.classList.add("flip");
      cell.addEventListener("mousedown", (event) => {
        event.preventDefault();
        const i = this.cellIndex(event.currentTarget);
        if (i === null) return;
        this.painting = toggleCell(this.doc, i);
        this.render();
        this.onChange();
      });
      cell.addEventListener("mouseenter", (event) => {
        if (this.painting === null) return;
        const i = this.cellIndex(event.currentTarget);
        if (i === null || this.doc.cells[i] === this.painting) return;
        setCell(this.doc, i, this.painting);
        this.render();
        this.onChange();
      });
      this.table.appendChild(cell);
    });
    this.status.textContent =
      this.lockReason !== null
        ? `Grid size locked: ${this.lockReason}`
        : `${this.doc.width} x ${this.doc.height}`;
  }
}
