/** Trace playback: animate the decoded grid one oscillation period at a
 * time, with a cycle counter, a speed slider, and outcome badges.
 *
 * Playback never recomputes anything: every frame, phase vector, and
 * verdict shown here came out of the service's trace stream.
 */

import { TraceFrame, TraceSummary } from "./api";
import { equalsModuloInversion } from "./grid";

export class Playback {
  readonly element: HTMLElement;
  private frames: TraceFrame[] = [];
  private summary: TraceSummary | null = null;
  private target: number[] | null = null;
  private index = 0;
  private timer: ReturnType<typeof setInterval> | null = null;

  private gridView: HTMLElement;
  private counter: HTMLElement;
  private badges: HTMLElement;
  private playButton: HTMLButtonElement;
  private stepButton: HTMLButtonElement;
  private speedSlider: HTMLInputElement;

  constructor() {
    this.element = document.createElement("section");
    this.element.className = "playback";

    this.gridView = document.createElement("div");
    this.gridView.className = "playback-grid";
    this.counter = document.createElement("p");
    this.counter.className = "cycle-counter";
    this.badges = document.createElement("p");
    this.badges.className = "badges";

    this.playButton = document.createElement("button");
    this.playButton.type = "button";
    this.playButton.textContent = "Play";
    this.playButton.addEventListener("click", () => {
      if (this.timer === null) this.play();
      else this.pause();
    });

    this.stepButton = document.createElement("button");
    this.stepButton.type = "button";
    this.stepButton.textContent = "Step";
    this.stepButton.addEventListener("click", () => {
      this.pause();
      this.show(Math.min(this.index + 1, this.frames.length - 1));
    });

    // Playback speed is a UI choice; the emulated network's kHz-scale
    // oscillation is not watchable in real time.
    this.speedSlider = document.createElement("input");
    this.speedSlider.type = "range";
    this.speedSlider.min = "1";
    this.speedSlider.max = "30";
    this.speedSlider.value = "8";
    this.speedSlider.title = "playback speed (periods per second)";
    this.speedSlider.addEventListener("input", () => {
      if (this.timer !== null) {
        this.pause();
        this.play();
      }
    });

    const controls = document.createElement("div");
    controls.className = "playback-controls";
    controls.append(this.playButton, this.stepButton, this.speedSlider);
    this.element.append(this.gridView, this.counter, controls, this.badges);
    this.renderEmpty();
  }

  /** Load a fresh trace; shows frame 0 paused. */
  load(frames: TraceFrame[], summary: TraceSummary, target: number[] | null): void {
    this.pause();
    this.frames = frames;
    this.summary = summary;
    this.target = target;
    this.show(0);
  }

  get frameCount(): number {
    return this.frames.length;
  }

  get currentIndex(): number {
    return this.index;
  }

  /** The grid currently on screen, flattened row-major. */
  currentCells(): number[] {
    if (this.frames.length === 0) return [];
    return this.frames[this.index].pattern.flat();
  }

  show(index: number): void {
    if (this.frames.length === 0) {
      this.renderEmpty();
      return;
    }
    this.index = Math.max(0, Math.min(index, this.frames.length - 1));
    const frame = this.frames[this.index];
    const width = frame.pattern[0].length;
    this.gridView.style.gridTemplateColumns = `repeat(${width}, 1.6em)`;
    this.gridView.textContent = "";
    for (const value of frame.pattern.flat()) {
      const cell = document.createElement("span");
      cell.className = value ? "cell on" : "cell off";
      this.gridView.appendChild(cell);
    }
    this.counter.textContent = `period ${this.index} / ${this.frames.length - 1}`;
    this.renderBadges();
  }

  play(): void {
    if (this.frames.length === 0 || this.timer !== null) return;
    const fps = Number(this.speedSlider.value);
    this.playButton.textContent = "Pause";
    if (this.index >= this.frames.length - 1) this.show(0);
    this.timer = setInterval(() => {
      if (this.index >= this.frames.length - 1) {
        this.pause();
        return;
      }
      this.show(this.index + 1);
    }, 1000 / fps);
  }

  pause(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.playButton.textContent = "Play";
  }

  private renderBadges(): void {
    this.badges.textContent = "";
    if (this.summary === null || this.index < this.frames.length - 1) return;
    const outcome = document.createElement("span");
    outcome.className = this.summary.timed_out ? "badge timeout" : "badge settled";
    outcome.textContent = this.summary.timed_out
      ? `timed out after ${this.summary.cycles_to_settle} periods`
      : `settled in ${this.summary.cycles_to_settle} periods`;
    this.badges.appendChild(outcome);
    if (this.target !== null) {
      const correct = equalsModuloInversion(
        this.summary.pattern.flat(),
        this.target,
      );
      const verdict = document.createElement("span");
      verdict.className = correct ? "badge correct" : "badge incorrect";
      verdict.textContent = correct ? "correct" : "incorrect";
      this.badges.appendChild(verdict);
    }
  }

  private renderEmpty(): void {
    this.gridView.textContent = "";
    this.counter.textContent = "no trace loaded";
    this.badges.textContent = "";
  }
}
