/** Application assembly: pattern bank, probe panel, playback panel.
 *
 * Flow mirrors the demonstrator loop: draw patterns, memorize (trains a
 * session server-side), pick or draw a probe, optionally corrupt it,
 * retrieve, and watch the phase evolution stream back as a playback.
 * The client never simulates anything; it only renders what the service
 * returns (the corruption preview is the one mirrored computation, and
 * the service's own probe echo replaces it after each retrieval).
 */

import { ApiClient, ApiError, RetrieveOptions, SessionInfo, TraceFrame, TraceSummary } from "./api";
import { GridEditor } from "./editor";
import { cloneGrid, diffIndices, fromRows, makeGrid, toRows } from "./grid";
import { corruptionPositions } from "./rng";
import { Playback } from "./playback";

const DEFAULT_SIZE = 3;
const MAX_PATTERNS = 8;

export interface AppHandles {
  api: ApiClient;
  patternEditors: GridEditor[];
  probeEditor: GridEditor;
  playback: Playback;
  addPatternButton: HTMLButtonElement;
  removePatternButton: HTMLButtonElement;
  memorizeButton: HTMLButtonElement;
  retrieveButton: HTMLButtonElement;
  fractionSlider: HTMLInputElement;
  seedInput: HTMLInputElement;
  targetSelect: HTMLSelectElement;
  sessionBadge: HTMLElement;
  statusLine: HTMLElement;
  session: () => SessionInfo | null;
  lastResult: () => { probe: number[][]; frames: TraceFrame[]; summary: TraceSummary | null } | null;
  retrievalSettled: () => Promise<void>;
}

export function buildApp(root: HTMLElement, api = new ApiClient()): AppHandles {
  root.textContent = "";
  root.className = "onn-app";

  let session: SessionInfo | null = null;
  let inFlight = false;
  let lastResult: { probe: number[][]; frames: TraceFrame[]; summary: TraceSummary | null } | null = null;
  let settlePromise: Promise<void> = Promise.resolve();

  const title = document.createElement("h1");
  title.textContent = "Oscillatory associative memory";
  const statusLine = document.createElement("p");
  statusLine.className = "status-line";

  // ----- pattern bank ------------------------------------------------
  const bank = document.createElement("section");
  bank.className = "pattern-bank";
  const bankTitle = document.createElement("h2");
  bankTitle.textContent = "Patterns to memorize";
  const editorsRow = document.createElement("div");
  editorsRow.className = "editors-row";
  const patternEditors: GridEditor[] = [];

  const sizeRow = document.createElement("div");
  sizeRow.className = "size-row";
  const widthInput = document.createElement("input");
  widthInput.type = "number";
  widthInput.min = "1";
  widthInput.max = "22";
  widthInput.value = String(DEFAULT_SIZE);
  const heightInput = document.createElement("input");
  heightInput.type = "number";
  heightInput.min = "1";
  heightInput.max = "22";
  heightInput.value = String(DEFAULT_SIZE);
  const resizeButton = document.createElement("button");
  resizeButton.type = "button";
  resizeButton.textContent = "Resize grids";
  const sizeLabel = document.createElement("span");
  sizeLabel.textContent = "width x height:";
  sizeRow.append(sizeLabel, widthInput, heightInput, resizeButton);

  const addPatternButton = document.createElement("button");
  addPatternButton.type = "button";
  addPatternButton.textContent = "Add pattern";
  const removePatternButton = document.createElement("button");
  removePatternButton.type = "button";
  removePatternButton.textContent = "Remove pattern";
  const memorizeButton = document.createElement("button");
  memorizeButton.type = "button";
  memorizeButton.textContent = "Memorize";
  const sessionBadge = document.createElement("p");
  sessionBadge.className = "session-badge";

  const archSelect = document.createElement("select");
  for (const value of ["hybrid", "recurrent"]) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    archSelect.appendChild(option);
  }
  const samplingSelect = document.createElement("select");
  for (const value of ["aligned", "pipelined"]) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    samplingSelect.appendChild(option);
  }

  const bankControls = document.createElement("div");
  bankControls.className = "bank-controls";
  bankControls.append(addPatternButton, removePatternButton, memorizeButton, archSelect, samplingSelect);
  bank.append(bankTitle, sizeRow, editorsRow, bankControls, sessionBadge);

  // ----- probe panel ---------------------------------------------------
  const probePanel = document.createElement("section");
  probePanel.className = "probe-panel";
  const probeTitle = document.createElement("h2");
  probeTitle.textContent = "Probe";
  const probeEditor = new GridEditor(
    makeGrid(DEFAULT_SIZE, DEFAULT_SIZE, "probe"),
    () => refreshCorruptionPreview(),
  );
  const copyRow = document.createElement("div");
  copyRow.className = "copy-row";

  const fractionSlider = document.createElement("input");
  fractionSlider.type = "range";
  fractionSlider.min = "0";
  fractionSlider.max = "100";
  fractionSlider.step = "1";
  fractionSlider.value = "0";
  const fractionReadout = document.createElement("span");
  const seedInput = document.createElement("input");
  seedInput.type = "number";
  seedInput.value = "1";
  const corruptRow = document.createElement("div");
  corruptRow.className = "corrupt-row";
  const corruptLabel = document.createElement("span");
  corruptLabel.textContent = "corruption:";
  const seedLabel = document.createElement("span");
  seedLabel.textContent = "seed:";
  corruptRow.append(corruptLabel, fractionSlider, fractionReadout, seedLabel, seedInput);

  const targetSelect = document.createElement("select");
  const targetLabel = document.createElement("span");
  targetLabel.textContent = "judge against:";
  const retrieveButton = document.createElement("button");
  retrieveButton.type = "button";
  retrieveButton.textContent = "Retrieve";
  const retrieveRow = document.createElement("div");
  retrieveRow.className = "retrieve-row";
  retrieveRow.append(targetLabel, targetSelect, retrieveButton);

  probePanel.append(probeTitle, copyRow, probeEditor.element, corruptRow, retrieveRow);

  // ----- playback panel -------------------------------------------------
  const playbackPanel = document.createElement("section");
  playbackPanel.className = "playback-panel";
  const playbackTitle = document.createElement("h2");
  playbackTitle.textContent = "Phase evolution";
  const playback = new Playback();
  playbackPanel.append(playbackTitle, playback.element);

  root.append(title, statusLine, bank, probePanel, playbackPanel);

  // ----- behaviour ---------------------------------------------------
  function setStatus(text: string, isError = false): void {
    statusLine.textContent = text;
    statusLine.classList.toggle("error", isError);
  }

  function gridSize(): { width: number; height: number } {
    const first = patternEditors[0]?.document;
    return first
      ? { width: first.width, height: first.height }
      : { width: Number(widthInput.value), height: Number(heightInput.value) };
  }

  function refreshBankButtons(): void {
    memorizeButton.disabled = inFlight || patternEditors.length === 0;
    addPatternButton.disabled = patternEditors.length >= MAX_PATTERNS;
    removePatternButton.disabled = patternEditors.length === 0;
    retrieveButton.disabled = inFlight || session === null;
  }

  function refreshCopyRow(): void {
    copyRow.textContent = "";
    patternEditors.forEach((editor, i) => {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "copy-pattern";
      button.textContent = `probe = pattern ${i + 1}`;
      button.addEventListener("click", () => {
        probeEditor.setDocument(cloneGrid(editor.document, "probe"));
        targetSelect.value = String(i);
        refreshCorruptionPreview();
      });
      copyRow.appendChild(button);
    });
  }

  function refreshTargetSelect(): void {
    targetSelect.textContent = "";
    patternEditors.forEach((_, i) => {
      const option = document.createElement("option");
      option.value = String(i);
      option.textContent = `pattern ${i + 1}`;
      targetSelect.appendChild(option);
    });
  }

  function currentSeed(): number {
    const seed = Number(seedInput.value);
    return Number.isFinite(seed) ? Math.trunc(seed) : 0;
  }

  function refreshCorruptionPreview(): void {
    const fraction = Number(fractionSlider.value) / 100;
    const seed = currentSeed();
    fractionReadout.textContent = `${fractionSlider.value}%`;
    const n = probeEditor.document.cells.length;
    const positions = fraction > 0 ? corruptionPositions(n, fraction, seed) : [];
    probeEditor.setHighlights(positions);
  }

  function addPattern(): void {
    if (patternEditors.length >= MAX_PATTERNS) return;
    const { width, height } = gridSize();
    const editor = new GridEditor(makeGrid(width, height, "memory-pattern"));
    if (session !== null) {
      editor.lockDimensions("session already trained at this size");
    }
    patternEditors.push(editor);
    editorsRow.appendChild(editor.element);
    refreshBankButtons();
    refreshCopyRow();
    refreshTargetSelect();
  }

  resizeButton.addEventListener("click", () => {
    const width = Number(widthInput.value);
    const height = Number(heightInput.value);
    if (session !== null) {
      setStatus(
        "Cannot resize: the session was trained at "
        + `${session.config.n_oscillators} oscillators; memorize a new set to change size.`,
        true,
      );
      return;
    }
    for (const editor of patternEditors) editor.resize(width, height);
    probeEditor.resize(width, height);
    refreshCorruptionPreview();
    setStatus(`grids resized to ${width} x ${height}`);
  });

  addPatternButton.addEventListener("click", addPattern);

  removePatternButton.addEventListener("click", () => {
    const editor = patternEditors.pop();
    if (editor === undefined) return;
    editor.element.remove();
    refreshBankButtons();
    refreshCopyRow();
    refreshTargetSelect();
  });

  memorizeButton.addEventListener("click", async () => {
    if (patternEditors.length === 0) return;
    memorizeButton.disabled = true;
    setStatus("training...");
    try {
      const patterns = patternEditors.map((e) => toRows(e.document));
      session = await api.createSession(patterns, {
        architecture: archSelect.value as "hybrid" | "recurrent",
        hybrid_sampling: samplingSelect.value as "aligned" | "pipelined",
      });
      const st = session.stability;
      const perPattern = st.pattern_stable
        .map((ok, i) => `pattern ${i + 1}: ${ok ? "stable" : "UNSTABLE"}`)
        .join(", ");
      sessionBadge.textContent =
        `session ${session.session_id} - ${st.converged ? "converged" : "did not converge"} `
        + `in ${st.epochs} epochs - ${perPattern}`;
      sessionBadge.className = "session-badge "
        + (st.converged && st.pattern_stable.every(Boolean) ? "stable" : "unstable");
      const { width, height } = gridSize();
      const reason = `session ${session.session_id} is trained at ${width} x ${height}`;
      for (const editor of patternEditors) editor.lockDimensions(reason);
      probeEditor.lockDimensions(reason);
      setStatus(`memorized ${patternEditors.length} pattern(s)`);
    } catch (error) {
      session = null;
      sessionBadge.textContent = "";
      setStatus(describeError(error), true);
    } finally {
      refreshBankButtons();
    }
  });

  fractionSlider.addEventListener("input", refreshCorruptionPreview);
  seedInput.addEventListener("input", refreshCorruptionPreview);

  async function collectTrace(
    sessionId: string,
    traceId: string,
  ): Promise<{ frames: TraceFrame[]; summary: TraceSummary | null }> {
    const frames: TraceFrame[] = [];
    let summary: TraceSummary | null = null;
    for await (const event of api.streamTrace(sessionId, traceId)) {
      if (event.kind === "frame") frames.push(event.frame);
      else summary = event.summary;
    }
    return { frames, summary };
  }

  retrieveButton.addEventListener("click", () => {
    if (session === null || inFlight) return;
    const current = session;
    inFlight = true;
    refreshBankButtons();
    setStatus("retrieving...");
    settlePromise = (async () => {
      try {
        const fraction = Number(fractionSlider.value) / 100;
        const options: RetrieveOptions = { max_periods: 1000, stability_window: 3 };
        if (fraction > 0) {
          options.corrupt = { fraction, seed: currentSeed() };
        }
        const submitted = toRows(probeEditor.document);
        const result = await api.retrieve(current.session_id, submitted, options);

        // The probe echoed back is the one the engine actually ran;
        // render it and highlight the cells the corruption flipped.
        const probeDoc = fromRows(result.probe, "probe");
        const flipped = diffIndices(submitted.flat(), probeDoc.cells);
        probeEditor.setDocument(probeDoc);
        probeEditor.setHighlights(flipped);

        // Stream the trace; one clean retry on mid-stream failure
        // (traces are immutable server-side, so a re-read resumes all).
        let trace: { frames: TraceFrame[]; summary: TraceSummary | null };
        try {
          trace = await collectTrace(current.session_id, result.trace_id);
        } catch {
          setStatus("trace stream interrupted; reconnecting...");
          trace = await collectTrace(current.session_id, result.trace_id);
        }
        if (trace.frames.length !== result.frames) {
          throw new ApiError(0, `trace stream delivered ${trace.frames.length} of ${result.frames} frames`);
        }
        if (trace.summary === null) {
          throw new ApiError(0, "trace stream ended without a summary");
        }

        const targetIndex = Number(targetSelect.value);
        const target = patternEditors[targetIndex]
          ? patternEditors[targetIndex].document.cells
          : null;
        playback.load(trace.frames, trace.summary, target);
        playback.play();
        lastResult = { probe: result.probe, frames: trace.frames, summary: trace.summary };
        setStatus(
          result.timed_out
            ? `timed out after ${result.cycles_to_settle} periods (${flipped.length} cells corrupted)`
            : `settled in ${result.cycles_to_settle} periods (${flipped.length} cells corrupted)`,
        );
      } catch (error) {
        setStatus(describeError(error), true);
      } finally {
        inFlight = false;
        refreshBankButtons();
      }
    })();
  });

  function describeError(error: unknown): string {
    if (error instanceof ApiError) return `service error: ${error.message}`;
    return `request failed: ${error instanceof Error ? error.message : String(error)}`;
  }

  addPattern();
  refreshBankButtons();
  refreshCorruptionPreview();

  return {
    api,
    patternEditors,
    probeEditor,
    playback,
    addPatternButton,
    removePatternButton,
    memorizeButton,
    retrieveButton,
    fractionSlider,
    seedInput,
    targetSelect,
    sessionBadge,
    statusLine,
    session: () => session,
    lastResult: () => lastResult,
    retrievalSettled: () => settlePromise,
  };
}
