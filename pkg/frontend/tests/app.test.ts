import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api";
import { buildApp } from "../src/app";
import { flipCount } from "../src/rng";

const SESSION_INFO = {
  session_id: "s1",
  config: {
    architecture: "hybrid",
    n_oscillators: 9,
    weight_bits: 5,
    phase_bits: 4,
    hybrid_sampling: "aligned",
    logic_frequency_hz: 50e6,
  },
  stability: { converged: true, epochs: 4, scale: 33.75, pattern_stable: [true, true] },
};

const L = [1, 0, 0, 1, 0, 0, 1, 1, 1];
// L with cells 1 and 3 flipped, as the service would echo it back.
const PROBE_ECHO = [1, 1, 0, 0, 0, 0, 1, 1, 1];

function toRows3(cells: number[]): number[][] {
  return [cells.slice(0, 3), cells.slice(3, 6), cells.slice(6, 9)];
}

const RETRIEVE_RESULT = {
  settled: true,
  timed_out: false,
  cycles_to_settle: 1,
  pattern: toRows3(L),
  probe: toRows3(PROBE_ECHO),
  corruption: { fraction: 0.25, seed: 7 },
  trace_id: "t1",
  frames: 2,
};

const TRACE_SSE =
  `event: frame\ndata: ${JSON.stringify({ index: 0, relative_phases: [], pattern: toRows3(PROBE_ECHO) })}\n\n` +
  `event: frame\ndata: ${JSON.stringify({ index: 1, relative_phases: [], pattern: toRows3(L) })}\n\n` +
  `event: summary\ndata: ${JSON.stringify({ settled: true, timed_out: false, cycles_to_settle: 1, pattern: toRows3(L) })}\n\n`;

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function sseResponse(text: string): Response {
  return new Response(text, {
    status: 200,
    headers: { "Content-Type": "text/event-stream" },
  });
}

/** fetch stub routing on URL suffixes; per-test overrides. */
function stubService(overrides: Partial<Record<"sessions" | "retrieve" | "trace", () => Response | Promise<Response>>> = {}) {
  const calls = { sessions: 0, retrieve: 0, trace: 0 };
  const fetchMock = vi.fn(async (url: string, init?: RequestInit) => {
    void init;
    if (url.endsWith("/retrieve")) {
      calls.retrieve += 1;
      return overrides.retrieve ? overrides.retrieve() : jsonResponse(RETRIEVE_RESULT);
    }
    if (url.includes("/traces/")) {
      calls.trace += 1;
      return overrides.trace ? overrides.trace() : sseResponse(TRACE_SSE);
    }
    if (url.endsWith("/sessions")) {
      calls.sessions += 1;
      return overrides.sessions ? overrides.sessions() : jsonResponse(SESSION_INFO);
    }
    throw new Error(`unexpected url ${url}`);
  });
  vi.stubGlobal("fetch", fetchMock);
  return { fetchMock, calls };
}

function drawCells(editorElement: HTMLElement, cells: number[]): void {
  cells.forEach((value, index) => {
    if (value !== 1) return;
    const button = editorElement.querySelectorAll("button.cell")[index] as HTMLElement;
    button.dispatchEvent(new MouseEvent("mousedown", { bubbles: true }));
    document.dispatchEvent(new MouseEvent("mouseup"));
  });
}

let root: HTMLElement;

beforeEach(() => {
  document.body.textContent = "";
  root = document.createElement("div");
  document.body.appendChild(root);
});

afterEach(() => {
  vi.unstubAllGlobals();
});

async function memorized(handles: ReturnType<typeof buildApp>): Promise<void> {
  handles.memorizeButton.click();
  await vi.waitFor(() => {
    expect(handles.session()).not.toBeNull();
  });
}

describe("initial state", () => {
  it("starts with one editor, retrieve disabled, memorize enabled", () => {
    stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    expect(handles.patternEditors).toHaveLength(1);
    expect(handles.memorizeButton.disabled).toBe(false);
    expect(handles.retrieveButton.disabled).toBe(true);
  });

  it("disables memorize when the pattern set is emptied", () => {
    stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    handles.removePatternButton.click();
    expect(handles.patternEditors).toHaveLength(0);
    expect(handles.memorizeButton.disabled).toBe(true);
    expect(handles.removePatternButton.disabled).toBe(true);
    handles.addPatternButton.click();
    expect(handles.memorizeButton.disabled).toBe(false);
  });
});

describe("corruption preview", () => {
  it("10% on a 10x10 probe highlights exactly 10 cells", () => {
    stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    const [widthInput, heightInput] = Array.from(
      root.querySelectorAll<HTMLInputElement>(".size-row input"),
    );
    widthInput.value = "10";
    heightInput.value = "10";
    root.querySelector<HTMLButtonElement>(".size-row button")!.click();
    expect(handles.probeEditor.document.width).toBe(10);

    handles.fractionSlider.value = "10";
    handles.fractionSlider.dispatchEvent(new Event("input"));
    const flips = handles.probeEditor.element.querySelectorAll(".cell.flip");
    expect(flips).toHaveLength(10);
    expect(flipCount(0.1, 100)).toBe(10);
  });

  it("0% highlights nothing and equal seeds agree", () => {
    stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    expect(handles.probeEditor.element.querySelectorAll(".cell.flip")).toHaveLength(0);

    handles.fractionSlider.value = "25";
    handles.fractionSlider.dispatchEvent(new Event("input"));
    const first = Array.from(
      handles.probeEditor.element.querySelectorAll("button.cell"),
    ).map((c) => c.classList.contains("flip"));
    handles.seedInput.dispatchEvent(new Event("input")); // unchanged seed
    const second = Array.from(
      handles.probeEditor.element.querySelectorAll("button.cell"),
    ).map((c) => c.classList.contains("flip"));
    expect(second).toEqual(first);
    expect(first.filter(Boolean)).toHaveLength(flipCount(0.25, 9));
  });
});

describe("memorize", () => {
  it("creates a session, reports stability, and locks dimensions", async () => {
    const { fetchMock } = stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    handles.addPatternButton.click();
    drawCells(handles.patternEditors[0].element, L);

    await memorized(handles);

    expect(handles.sessionBadge.textContent).toContain("converged in 4 epochs");
    expect(handles.sessionBadge.textContent).toContain("pattern 1: stable");
    expect(handles.sessionBadge.textContent).toContain("pattern 2: stable");
    expect(handles.sessionBadge.classList.contains("stable")).toBe(true);
    expect(handles.retrieveButton.disabled).toBe(false);

    const body = JSON.parse(String(fetchMock.mock.calls[0][1]!.body));
    expect(body.patterns).toHaveLength(2);
    expect(body.patterns[0]).toEqual(toRows3(L));
    expect(body.config.architecture).toBe("hybrid");
    expect(body.config.hybrid_sampling).toBe("aligned");

    // dimension lock, with the session named in the explanation
    expect(handles.probeEditor.resize(5, 5)).toBe(false);
    root.querySelector<HTMLButtonElement>(".size-row button")!.click();
    expect(handles.statusLine.textContent).toContain("Cannot resize");
    expect(handles.statusLine.textContent).toContain("9 oscillators");
  });

  it("flags unstable patterns", async () => {
    stubService({
      sessions: () =>
        jsonResponse({
          ...SESSION_INFO,
          stability: { converged: false, epochs: 1000, scale: 1, pattern_stable: [true, false] },
        }),
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    handles.addPatternButton.click();
    await memorized(handles);
    expect(handles.sessionBadge.textContent).toContain("did not converge");
    expect(handles.sessionBadge.textContent).toContain("pattern 2: UNSTABLE");
    expect(handles.sessionBadge.classList.contains("unstable")).toBe(true);
  });

  it("surfaces training errors inline and keeps the app usable", async () => {
    stubService({
      sessions: () => jsonResponse({ detail: "patterns must be a non-empty array" }, 400),
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    handles.memorizeButton.click();
    await vi.waitFor(() => {
      expect(handles.statusLine.classList.contains("error")).toBe(true);
    });
    expect(handles.statusLine.textContent).toContain("patterns must be a non-empty array");
    expect(handles.session()).toBeNull();
    expect(handles.memorizeButton.disabled).toBe(false);
    expect(handles.retrieveButton.disabled).toBe(true);
  });
});

describe("retrieve", () => {
  async function trainedApp() {
    const stub = stubService();
    const handles = buildApp(root, new ApiClient("http://svc"));
    drawCells(handles.patternEditors[0].element, L);
    await memorized(handles);
    return { handles, ...stub };
  }

  it("echoes the served probe, highlights flips, and plays back the trace", async () => {
    const { handles } = await trainedApp();
    root.querySelector<HTMLButtonElement>(".copy-pattern")!.click();
    handles.fractionSlider.value = "25";
    handles.fractionSlider.dispatchEvent(new Event("input"));
    handles.seedInput.value = "7";
    handles.seedInput.dispatchEvent(new Event("input"));

    handles.retrieveButton.click();
    await handles.retrievalSettled();
    handles.playback.pause();

    // probe grid now shows the probe the engine actually ran
    expect(handles.probeEditor.document.cells).toEqual(PROBE_ECHO);
    const flipIndices = Array.from(
      handles.probeEditor.element.querySelectorAll("button.cell"),
    ).flatMap((c, i) => (c.classList.contains("flip") ? [i] : []));
    expect(flipIndices).toEqual([1, 3]);

    expect(handles.playback.frameCount).toBe(2);
    handles.playback.show(1);
    expect(handles.playback.currentCells()).toEqual(L);
    expect(handles.statusLine.textContent).toBe("settled in 1 periods (2 cells corrupted)");

    const last = handles.lastResult();
    expect(last).not.toBeNull();
    expect(last!.summary!.pattern).toEqual(toRows3(L));
  });

  it("blocks a second retrieval while one is in flight", async () => {
    let release!: (r: Response) => void;
    const gate = new Promise<Response>((resolve) => {
      release = resolve;
    });
    const { handles, calls } = {
      ...(await (async () => {
        const stub = stubService({ retrieve: () => gate });
        const handles = buildApp(root, new ApiClient("http://svc"));
        await memorized(handles);
        return { handles, ...stub };
      })()),
    };

    handles.retrieveButton.click();
    expect(handles.retrieveButton.disabled).toBe(true);
    handles.retrieveButton.click(); // disabled view of the same guard
    release(jsonResponse(RETRIEVE_RESULT));
    await handles.retrievalSettled();
    handles.playback.pause();
    expect(calls.retrieve).toBe(1);
    expect(handles.retrieveButton.disabled).toBe(false);
  });

  it("retries the trace stream once after a mid-stream failure", async () => {
    let traceCalls = 0;
    const brokenBody = new ReadableStream<Uint8Array>({
      start(controller) {
        controller.enqueue(new TextEncoder().encode("event: frame\ndata: {\"index\":0"));
        controller.error(new Error("connection reset"));
      },
    });
    const stub = stubService({
      trace: () => {
        traceCalls += 1;
        return traceCalls === 1 ? new Response(brokenBody, { status: 200 }) : sseResponse(TRACE_SSE);
      },
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    await memorized(handles);

    handles.retrieveButton.click();
    await handles.retrievalSettled();
    handles.playback.pause();

    expect(stub.calls.trace).toBe(2);
    expect(handles.playback.frameCount).toBe(2);
    expect(handles.statusLine.classList.contains("error")).toBe(false);
  });

  it("reports a clean error when the stream fails twice", async () => {
    stubService({
      trace: () =>
        new Response(
          new ReadableStream<Uint8Array>({
            start(controller) {
              controller.error(new Error("connection reset"));
            },
          }),
          { status: 200 },
        ),
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    await memorized(handles);

    handles.retrieveButton.click();
    await handles.retrievalSettled();

    expect(handles.statusLine.classList.contains("error")).toBe(true);
    expect(handles.statusLine.textContent).toContain("connection reset");
    expect(handles.retrieveButton.disabled).toBe(false);
  });

  it("errors when the stream frame count disagrees with the response", async () => {
    stubService({
      trace: () =>
        sseResponse(
          `event: frame\ndata: ${JSON.stringify({ index: 0, relative_phases: [], pattern: toRows3(L) })}\n\n` +
          `event: summary\ndata: ${JSON.stringify({ settled: true, timed_out: false, cycles_to_settle: 1, pattern: toRows3(L) })}\n\n`,
        ),
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    await memorized(handles);
    handles.retrieveButton.click();
    await handles.retrievalSettled();
    expect(handles.statusLine.textContent).toContain("1 of 2 frames");
    expect(handles.statusLine.classList.contains("error")).toBe(true);
  });

  it("surfaces dimension conflicts from the service", async () => {
    stubService({
      retrieve: () => jsonResponse({ detail: "pattern is 2x2, session was trained at 3x3" }, 409),
    });
    const handles = buildApp(root, new ApiClient("http://svc"));
    await memorized(handles);
    handles.retrieveButton.click();
    await handles.retrievalSettled();
    expect(handles.statusLine.textContent).toBe(
      "service error: pattern is 2x2, session was trained at 3x3",
    );
  });
});
