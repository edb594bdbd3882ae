import { afterEach, beforeEach, describe, expect, test, vi } from "vitest";

import {
  DEBOUNCE_MS,
  LatestFetcher,
  fieldUrl,
  panoramasUrl,
  pfmapUrl,
  readApiError,
  renderUrl,
} from "../src/api.js";
import { defaultState, withChanges } from "../src/state.js";

const BASE = "http://127.0.0.1:8000";

describe("url builders", () => {
  test("pfmap url carries the rig and raster, in a stable order", () => {
    const state = withChanges(defaultState(), { roll: 45, pitch: -10, xi: 0.5 });
    expect(pfmapUrl(BASE, state, 512)).toBe(
      "http://127.0.0.1:8000/api/pfmap?roll=45&pitch=-10&vfov=90&xi=0.5&w=512&h=512",
    );
  });

  test("pfmap url never includes yaw", () => {
    const state = withChanges(defaultState(), { yaw: 270 });
    expect(pfmapUrl(BASE, state, 256)).not.toContain("yaw");
  });

  test("render url adds yaw, the panorama id and the preview raster", () => {
    const state = withChanges(defaultState(), { yaw: 305.5, resolution: 256 });
    expect(renderUrl(BASE, state, "alley east")).toBe(
      "http://127.0.0.1:8000/api/render?roll=0&pitch=0&vfov=90&xi=0&w=256&h=256&yaw=305.5&pano=alley+east",
    );
  });

  test("field url adds the anchor grid pitch", () => {
    const state = defaultState();
    expect(fieldUrl(BASE, state, 64)).toBe(
      "http://127.0.0.1:8000/api/field?roll=0&pitch=0&vfov=90&xi=0&w=512&h=512&grid=64",
    );
  });

  test("panoramas url", () => {
    expect(panoramasUrl(BASE)).toBe("http://127.0.0.1:8000/api/panoramas");
  });
});

interface Call {
  url: string;
  signal: AbortSignal | undefined;
  resolve: (response: Response) => void;
  reject: (error: unknown) => void;
}

function makeFetch(): { calls: Call[]; impl: (url: string, init?: { signal?: AbortSignal }) => Promise<Response> } {
  const calls: Call[] = [];
  const impl = (url: string, init?: { signal?: AbortSignal }) =>
    new Promise<Response>((resolve, reject) => {
      calls.push({ url, signal: init?.signal, resolve, reject });
    });
  return { calls, impl };
}

function stubResponse(): Response {
  return { ok: true } as unknown as Response;
}

describe("LatestFetcher", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  test("the debounce window is 80 ms", () => {
    expect(DEBOUNCE_MS).toBe(80);
  });

  test("waits out the debounce window before fetching", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const promise = fetcher.request("u1");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS - 1);
    expect(calls).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(calls).toHaveLength(1);
    expect(calls[0]?.url).toBe("u1");
    const response = stubResponse();
    calls[0]?.resolve(response);
    await expect(promise).resolves.toBe(response);
  });

  test("a burst collapses into one request for the newest url", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const first = fetcher.request("a");
    const second = fetcher.request("b");
    const third = fetcher.request("c");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    expect(calls.map((call) => call.url)).toEqual(["c"]);
    await expect(first).resolves.toBeNull();
    await expect(second).resolves.toBeNull();
    const response = stubResponse();
    calls[0]?.resolve(response);
    await expect(third).resolves.toBe(response);
  });

  test("a new request aborts the one already in flight", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const first = fetcher.request("a");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    expect(calls[0]?.signal?.aborted).toBe(false);
    const second = fetcher.request("b");
    expect(calls[0]?.signal?.aborted).toBe(true);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    expect(calls.map((call) => call.url)).toEqual(["a", "b"]);
    calls[0]?.reject(new Error("aborted"));
    await expect(first).resolves.toBeNull();
    const response = stubResponse();
    calls[1]?.resolve(response);
    await expect(second).resolves.toBe(response);
  });

  test("a late response from a superseded fetch never lands", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const first = fetcher.request("a");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    const second = fetcher.request("b");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    // The stale fetch resolves anyway, e.g. the abort raced the response.
    calls[0]?.resolve(stubResponse());
    await expect(first).resolves.toBeNull();
    const fresh = stubResponse();
    calls[1]?.resolve(fresh);
    await expect(second).resolves.toBe(fresh);
  });

  test("network failure resolves null instead of rejecting", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const promise = fetcher.request("a");
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS);
    calls[0]?.reject(new TypeError("fetch failed"));
    await expect(promise).resolves.toBeNull();
  });

  test("cancel drops a pending request without fetching", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl);
    const promise = fetcher.request("a");
    fetcher.cancel();
    await vi.advanceTimersByTimeAsync(10 * DEBOUNCE_MS);
    expect(calls).toHaveLength(0);
    await expect(promise).resolves.toBeNull();
  });

  test("a custom delay is honored", async () => {
    const { calls, impl } = makeFetch();
    const fetcher = new LatestFetcher(impl, 5);
    void fetcher.request("a");
    await vi.advanceTimersByTimeAsync(4);
    expect(calls).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(calls).toHaveLength(1);
  });
});

describe("readApiError", () => {
  test("passes a structured error body through", async () => {
    const response = {
      status: 400,
      json: async () => ({ error: "out of range", param: "vfov", range: [15, 140] }),
    } as unknown as Response;
    const body = await readApiError(response);
    expect(body.error).toBe("out of range");
    expect(body.param).toBe("vfov");
    expect(body.range).toEqual([15, 140]);
  });

  test("falls back to a generic message for non-json bodies", async () => {
    const response = {
      status: 503,
      json: async () => {
        throw new Error("not json");
      },
    } as unknown as Response;
    await expect(readApiError(response)).resolves.toEqual({ error: "service error (503)" });
  });

  test("falls back when json lacks an error field", async () => {
    const response = {
      status: 422,
      json: async () => ({ detail: "something else" }),
    } as unknown as Response;
    await expect(readApiError(response)).resolves.toEqual({ error: "service error (422)" });
  });
});
