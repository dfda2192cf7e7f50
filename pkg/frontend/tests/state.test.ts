import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { AssessmentQueue } from "../src/state.js";
import type { AssessmentReport, ScenarioDocument } from "../src/types.js";

function doc(tag: string): ScenarioDocument {
  return { schema_version: 1, scenario: { service_id: tag } } as unknown as ScenarioDocument;
}

function report(tag: string): AssessmentReport {
  return { result: { effect_kg: tag.length } } as unknown as AssessmentReport;
}

interface PendingCall {
  doc: ScenarioDocument;
  signal: AbortSignal;
  resolve: (r: AssessmentReport) => void;
  reject: (e: unknown) => void;
}

/** A sender whose promises resolve only when the test says so; it records
 * abort signals but deliberately ignores them, to exercise the sequencing
 * guard separately from cancellation. */
function manualSender() {
  const calls: PendingCall[] = [];
  const send = (d: ScenarioDocument, signal: AbortSignal) =>
    new Promise<AssessmentReport>((resolve, reject) => {
      calls.push({ doc: d, signal, resolve, reject });
    });
  return { calls, send };
}

async function settle(): Promise<void> {
  await vi.advanceTimersByTimeAsync(0);
}

describe("AssessmentQueue", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("collapses a drag burst into one request carrying the last document", async () => {
    const { calls, send } = manualSender();
    const queue = new AssessmentQueue(send, { onReport: () => {} });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(100);
    queue.submit(doc("b"));
    queue.submit(doc("c"));
    await vi.advanceTimersByTimeAsync(249);
    expect(calls.length).toBe(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(calls.length).toBe(1);
    expect(calls[0]?.doc.scenario.service_id).toBe("c");
  });

  it("sends again for a separate interaction", async () => {
    const { calls, send } = manualSender();
    const seen: number[] = [];
    const queue = new AssessmentQueue(send, { onReport: (r) => seen.push(r.result.effect_kg) });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    calls[0]?.resolve(report("a"));
    await settle();

    queue.submit(doc("bb"));
    await vi.advanceTimersByTimeAsync(250);
    calls[1]?.resolve(report("bb"));
    await settle();

    expect(seen).toEqual([1, 2]);
  });

  it("aborts the in-flight request when a newer one fires", async () => {
    const { calls, send } = manualSender();
    const queue = new AssessmentQueue(send, { onReport: () => {} });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    queue.submit(doc("b"));
    await vi.advanceTimersByTimeAsync(250);

    expect(calls.length).toBe(2);
    expect(calls[0]?.signal.aborted).toBe(true);
    expect(calls[1]?.signal.aborted).toBe(false);
  });

  it("drops a stale response that lands after a newer one was applied", async () => {
    const { calls, send } = manualSender();
    const applied: number[] = [];
    const queue = new AssessmentQueue(send, { onReport: (r) => applied.push(r.result.effect_kg) });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    queue.submit(doc("bb"));
    await vi.advanceTimersByTimeAsync(250);

    calls[1]?.resolve(report("bb"));
    await settle();
    calls[0]?.resolve(report("a"));
    await settle();

    expect(applied).toEqual([2]);
  });

  it("routes failures to onError and keeps accepting newer work", async () => {
    const { calls, send } = manualSender();
    const errors: unknown[] = [];
    const applied: number[] = [];
    const queue = new AssessmentQueue(send, {
      onReport: (r) => applied.push(r.result.effect_kg),
      onError: (e) => errors.push(e),
    });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    calls[0]?.reject(new Error("service unreachable"));
    await settle();
    expect(errors.length).toBe(1);

    queue.submit(doc("bb"));
    await vi.advanceTimersByTimeAsync(250);
    calls[1]?.resolve(report("bb"));
    await settle();
    expect(applied).toEqual([2]);
  });

  it("stays silent when the failure is its own cancellation", async () => {
    const { calls, send } = manualSender();
    const errors: unknown[] = [];
    const applied: number[] = [];
    const queue = new AssessmentQueue(send, {
      onReport: (r) => applied.push(r.result.effect_kg),
      onError: (e) => errors.push(e),
    });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    queue.submit(doc("bb"));
    await vi.advanceTimersByTimeAsync(250);

    const abortError = new Error("aborted");
    abortError.name = "AbortError";
    calls[0]?.reject(abortError);
    calls[1]?.resolve(report("bb"));
    await settle();

    expect(errors).toEqual([]);
    expect(applied).toEqual([2]);
  });

  it("flush sends immediately without waiting out the debounce", async () => {
    const { calls, send } = manualSender();
    const queue = new AssessmentQueue(send, { onReport: () => {} });

    queue.submit(doc("a"));
    queue.flush();
    expect(calls.length).toBe(1);
    await vi.advanceTimersByTimeAsync(250);
    expect(calls.length).toBe(1);
  });

  it("dispose cancels pending and in-flight work", async () => {
    const { calls, send } = manualSender();
    const queue = new AssessmentQueue(send, { onReport: () => {} });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(250);
    expect(queue.inFlight).toBe(true);
    queue.submit(doc("b"));
    queue.dispose();
    await vi.advanceTimersByTimeAsync(250);

    expect(calls.length).toBe(1);
    expect(calls[0]?.signal.aborted).toBe(true);
    expect(queue.inFlight).toBe(false);
  });

  it("honours a custom debounce window", async () => {
    const { calls, send } = manualSender();
    const queue = new AssessmentQueue(send, { onReport: () => {} }, { debounceMs: 50 });

    queue.submit(doc("a"));
    await vi.advanceTimersByTimeAsync(49);
    expect(calls.length).toBe(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(calls.length).toBe(1);
  });
});
