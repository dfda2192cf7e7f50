/**
 * Request scheduling for the what-if panel.
 *
 * Slider drags produce a burst of candidate documents. The queue debounces
 * them (250 ms), keeps at most one request in flight by aborting the
 * previous one, and applies responses strictly in issue order: a response
 * that arrives after a newer one has been applied is dropped, so the panel
 * can never show numbers for an assumption the analyst has already moved
 * past.
 */

import type { AssessmentReport, ScenarioDocument } from "./types.js";

export type Sender = (doc: ScenarioDocument, signal: AbortSignal) => Promise<AssessmentReport>;

export interface QueueHooks {
  /** Called with each accepted (non-stale) report. */
  onReport: (report: AssessmentReport, doc: ScenarioDocument) => void;
  /** Called when a request fails for a reason other than being superseded.
   * The consumer keeps its last good report and shows a staleness badge. */
  onError?: (error: unknown) => void;
}

export interface QueueOptions {
  debounceMs?: number;
}

const DEFAULT_DEBOUNCE_MS = 250;

function isAbortError(error: unknown): boolean {
  return error instanceof Error && error.name === "AbortError";
}

export class AssessmentQueue {
  private readonly send: Sender;
  private readonly hooks: QueueHooks;
  private readonly debounceMs: number;

  private pendingDoc: ScenarioDocument | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private issued = 0;
  private applied = 0;

  constructor(send: Sender, hooks: QueueHooks, options: QueueOptions = {}) {
    this.send = send;
    this.hooks = hooks;
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
  }

  /** Schedule an assessment of `doc`, replacing any not-yet-sent candidate. */
  submit(doc: ScenarioDocument): void {
    this.pendingDoc = doc;
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => this.fire(), this.debounceMs);
  }

  /** Send the pending candidate immediately (slider release, form submit). */
  flush(): void {
    if (this.pendingDoc !== null) {
      if (this.timer !== null) {
        clearTimeout(this.timer);
        this.timer = null;
      }
      this.fire();
    }
  }

  /** Cancel everything; the queue stays usable afterwards. */
  dispose(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pendingDoc = null;
    if (this.controller) {
      this.controller.abort();
      this.controller = null;
    }
  }

  get inFlight(): boolean {
    return this.controller !== null;
  }

  private fire(): void {
    const doc = this.pendingDoc;
    this.timer = null;
    this.pendingDoc = null;
    if (doc === null) {
      return;
    }
    if (this.controller) {
      this.controller.abort();
    }
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.issued;

    this.send(doc, controller.signal).then(
      (report) => {
        if (this.controller === controller) {
          this.controller = null;
        }
        if (ticket > this.applied) {
          this.applied = ticket;
          this.hooks.onReport(report, doc);
        }
      },
      (error) => {
        if (this.controller === controller) {
          this.controller = null;
        }
        if (isAbortError(error) || ticket <= this.applied) {
          return;
        }
        this.applied = ticket;
        this.hooks.onError?.(error);
      },
    );
  }
}
