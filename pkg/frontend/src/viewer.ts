/**
 * Preview request scheduling. Dragging fires many state changes per second;
 * the scheduler debounces them and keeps at most one request in flight,
 * always sending the newest state next — stale frames are never requested.
 */

import type { SelectionState } from "./state.js";

export type SendFn = (state: SelectionState) => Promise<Blob>;

export class PreviewScheduler {
  private readonly send: SendFn;
  private readonly onResult: (blob: Blob, state: SelectionState) => void;
  private readonly onError: (err: unknown) => void;
  private readonly delayMs: number;

  private timer: ReturnType<typeof setTimeout> | null = null;
  private queued: SelectionState | null = null;
  private inFlight = false;

  constructor(
    send: SendFn,
    onResult: (blob: Blob, state: SelectionState) => void,
    onError: (err: unknown) => void,
    delayMs = 150,
  ) {
    this.send = send;
    this.onResult = onResult;
    this.onError = onError;
    this.delayMs = delayMs;
  }

  /** Ask for a preview of `state` soon; supersedes any pending request. */
  request(state: SelectionState): void {
    this.queued = state;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush();
    }, this.delayMs);
  }

  private async flush(): Promise<void> {
    if (this.inFlight || this.queued === null) return;
    const state = this.queued;
    this.queued = null;
    this.inFlight = true;
    try {
      const blob = await this.send(state);
      this.onResult(blob, state);
    } catch (err) {
      this.onError(err);
    } finally {
      this.inFlight = false;
      // A newer state may have arrived while the request was running.
      if (this.queued !== null && this.timer === null) void this.flush();
    }
  }
}
