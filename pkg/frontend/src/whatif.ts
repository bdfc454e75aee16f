import type { Client } from './api.js';
import type { PatchDoc, WhatIfResponse } from './types.js';

/**
 * Debounced what-if previews with latest-wins semantics: at most one
 * request is in flight, and a newer schedule aborts and supersedes it.
 */
export class PreviewScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private seq = 0;

  constructor(
    private client: Client,
    private debounceMs = 250
  ) {}

  schedule(
    patch: PatchDoc,
    apply: (response: WhatIfResponse) => void,
    onError: (error: unknown) => void
  ): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(patch, apply, onError);
    }, this.debounceMs);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.inflight?.abort();
    this.inflight = null;
    this.seq += 1;
  }

  private async fire(
    patch: PatchDoc,
    apply: (response: WhatIfResponse) => void,
    onError: (error: unknown) => void
  ): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const token = ++this.seq;
    try {
      const response = await this.client.whatif(patch, controller.signal);
      if (token === this.seq) {
        this.inflight = null;
        apply(response);
      }
    } catch (error) {
      if (controller.signal.aborted) return; // superseded, drop silently
      if (token === this.seq) {
        this.inflight = null;
        onError(error);
      }
    }
  }
}
