/** Interaction telemetry: schema-checked events, throttled scrolls,
 * async batched flushing with retry. Never loses the reading position
 * over a network failure; it only drops its own retry loop after the
 * cap. */

import type { EventKind, InteractionEvent } from "./types";

export const EVENT_SCHEMAS: Record<EventKind, Record<string, "string" | "number">> = {
  scroll: { policy_id: "string", panel: "string", offset: "number" },
  click_summary_snippet: { policy_id: "string", snippet_id: "string" },
  click_highlight_bar: { policy_id: "string", snippet_id: "string" },
  hover_power_meter: { policy_id: "string", duration_ms: "number" },
  open_definition: { policy_id: "string", chunk_id: "string", phrase: "string" },
  open_scenario: { policy_id: "string", chunk_id: "string", phrase: "string" },
  ask_question: { policy_id: "string", chunk_id: "string", phrase: "string" },
  navigate_policy: { policy_id: "string" },
};

export function validateEvent(event: InteractionEvent): string | null {
  const schema = EVENT_SCHEMAS[event.kind];
  if (!schema) return `unknown kind ${event.kind}`;
  if (!Number.isInteger(event.seq) || event.seq < 0) return "bad seq";
  for (const [field, type] of Object.entries(schema)) {
    if (typeof event.payload[field] !== type) {
      return `${event.kind}.${field} must be ${type}`;
    }
  }
  if (event.kind === "scroll" &&
      event.payload.panel !== "summary" && event.payload.panel !== "text") {
    return "scroll.panel must be summary|text";
  }
  return null;
}

export interface EventSink {
  (events: InteractionEvent[]): Promise<{ accepted: number }>;
}

const SCROLL_MIN_INTERVAL_MS = 200; // at most 5 scroll events per second
const FLUSH_INTERVAL_MS = 1000;
const MAX_RETRIES = 5;

export class EventQueue {
  private seq = 0;
  private pending: InteractionEvent[] = [];
  private lastScrollAt: Partial<Record<string, number>> = {};
  private flushTimer: ReturnType<typeof setTimeout> | null = null;
  private retries = 0;
  readonly emitted: InteractionEvent[] = [];

  constructor(
    private sink: EventSink,
    readonly sessionId: string,
    private now: () => number = () => Date.now(),
    private onError: (message: string) => void = () => undefined,
  ) {}

  get nextSeq(): number {
    return this.seq + 1;
  }

  private push(kind: EventKind, payload: Record<string, string | number>): void {
    const event: InteractionEvent = {
      session_id: this.sessionId,
      seq: ++this.seq,
      timestamp: this.now(),
      kind,
      payload,
    };
    const problem = validateEvent(event);
    if (problem) {
      // a malformed event is a programming error; surface, don't enqueue
      this.onError(`invalid event: ${problem}`);
      return;
    }
    this.pending.push(event);
    this.emitted.push(event);
    this.scheduleFlush();
  }

  /** Clicks and feature usage report immediately (next flush tick). */
  record(kind: Exclude<EventKind, "scroll">,
         payload: Record<string, string | number>): void {
    this.push(kind, payload);
  }

  /** Scrolls are throttled per panel to bound log volume. */
  recordScroll(policyId: string, panel: "summary" | "text",
               offset: number): void {
    const key = panel;
    const at = this.now();
    const last = this.lastScrollAt[key] ?? -Infinity;
    if (at - last < SCROLL_MIN_INTERVAL_MS) return;
    this.lastScrollAt[key] = at;
    this.push("scroll", { policy_id: policyId, panel, offset });
  }

  private scheduleFlush(): void {
    if (this.flushTimer !== null) return;
    this.flushTimer = setTimeout(() => {
      this.flushTimer = null;
      void this.flush();
    }, FLUSH_INTERVAL_MS);
  }

  async flush(): Promise<void> {
    if (this.pending.length === 0) return;
    const batch = this.pending;
    this.pending = [];
    try {
      await this.sink(batch);
      this.retries = 0;
    } catch (err) {
      // put the batch back in order and retry later; reading continues
      this.pending = batch.concat(this.pending);
      this.retries += 1;
      if (this.retries <= MAX_RETRIES) {
        this.scheduleFlush();
      } else {
        this.onError(`event delivery failed: ${String(err)}`);
      }
    }
  }
}

/** Per-feature usage counts from a raw event list (session export). */
export function featureCounts(events: InteractionEvent[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const event of events) {
    counts[event.kind] = (counts[event.kind] ?? 0) + 1;
  }
  return counts;
}
