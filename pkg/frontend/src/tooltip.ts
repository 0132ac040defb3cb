/** Phrase tooltip: in-context definition, persona scenario, and a
 * clarification-question box. At most one tooltip is open at a time. */

import type { ApiClient } from "./api";
import type { EventQueue } from "./events";
import type { AskResult, ScopeResult } from "./types";

export interface TooltipContext {
  policyId: string;
  chunkId: string;
  span?: [number, number];
  phraseText: string;
}

export class TooltipManager {
  private current: HTMLElement | null = null;
  private currentKey: string | null = null;

  constructor(
    private api: ApiClient,
    private events: EventQueue,
    private onError: (message: string) => void,
    private onViewChunk: (chunkId: string) => void,
  ) {}

  get openKey(): string | null {
    return this.currentKey;
  }

  close(): void {
    this.current?.remove();
    this.current = null;
    this.currentKey = null;
  }

  async open(anchor: HTMLElement, ctx: TooltipContext): Promise<void> {
    this.close(); // invariant: at most one tooltip
    const tooltip = document.createElement("div");
    tooltip.className = "phrase-tooltip";
    tooltip.dataset.phrase = ctx.phraseText;
    tooltip.textContent = "looking up…";
    anchor.appendChild(tooltip);
    this.current = tooltip;
    this.currentKey = `${ctx.chunkId}:${ctx.phraseText}`;

    let scope: ScopeResult;
    try {
      scope = await this.api.phraseScope({
        policy_id: ctx.policyId,
        chunk_id: ctx.chunkId,
        ...(ctx.span ? { span: ctx.span } : { phrase_text: ctx.phraseText }),
      });
    } catch (err) {
      this.onError(`phrase lookup failed: ${String(err)}`);
      this.close();
      return;
    }
    if (this.current !== tooltip) return; // a newer tooltip replaced us
    this.events.record("open_definition", {
      policy_id: ctx.policyId, chunk_id: ctx.chunkId, phrase: ctx.phraseText,
    });
    this.events.record("open_scenario", {
      policy_id: ctx.policyId, chunk_id: ctx.chunkId, phrase: ctx.phraseText,
    });
    tooltip.textContent = "";
    tooltip.appendChild(this.section("Definition", scope.definition,
                                     "definition"));
    if (scope.definition_refs.length > 0) {
      tooltip.appendChild(this.refsRow(scope.definition_refs));
    }
    tooltip.appendChild(this.section("Scenario", scope.scenario, "scenario"));
    tooltip.appendChild(this.askBox(ctx));
    const close = document.createElement("button");
    close.className = "tooltip-close";
    close.textContent = "×";
    close.addEventListener("click", (ev) => {
      ev.stopPropagation();
      this.close();
    });
    tooltip.prepend(close);
  }

  private section(title: string, body: string, cls: string): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = `tooltip-section ${cls}`;
    const h = document.createElement("div");
    h.className = "tooltip-heading";
    h.textContent = title;
    const p = document.createElement("p");
    p.textContent = body;
    wrap.append(h, p);
    return wrap;
  }

  private refsRow(refs: string[]): HTMLElement {
    const row = document.createElement("div");
    row.className = "tooltip-refs";
    row.appendChild(document.createTextNode("sources: "));
    refs.forEach((chunkId, i) => {
      const link = document.createElement("button");
      link.className = "ref-link";
      link.textContent = `[${i + 1}]`;
      link.dataset.chunkId = chunkId;
      link.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.onViewChunk(chunkId);
      });
      row.appendChild(link);
    });
    return row;
  }

  private askBox(ctx: TooltipContext): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "tooltip-section ask";
    const h = document.createElement("div");
    h.className = "tooltip-heading";
    h.textContent = "Ask about this";
    const input = document.createElement("input");
    input.className = "ask-input";
    input.placeholder = "e.g. Can I delete my data?";
    const button = document.createElement("button");
    button.className = "ask-submit";
    button.textContent = "Ask";
    const answer = document.createElement("div");
    answer.className = "ask-answer";
    const submit = async () => {
      const question = input.value.trim();
      if (!question) return;
      this.events.record("ask_question", {
        policy_id: ctx.policyId, chunk_id: ctx.chunkId,
        phrase: ctx.phraseText,
      });
      answer.textContent = "…";
      let result: AskResult;
      try {
        result = await this.api.ask({
          policy_id: ctx.policyId, chunk_id: ctx.chunkId,
          phrase: ctx.phraseText, question,
        });
      } catch (err) {
        answer.textContent = "";
        this.onError(`question failed: ${String(err)}`);
        return;
      }
      answer.textContent = result.answer_text;
      if (result.refs.length > 0) {
        answer.appendChild(this.refsRow(result.refs));
      }
    };
    button.addEventListener("click", (ev) => {
      ev.stopPropagation();
      void submit();
    });
    input.addEventListener("keydown", (ev) => {
      ev.stopPropagation();
      if (ev.key === "Enter") void submit();
    });
    input.addEventListener("click", (ev) => ev.stopPropagation());
    wrap.append(h, input, button, answer);
    return wrap;
  }
}
