/** Three-panel reading app: top navigation with power meters, condensed
 * summaries on the left, original text with highlight bars on the
 * right. All data comes from the reading service; no client-side
 * reclassification. */

import { ApiClient } from "./api";
import { EventQueue } from "./events";
import { renderMeterBar } from "./meter";
import { HoverPreview, renderNav, setActiveTab } from "./nav";
import { bringIntoView, LayoutReader, domLayout } from "./scrolling";
import { initialState, newSessionId, ViewState } from "./state";
import { findSummary, renderSummaryPanel } from "./summary";
import { TooltipManager } from "./tooltip";
import {
  findSnippetRow,
  renderTextPanel,
  selectionTarget,
} from "./textpanel";
import type { ContractPolicies, PolicyView } from "./types";

export interface AppElements {
  nav: HTMLElement;
  summaryPanel: HTMLElement;
  textPanel: HTMLElement;
  toast: HTMLElement;
}

export interface AppOptions {
  layout?: LayoutReader;
  hoverThresholdMs?: number;
  now?: () => number;
  sessionId?: string;
}

export class ReadingApp {
  readonly state: ViewState = initialState();
  readonly events: EventQueue;
  readonly tooltips: TooltipManager;
  private layout: LayoutReader;
  private contract: ContractPolicies | null = null;
  private policy: PolicyView | null = null;
  readonly preview: HoverPreview;

  constructor(
    private api: ApiClient,
    private els: AppElements,
    options: AppOptions = {},
  ) {
    this.layout = options.layout ?? domLayout;
    this.events = new EventQueue(
      (events) => this.api.postEvents(events),
      options.sessionId ?? newSessionId(),
      options.now,
      (message) => this.showToast(message),
    );
    this.tooltips = new TooltipManager(
      this.api,
      this.events,
      (message) => this.showToast(message),
      (chunkId) => this.focusChunk(chunkId),
    );
    this.preview = new HoverPreview(
      {
        onNavigate: (policyId) => void this.openPolicy(policyId),
        onViewSnippet: (policyId, snippetId) =>
          void this.openPolicy(policyId, snippetId),
        onPreviewOpened: (policyId, durationMs) =>
          this.events.record("hover_power_meter",
                             { policy_id: policyId, duration_ms: durationMs }),
      },
      options.hoverThresholdMs,
      options.now,
    );
    this.wireScrollTracking();
    this.wireSelectionScope();
    document.addEventListener("click", (ev) => {
      const target = ev.target as HTMLElement | null;
      if (target && !target.closest(".phrase-tooltip") &&
          !target.closest(".phrase")) {
        this.tooltips.close();
        this.state.openTooltipKey = null;
      }
    });
  }

  async start(): Promise<void> {
    const contracts = await this.api.contracts();
    if (contracts.length === 0) {
      this.showToast("no contracts loaded");
      return;
    }
    this.contract = await this.api.contractPolicies(contracts[0].contract_id);
    renderNav(
      this.els.nav,
      this.contract.policies,
      {
        onNavigate: (policyId) => void this.openPolicy(policyId),
        onViewSnippet: (policyId, snippetId) =>
          void this.openPolicy(policyId, snippetId),
        onPreviewOpened: (policyId, durationMs) =>
          this.events.record("hover_power_meter",
                             { policy_id: policyId, duration_ms: durationMs }),
      },
      this.preview,
    );
    const first = [...this.contract.policies]
      .sort((a, b) => a.order_index - b.order_index)[0];
    await this.openPolicy(first.policy_id);
  }

  async openPolicy(policyId: string, focusSnippetId?: string): Promise<void> {
    if (this.state.activePolicyId !== policyId) {
      this.events.record("navigate_policy", { policy_id: policyId });
    }
    try {
      this.policy = await this.api.policy(policyId);
    } catch (err) {
      this.showToast(`failed to load policy: ${String(err)}`);
      return; // reading position stays untouched on failure
    }
    this.state.activePolicyId = policyId;
    this.tooltips.close();
    setActiveTab(this.els.nav, policyId);
    renderSummaryPanel(this.els.summaryPanel, this.policy, (snippetId) =>
      this.onSummaryClick(snippetId));
    renderTextPanel(this.els.textPanel, this.policy, {
      onBarClick: (snippetId) => this.onBarClick(snippetId),
      onPhraseClick: (anchor, chunkId, span, surface) =>
        this.onPhraseClick(anchor, chunkId, span, surface),
      decorateLink: (el, targetPolicyId) =>
        this.decorateInlineLink(el, targetPolicyId),
    });
    this.els.summaryPanel.scrollTop = 0;
    this.els.textPanel.scrollTop = 0;
    if (focusSnippetId) this.focusSnippetInText(focusSnippetId);
  }

  /** Summary click jumps the right panel to the referenced span. */
  private onSummaryClick(snippetId: string): void {
    if (!this.state.activePolicyId) return;
    this.events.record("click_summary_snippet", {
      policy_id: this.state.activePolicyId, snippet_id: snippetId,
    });
    this.focusSnippetInText(snippetId);
  }

  /** Highlight-bar click jumps the left panel to the summary. */
  private onBarClick(snippetId: string): void {
    if (!this.state.activePolicyId) return;
    this.events.record("click_highlight_bar", {
      policy_id: this.state.activePolicyId, snippet_id: snippetId,
    });
    const summary = findSummary(this.els.summaryPanel, snippetId);
    if (summary) bringIntoView(this.els.summaryPanel, summary, this.layout);
  }

  private onPhraseClick(anchor: HTMLElement, chunkId: string,
                        span: [number, number], surface: string): void {
    if (!this.state.activePolicyId) return;
    this.state.openTooltipKey = `${chunkId}:${surface}`;
    void this.tooltips.open(anchor, {
      policyId: this.state.activePolicyId,
      chunkId,
      span,
      phraseText: surface,
    });
  }

  /** Inline policy links carry the target's meter and hover preview. */
  private decorateInlineLink(el: HTMLElement, targetPolicyId: string): void {
    const entry = this.contract?.policies.find(
      (p) => p.policy_id === targetPolicyId);
    if (!entry) return;
    el.classList.add("has-meter");
    el.appendChild(renderMeterBar(entry.meter));
    el.addEventListener("click", () => void this.openPolicy(targetPolicyId));
    this.preview.attach(el, entry);
  }

  focusSnippetInText(snippetId: string): void {
    const row = findSnippetRow(this.els.textPanel, snippetId);
    if (row) bringIntoView(this.els.textPanel, row, this.layout);
  }

  focusChunk(chunkId: string): void {
    const el = this.els.textPanel.querySelector<HTMLElement>(
      `.chunk[data-chunk-id="${chunkId}"]`);
    if (el) bringIntoView(this.els.textPanel, el, this.layout);
  }

  private wireScrollTracking(): void {
    this.els.summaryPanel.addEventListener("scroll", () => {
      this.state.summaryScroll = this.els.summaryPanel.scrollTop;
      if (this.state.activePolicyId) {
        this.events.recordScroll(this.state.activePolicyId, "summary",
                                 this.els.summaryPanel.scrollTop);
      }
    });
    this.els.textPanel.addEventListener("scroll", () => {
      this.state.textScroll = this.els.textPanel.scrollTop;
      if (this.state.activePolicyId) {
        this.events.recordScroll(this.state.activePolicyId, "text",
                                 this.els.textPanel.scrollTop);
      }
    });
  }

  /** Selecting an arbitrary span in the original text requests scope. */
  private wireSelectionScope(): void {
    this.els.textPanel.addEventListener("mouseup", () => {
      const sel = selectionTarget(
        typeof window !== "undefined" ? window.getSelection() : null);
      if (!sel || !this.state.activePolicyId) return;
      const anchor = this.els.textPanel.querySelector<HTMLElement>(
        `.chunk[data-chunk-id="${sel.chunkId}"]`);
      if (!anchor) return;
      this.state.openTooltipKey = `${sel.chunkId}:${sel.text}`;
      void this.tooltips.open(anchor, {
        policyId: this.state.activePolicyId,
        chunkId: sel.chunkId,
        phraseText: sel.text,
      });
    });
  }

  showToast(message: string): void {
    this.els.toast.textContent = message;
    this.els.toast.classList.add("visible");
    setTimeout(() => this.els.toast.classList.remove("visible"), 4000);
  }
}
