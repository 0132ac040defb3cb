/** Top navigation: policy tabs with power meters and hover previews.
 * The same hover preview attaches to inline policy links in body text. */

import { renderMeterBar } from "./meter";
import type { PolicyNavEntry, PreviewEntry } from "./types";

export const HOVER_PREVIEW_MS = 1000;

export interface NavHandlers {
  onNavigate(policyId: string): void;
  onViewSnippet(policyId: string, snippetId: string): void;
  onPreviewOpened(policyId: string, durationMs: number): void;
}

export class HoverPreview {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private popup: HTMLElement | null = null;
  private enteredAt = 0;

  constructor(
    private handlers: NavHandlers,
    private thresholdMs: number = HOVER_PREVIEW_MS,
    private now: () => number = () => Date.now(),
  ) {}

  attach(anchor: HTMLElement, entry: PolicyNavEntry): void {
    anchor.addEventListener("mouseenter", () => {
      this.enteredAt = this.now();
      this.timer = setTimeout(() => this.open(anchor, entry), this.thresholdMs);
    });
    anchor.addEventListener("mouseleave", () => {
      if (this.timer !== null) {
        clearTimeout(this.timer);
        this.timer = null;
      }
      this.close();
    });
  }

  private open(anchor: HTMLElement, entry: PolicyNavEntry): void {
    this.close();
    const duration = Math.max(this.thresholdMs, this.now() - this.enteredAt);
    this.handlers.onPreviewOpened(entry.policy_id, duration);
    const popup = document.createElement("div");
    popup.className = "policy-preview";
    popup.dataset.policyId = entry.policy_id;
    const heading = document.createElement("div");
    heading.className = "preview-title";
    heading.textContent = entry.title;
    popup.appendChild(heading);
    const list = document.createElement("ul");
    for (const item of entry.preview) {
      list.appendChild(this.previewItem(entry.policy_id, item));
    }
    popup.appendChild(list);
    anchor.appendChild(popup);
    this.popup = popup;
  }

  private previewItem(policyId: string, item: PreviewEntry): HTMLElement {
    const li = document.createElement("li");
    li.className = item.color ? `tok-${item.color}` : "tok-none";
    const text = document.createElement("span");
    text.textContent = item.summary_text;
    li.appendChild(text);
    const view = document.createElement("button");
    view.className = "view-source";
    view.title = "view referenced text";
    view.textContent = "‟"; // backquote-style source marker
    view.dataset.snippetId = item.snippet_id;
    view.addEventListener("click", (ev) => {
      ev.stopPropagation();
      this.close();
      this.handlers.onViewSnippet(policyId, item.snippet_id);
    });
    li.appendChild(view);
    return li;
  }

  close(): void {
    this.popup?.remove();
    this.popup = null;
  }
}

export function renderNav(
  container: HTMLElement,
  policies: PolicyNavEntry[],
  handlers: NavHandlers,
  preview: HoverPreview,
): void {
  container.textContent = "";
  const ordered = [...policies].sort((a, b) => a.order_index - b.order_index);
  for (const entry of ordered) {
    const tab = document.createElement("button");
    tab.className = "nav-policy";
    tab.dataset.policyId = entry.policy_id;
    const label = document.createElement("span");
    label.className = "nav-title";
    label.textContent = entry.title;
    tab.appendChild(label);
    tab.appendChild(renderMeterBar(entry.meter));
    tab.addEventListener("click", () => handlers.onNavigate(entry.policy_id));
    preview.attach(tab, entry);
    container.appendChild(tab);
  }
}

export function setActiveTab(container: HTMLElement, policyId: string): void {
  container.querySelectorAll<HTMLElement>(".nav-policy").forEach((tab) => {
    tab.classList.toggle("active", tab.dataset.policyId === policyId);
  });
}
