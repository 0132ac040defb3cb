/** Left panel: the condensed list of summary snippets. */

import type { PolicyView } from "./types";

export function renderSummaryPanel(
  container: HTMLElement,
  policy: PolicyView,
  onClick: (snippetId: string) => void,
): void {
  container.textContent = "";
  for (const snippet of policy.snippets) {
    if (snippet.unsummarized) continue;
    const row = document.createElement("div");
    row.className = `summary-snippet ${snippet.color ? `tok-${snippet.color}` : "tok-none"}`;
    row.dataset.snippetId = snippet.snippet_id;
    row.textContent = snippet.summary_text;
    if (snippet.truncated) {
      row.title = "summary truncated to the 12-word limit";
    }
    row.addEventListener("click", () => onClick(snippet.snippet_id));
    container.appendChild(row);
  }
}

export function findSummary(
  container: HTMLElement,
  snippetId: string,
): HTMLElement | null {
  return container.querySelector(
    `.summary-snippet[data-snippet-id="${snippetId}"]`);
}
