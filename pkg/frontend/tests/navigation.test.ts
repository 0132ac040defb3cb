/** Navigation closure: summary click jumps to the span, highlight-bar
 * click jumps back to the summary, both in one click per snippet. */

import { beforeEach, describe, expect, it } from "vitest";

import { ReadingApp } from "../src/app";
import {
  appElements,
  indexedLayout,
  makeFakeServer,
  makePolicy,
} from "./fixtures";

describe("bidirectional snippet navigation", () => {
  let app: ReadingApp;
  let els: ReturnType<typeof appElements>;

  beforeEach(async () => {
    els = appElements();
    const server = makeFakeServer(makePolicy("policy-a", 10));
    app = new ReadingApp(server.api, els, {
      layout: indexedLayout(),
      sessionId: "nav-test",
    });
    await app.start();
  });

  it("renders ten summaries and ten text rows with matching ids", () => {
    const summaries = els.summaryPanel.querySelectorAll(".summary-snippet");
    const rows = els.textPanel.querySelectorAll(".snippet-row");
    expect(summaries.length).toBe(10);
    expect(rows.length).toBe(10);
  });

  it("summary click brings the referenced span into view, for all 10", () => {
    const layout = indexedLayout();
    for (let i = 0; i < 10; i++) {
      const summary = els.summaryPanel.querySelector<HTMLElement>(
        `.summary-snippet[data-snippet-id="snip-${i}"]`);
      expect(summary).not.toBeNull();
      summary!.click();
      const row = els.textPanel.querySelector<HTMLElement>(
        `.snippet-row[data-snippet-id="snip-${i}"]`);
      expect(row).not.toBeNull();
      // one click scrolled the text panel to the row's layout offset
      expect(els.textPanel.scrollTop)
        .toBe(Math.max(0, layout.offsetWithin(row!, els.textPanel)));
      expect(row!.classList.contains("flash")).toBe(true);
    }
  });

  it("highlight-bar click brings the summary into view, for all 10", () => {
    const layout = indexedLayout();
    for (let i = 0; i < 10; i++) {
      const bar = els.textPanel.querySelector<HTMLElement>(
        `.snippet-row[data-snippet-id="snip-${i}"] .highlight-bar`);
      expect(bar).not.toBeNull();
      bar!.click();
      const summary = els.summaryPanel.querySelector<HTMLElement>(
        `.summary-snippet[data-snippet-id="snip-${i}"]`);
      expect(els.summaryPanel.scrollTop)
        .toBe(Math.max(0, layout.offsetWithin(summary!, els.summaryPanel)));
      expect(summary!.classList.contains("flash")).toBe(true);
    }
  });

  it("summary and bar of the same row reference the same snippet id", () => {
    for (let i = 0; i < 10; i++) {
      const row = els.textPanel.querySelectorAll<HTMLElement>(".snippet-row")[i];
      const bar = row.querySelector<HTMLElement>(".highlight-bar")!;
      expect(bar.dataset.snippetId).toBe(row.dataset.snippetId);
      const summary = els.summaryPanel.querySelector(
        `.summary-snippet[data-snippet-id="${row.dataset.snippetId}"]`);
      expect(summary).not.toBeNull();
    }
  });

  it("colors come from the server tokens, not reclassification", () => {
    const policy = makePolicy("policy-a", 10);
    for (const snippet of policy.snippets) {
      const summary = els.summaryPanel.querySelector<HTMLElement>(
        `.summary-snippet[data-snippet-id="${snippet.snippet_id}"]`)!;
      expect(summary.className).toContain(`tok-${snippet.color}`);
      const bar = els.textPanel.querySelector<HTMLElement>(
        `.snippet-row[data-snippet-id="${snippet.snippet_id}"] .highlight-bar`)!;
      expect(bar.className).toContain(`tok-${snippet.color}`);
    }
  });

  it("section headings from chunk separators are rendered", () => {
    const headings = Array.from(
      els.textPanel.querySelectorAll(".text-heading"))
      .map((h) => h.textContent);
    expect(headings).toEqual(["Policy A", "Section Two"]);
  });
});
