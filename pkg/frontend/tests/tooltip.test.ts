/** Phrase tooltip: definition + scenario + ask box; one tooltip max. */

import { beforeEach, describe, expect, it, vi } from "vitest";

import { ReadingApp } from "../src/app";
import {
  appElements,
  indexedLayout,
  makeFakeServer,
  makePolicy,
} from "./fixtures";

describe("phrase scope tooltip", () => {
  let els: ReturnType<typeof appElements>;
  let app: ReadingApp;
  let server: ReturnType<typeof makeFakeServer>;

  beforeEach(async () => {
    els = appElements();
    server = makeFakeServer(makePolicy());
    app = new ReadingApp(server.api, els, {
      layout: indexedLayout(),
      sessionId: "tooltip-test",
    });
    await app.start();
  });

  function clickPhrase(): HTMLElement {
    const phrase = els.textPanel.querySelector<HTMLElement>(".phrase")!;
    phrase.click();
    return phrase;
  }

  it("click opens a tooltip with definition, scenario, and ask box", async () => {
    const phrase = clickPhrase();
    await vi.waitFor(() => {
      expect(phrase.querySelector(".tooltip-section.definition")).not.toBeNull();
    });
    const tooltip = phrase.querySelector<HTMLElement>(".phrase-tooltip")!;
    expect(tooltip.textContent).toContain("keep no licensing fees");
    expect(tooltip.querySelector(".tooltip-section.scenario")!.textContent)
      .toContain("Imagine royalty-free");
    expect(tooltip.querySelector(".ask-input")).not.toBeNull();
    expect(tooltip.querySelector(".tooltip-refs")).not.toBeNull();
    const kinds = app.events.emitted.map((e) => e.kind);
    expect(kinds).toContain("open_definition");
    expect(kinds).toContain("open_scenario");
  });

  it("asking a question shows the answer with source refs", async () => {
    const phrase = clickPhrase();
    await vi.waitFor(() =>
      expect(phrase.querySelector(".ask-input")).not.toBeNull());
    const input = phrase.querySelector<HTMLInputElement>(".ask-input")!;
    input.value = "Can I delete my data?";
    phrase.querySelector<HTMLElement>(".ask-submit")!.click();
    await vi.waitFor(() => {
      expect(phrase.querySelector(".ask-answer")!.textContent)
        .toContain("Answer about royalty-free");
    });
    expect(phrase.querySelector(".ask-answer .ref-link")).not.toBeNull();
    const ask = server.calls.find((c) => c.path === "/phrases/ask");
    expect(ask?.body).toMatchObject({ question: "Can I delete my data?" });
    expect(app.events.emitted.some((e) => e.kind === "ask_question")).toBe(true);
  });

  it("at most one tooltip is open at a time", async () => {
    const phrase = clickPhrase();
    await vi.waitFor(() =>
      expect(document.querySelectorAll(".phrase-tooltip").length).toBe(1));
    phrase.click(); // reopen on the same phrase
    await vi.waitFor(() =>
      expect(document.querySelectorAll(".phrase-tooltip").length).toBe(1));
  });

  it("clicking outside closes the tooltip", async () => {
    clickPhrase();
    await vi.waitFor(() =>
      expect(document.querySelector(".phrase-tooltip")).not.toBeNull());
    els.summaryPanel.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(document.querySelector(".phrase-tooltip")).toBeNull();
  });

  it("network failure surfaces a toast and never loses the panel", async () => {
    server.failScope = true;
    els.textPanel.scrollTop = 123;
    els.textPanel.querySelector<HTMLElement>(".phrase")!.click();
    await vi.waitFor(() =>
      expect(els.toast.classList.contains("visible")).toBe(true));
    expect(els.textPanel.scrollTop).toBe(123); // reading position intact
    expect(document.querySelector(".phrase-tooltip")).toBeNull();
  });

  it("maps an arbitrary text selection to its chunk for scope requests",
     async () => {
    const { selectionTarget } = await import("../src/textpanel");
    const row = els.textPanel.querySelector<HTMLElement>(".snippet-row")!;
    const textNode = row.querySelector(".snippet-text")!.firstChild!;
    const fake = {
      isCollapsed: false,
      anchorNode: textNode,
      toString: () => "covers royalty-free usage",
    } as unknown as Selection;
    const target = selectionTarget(fake);
    expect(target).toEqual({
      chunkId: "policy-a-chunk-1",
      text: "covers royalty-free usage",
    });
    expect(selectionTarget(null)).toBeNull();
    expect(selectionTarget(
      { isCollapsed: true } as unknown as Selection)).toBeNull();
  });
});
