/** Power-meter hover: a preview popup opens after the 1s threshold. */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ReadingApp } from "../src/app";
import {
  appElements,
  indexedLayout,
  makeFakeServer,
  makePolicy,
} from "./fixtures";

describe("power meter hover preview", () => {
  let els: ReturnType<typeof appElements>;
  let app: ReadingApp;

  beforeEach(async () => {
    els = appElements();
    const server = makeFakeServer(makePolicy());
    app = new ReadingApp(server.api, els, {
      layout: indexedLayout(),
      sessionId: "hover-test",
    });
    await app.start();
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  function hoverTab(): HTMLElement {
    const tab = els.nav.querySelector<HTMLElement>(".nav-policy")!;
    tab.dispatchEvent(new MouseEvent("mouseenter", { bubbles: false }));
    return tab;
  }

  it("opens after >= 1s of hovering with the policy's summaries", () => {
    const tab = hoverTab();
    vi.advanceTimersByTime(999);
    expect(tab.querySelector(".policy-preview")).toBeNull();
    vi.advanceTimersByTime(2);
    const popup = tab.querySelector(".policy-preview");
    expect(popup).not.toBeNull();
    expect(popup!.querySelectorAll("li").length).toBe(3);
    expect(popup!.textContent).toContain("Summary of clause 0");
    const hoverEvents = app.events.emitted.filter(
      (e) => e.kind === "hover_power_meter");
    expect(hoverEvents.length).toBe(1);
    expect(hoverEvents[0].payload.duration_ms).toBeGreaterThanOrEqual(1000);
  });

  it("does not open when the pointer leaves before the threshold", () => {
    const tab = hoverTab();
    vi.advanceTimersByTime(500);
    tab.dispatchEvent(new MouseEvent("mouseleave", { bubbles: false }));
    vi.advanceTimersByTime(2000);
    expect(tab.querySelector(".policy-preview")).toBeNull();
    expect(app.events.emitted.filter(
      (e) => e.kind === "hover_power_meter").length).toBe(0);
  });

  it("view-source icon navigates to the referenced snippet", async () => {
    const tab = hoverTab();
    vi.advanceTimersByTime(1001);
    const icon = tab.querySelector<HTMLElement>(
      '.view-source[data-snippet-id="snip-2"]')!;
    vi.useRealTimers();
    icon.click();
    await vi.waitFor(() => {
      const row = els.textPanel.querySelector(
        '.snippet-row[data-snippet-id="snip-2"]');
      expect(row?.classList.contains("flash")).toBe(true);
    });
    expect(tab.querySelector(".policy-preview")).toBeNull();
  });

  it("closes on mouseleave", () => {
    const tab = hoverTab();
    vi.advanceTimersByTime(1001);
    expect(tab.querySelector(".policy-preview")).not.toBeNull();
    tab.dispatchEvent(new MouseEvent("mouseleave", { bubbles: false }));
    expect(tab.querySelector(".policy-preview")).toBeNull();
  });
});
