/** Horizontal power-meter bars; color classes come from server tokens. */

import type { Meter } from "./types";

export function renderMeterBar(meter: Meter): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "meter-bar";
  for (const segment of meter.segments) {
    if (segment.fraction <= 0) continue;
    const cell = document.createElement("div");
    const token = `${segment.power.toLowerCase()}-${segment.relevance.toLowerCase()}`;
    cell.className = `meter-segment tok-${token}`;
    cell.style.width = `${(segment.fraction * 100).toFixed(2)}%`;
    cell.title = `${segment.power}/${segment.relevance}: ${segment.count}`;
    bar.appendChild(cell);
  }
  if (meter.total === 0) {
    bar.classList.add("meter-empty");
    bar.title = "no labeled snippets";
  }
  return bar;
}
