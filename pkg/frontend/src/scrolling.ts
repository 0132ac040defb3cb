/** Scroll-into-view with an injectable layout reader, so navigation is
 * testable where the DOM has no real layout. */

export interface LayoutReader {
  /** Vertical offset of `el` within scrollable `container`. */
  offsetWithin(el: HTMLElement, container: HTMLElement): number;
}

export const domLayout: LayoutReader = {
  offsetWithin(el, container) {
    const elRect = el.getBoundingClientRect();
    const contRect = container.getBoundingClientRect();
    return elRect.top - contRect.top + container.scrollTop;
  },
};

const FLASH_MS = 1400;

export function bringIntoView(
  container: HTMLElement,
  el: HTMLElement,
  layout: LayoutReader = domLayout,
): void {
  const offset = layout.offsetWithin(el, container);
  const margin = Math.floor(container.clientHeight / 4);
  container.scrollTop = Math.max(0, offset - margin);
  flash(el);
}

export function flash(el: HTMLElement): void {
  el.classList.add("flash");
  setTimeout(() => el.classList.remove("flash"), FLASH_MS);
}
