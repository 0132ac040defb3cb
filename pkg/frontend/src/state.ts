/** View state: one active policy, at most one open tooltip. */

export interface ViewState {
  activePolicyId: string | null;
  openTooltipKey: string | null;
  summaryScroll: number;
  textScroll: number;
}

export function initialState(): ViewState {
  return {
    activePolicyId: null,
    openTooltipKey: null,
    summaryScroll: 0,
    textScroll: 0,
  };
}

export function newSessionId(): string {
  const stamp = Date.now().toString(36);
  const noise = Math.random().toString(36).slice(2, 8);
  return `ui-${stamp}-${noise}`;
}
