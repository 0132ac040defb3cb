/** Payload shapes returned by the reading service. */

export interface ContractSummary {
  contract_id: string;
  title: string;
  policy_count: number;
}

export interface MeterSegment {
  power: string;
  relevance: string;
  count: number;
  fraction: number;
}

export interface Meter {
  policy_id: string;
  weighting: string;
  total: number;
  segments: MeterSegment[];
}

export interface PreviewEntry {
  snippet_id: string;
  chunk_id: string;
  summary_text: string;
  color?: string;
}

export interface PolicyNavEntry {
  policy_id: string;
  title: string;
  order_index: number;
  meter: Meter;
  preview: PreviewEntry[];
}

export interface ContractPolicies {
  contract_id: string;
  title: string;
  policies: PolicyNavEntry[];
}

export interface ChunkView {
  chunk_id: string;
  text: string;
  sep_before: string;
  abs_range: [number, number];
  oversized: boolean;
}

export interface SnippetView {
  snippet_id: string;
  chunk_id: string;
  span: [number, number];
  text: string;
  unsummarized: boolean;
  summary_text: string;
  word_count: number;
  truncated: boolean;
  power?: string;
  relevance?: string;
  color?: string;
  color_hex?: string;
}

export interface PhraseView {
  chunk_id: string;
  span: [number, number];
  surface_text: string;
  kinds: string[];
}

export interface LinkView {
  anchor_text: string;
  target_policy_id: string;
  span: [number, number];
}

export interface PolicyView {
  policy_id: string;
  title: string;
  order_index: number;
  chunks: ChunkView[];
  snippets: SnippetView[];
  phrases: PhraseView[];
  links: LinkView[];
  meter: Meter;
}

export interface ScopeResult {
  key: string;
  phrase: string;
  context_chunk_id: string;
  span: [number, number];
  definition: string;
  definition_refs: string[];
  scenario: string;
  scenario_word_count: number;
  over_length: boolean;
  persona_id: string;
}

export interface AskResult {
  question: string;
  answer_text: string;
  refs: string[];
}

export type EventKind =
  | "scroll"
  | "click_summary_snippet"
  | "click_highlight_bar"
  | "hover_power_meter"
  | "open_definition"
  | "open_scenario"
  | "ask_question"
  | "navigate_policy";

export interface InteractionEvent {
  session_id: string;
  seq: number;
  timestamp: number;
  kind: EventKind;
  payload: Record<string, string | number>;
}
