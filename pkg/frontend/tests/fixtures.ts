/** Test doubles: a canned service API and a deterministic layout. */

import { ApiClient } from "../src/api";
import type { LayoutReader } from "../src/scrolling";
import type {
  ContractPolicies,
  PolicyView,
  ScopeResult,
  SnippetView,
} from "../src/types";

const COLORS = ["service-high", "neutral-low", "user-high",
                "service-low", "neutral-high", "user-low"];

export function makePolicy(policyId = "policy-a", snippetCount = 10,
                           linkTarget?: string): PolicyView {
  const chunkSize = Math.ceil(snippetCount / 2);
  const prefix = policyId; // unique ids when two policies are loaded
  const chunks = [
    { chunk_id: `${prefix}-chunk-1`, text: "", sep_before: "# Policy A\n",
      abs_range: [11, 11] as [number, number], oversized: false },
    { chunk_id: `${prefix}-chunk-2`, text: "",
      sep_before: "\n## Section Two\n",
      abs_range: [0, 0] as [number, number], oversized: false },
  ];
  const snippets: SnippetView[] = [];
  for (let i = 0; i < snippetCount; i++) {
    const chunk = chunks[i < chunkSize ? 0 : 1];
    const text = `Clause ${i} covers royalty-free usage number ${i}. `;
    const start = chunk.text.length;
    chunk.text += text;
    snippets.push({
      snippet_id: `snip-${i}`,
      chunk_id: chunk.chunk_id,
      span: [start, start + text.length],
      text,
      unsummarized: false,
      summary_text: `Summary of clause ${i}`,
      word_count: 4,
      truncated: false,
      power: "Service",
      relevance: "High",
      color: COLORS[i % COLORS.length],
      color_hex: "#d64550",
    });
  }
  chunks[0].abs_range = [11, 11 + chunks[0].text.length];
  const secondStart = chunks[0].abs_range[1] + 16; // heading separator
  chunks[1].abs_range = [secondStart, secondStart + chunks[1].text.length];

  const phraseAt = chunks[0].text.indexOf("royalty-free");
  const links = [];
  if (linkTarget) {
    const anchorAt = chunks[0].text.indexOf("number 0");
    links.push({
      anchor_text: "number 0",
      target_policy_id: linkTarget,
      span: [11 + anchorAt, 11 + anchorAt + "number 0".length] as
        [number, number],
    });
  }
  return {
    policy_id: policyId,
    title: "Policy A",
    order_index: 0,
    chunks,
    snippets,
    phrases: [{
      chunk_id: `${prefix}-chunk-1`,
      span: [phraseAt, phraseAt + "royalty-free".length],
      surface_text: "royalty-free",
      kinds: ["jargon"],
    }],
    links,
    meter: makeMeter(policyId),
  };
}

export function makeMeter(policyId: string) {
  return {
    policy_id: policyId,
    weighting: "count",
    total: 4,
    segments: [
      { power: "Service", relevance: "High", count: 2, fraction: 0.5 },
      { power: "Service", relevance: "Low", count: 0, fraction: 0 },
      { power: "Neutral", relevance: "High", count: 1, fraction: 0.25 },
      { power: "Neutral", relevance: "Low", count: 0, fraction: 0 },
      { power: "User", relevance: "High", count: 1, fraction: 0.25 },
      { power: "User", relevance: "Low", count: 0, fraction: 0 },
    ],
  };
}

export function makeContract(...policies: PolicyView[]): ContractPolicies {
  return {
    contract_id: "contract-1",
    title: "Contract One",
    policies: policies.map((policy, i) => ({
      policy_id: policy.policy_id,
      title: i === 0 ? policy.title : `Policy ${policy.policy_id}`,
      order_index: i,
      meter: policy.meter,
      preview: policy.snippets.slice(0, 3).map((s) => ({
        snippet_id: s.snippet_id,
        chunk_id: s.chunk_id,
        summary_text: s.summary_text,
        color: s.color,
      })),
    })),
  };
}

export function makeScope(phrase: string): ScopeResult {
  return {
    key: `k-${phrase}`,
    phrase,
    context_chunk_id: "chunk-1",
    span: [0, phrase.length],
    definition: `${phrase} means you keep no licensing fees.`,
    definition_refs: ["chunk-1"],
    scenario: `Imagine ${phrase} lets the service reuse your photo.`,
    scenario_word_count: 8,
    over_length: false,
    persona_id: "buyer",
  };
}

export interface FakeServer {
  api: ApiClient;
  calls: { path: string; body?: unknown }[];
  eventBatches: unknown[][];
  failEvents: boolean;
  failScope: boolean;
}

export function makeFakeServer(...policies: PolicyView[]): FakeServer {
  const contract = makeContract(...policies);
  const server: FakeServer = {
    api: undefined as unknown as ApiClient,
    calls: [],
    eventBatches: [],
    failEvents: false,
    failScope: false,
  };
  const respond = (status: number, body: unknown) =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });

  const fetchFn = async (path: string, init?: RequestInit) => {
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    server.calls.push({ path, body });
    if (path === "/contracts") {
      return respond(200, [{ contract_id: "contract-1",
                             title: "Contract One",
                             policy_count: policies.length }]);
    }
    if (path === "/contracts/contract-1/policies") {
      return respond(200, contract);
    }
    const match = policies.find((p) => path === `/policies/${p.policy_id}`);
    if (match) {
      return respond(200, match);
    }
    if (path === "/phrases/scope") {
      if (server.failScope) return respond(503, { error: "replay miss" });
      return respond(200, makeScope(body.phrase_text ??
        policies[0].phrases[0].surface_text));
    }
    if (path === "/phrases/ask") {
      return respond(200, {
        question: body.question,
        answer_text: `Answer about ${body.phrase}.`,
        refs: ["chunk-2"],
      });
    }
    if (path === "/events") {
      if (server.failEvents) return respond(503, { error: "down" });
      server.eventBatches.push(body.events);
      return respond(200, { accepted: body.events.length });
    }
    return respond(404, { error: `no route ${path}` });
  };
  server.api = new ApiClient("", fetchFn);
  return server;
}

/** Deterministic layout: each element's offset is 100px per index in
 * its panel (jsdom has no real layout). */
export function indexedLayout(): LayoutReader {
  return {
    offsetWithin(el, container) {
      const all = Array.from(
        container.querySelectorAll<HTMLElement>("[data-snippet-id], .chunk"));
      const idx = all.indexOf(el);
      return (idx >= 0 ? idx : 0) * 100;
    },
  };
}

export function appElements() {
  document.body.innerHTML = `
    <nav id="nav"></nav>
    <main id="panels">
      <section id="summary-panel"></section>
      <section id="text-panel"></section>
    </main>
    <div id="toast"></div>`;
  return {
    nav: document.getElementById("nav") as HTMLElement,
    summaryPanel: document.getElementById("summary-panel") as HTMLElement,
    textPanel: document.getElementById("text-panel") as HTMLElement,
    toast: document.getElementById("toast") as HTMLElement,
  };
}
