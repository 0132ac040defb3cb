/** Right panel: original text segmented into information snippets, each
 * with a color-coded highlight bar on the left, identified phrases
 * underlined, and inline policy links carrying meters. */

import type { PhraseView, PolicyView, SnippetView } from "./types";

export interface TextPanelHandlers {
  onBarClick(snippetId: string): void;
  onPhraseClick(anchor: HTMLElement, chunkId: string,
                span: [number, number], surfaceText: string): void;
  /** Decorate an inline policy link (attach meter + hover preview). */
  decorateLink?(el: HTMLElement, targetPolicyId: string): void;
}

interface InlineMark {
  start: number; // chunk-relative
  end: number;
  kind: "phrase" | "link";
  phrase?: PhraseView;
  targetPolicyId?: string;
}

export function renderTextPanel(
  container: HTMLElement,
  policy: PolicyView,
  handlers: TextPanelHandlers,
): void {
  container.textContent = "";
  const byChunk = new Map<string, SnippetView[]>();
  for (const snippet of policy.snippets) {
    const bucket = byChunk.get(snippet.chunk_id) ?? [];
    bucket.push(snippet);
    byChunk.set(snippet.chunk_id, bucket);
  }
  const marksByChunk = new Map<string, InlineMark[]>();
  for (const phrase of policy.phrases) {
    const bucket = marksByChunk.get(phrase.chunk_id) ?? [];
    bucket.push({ start: phrase.span[0], end: phrase.span[1],
                  kind: "phrase", phrase });
    marksByChunk.set(phrase.chunk_id, bucket);
  }
  // inline policy links live in normalized-text coordinates; map them
  // into the chunk that contains them
  for (const link of policy.links) {
    for (const chunk of policy.chunks) {
      const [absStart, absEnd] = chunk.abs_range;
      if (link.span[0] >= absStart && link.span[1] <= absEnd) {
        const bucket = marksByChunk.get(chunk.chunk_id) ?? [];
        bucket.push({
          start: link.span[0] - absStart,
          end: link.span[1] - absStart,
          kind: "link",
          targetPolicyId: link.target_policy_id,
        });
        marksByChunk.set(chunk.chunk_id, bucket);
        break;
      }
    }
  }

  for (const chunk of policy.chunks) {
    const headings = headingLines(chunk.sep_before);
    for (const { level, text } of headings) {
      const h = document.createElement("div");
      h.className = `text-heading level-${level}`;
      h.textContent = text;
      container.appendChild(h);
    }
    const chunkEl = document.createElement("div");
    chunkEl.className = "chunk";
    chunkEl.dataset.chunkId = chunk.chunk_id;
    const snippets = (byChunk.get(chunk.chunk_id) ?? [])
      .slice()
      .sort((a, b) => a.span[0] - b.span[0]);
    const marks = marksByChunk.get(chunk.chunk_id) ?? [];
    for (const snippet of snippets) {
      chunkEl.appendChild(renderSnippetRow(snippet, marks, handlers));
    }
    container.appendChild(chunkEl);
  }
}

function renderSnippetRow(
  snippet: SnippetView,
  marks: InlineMark[],
  handlers: TextPanelHandlers,
): HTMLElement {
  const row = document.createElement("div");
  // extra line break after each snippet comes from the row layout
  row.className = "snippet-row";
  row.dataset.snippetId = snippet.snippet_id;

  const bar = document.createElement("div");
  bar.className = `highlight-bar ${snippet.color ? `tok-${snippet.color}` : "tok-none"}`;
  bar.title = snippet.color ?? "unlabeled";
  bar.dataset.snippetId = snippet.snippet_id;
  bar.addEventListener("click", () => handlers.onBarClick(snippet.snippet_id));
  row.appendChild(bar);

  const text = document.createElement("div");
  text.className = "snippet-text";
  renderTextWithMarks(text, snippet, marks, handlers);
  row.appendChild(text);
  return row;
}

function renderTextWithMarks(
  target: HTMLElement,
  snippet: SnippetView,
  marks: InlineMark[],
  handlers: TextPanelHandlers,
): void {
  const [snipStart, snipEnd] = snippet.span;
  const local = marks
    .filter((m) => m.start >= snipStart && m.end <= snipEnd)
    .sort((a, b) => a.start - b.start);
  let cursor = 0; // relative to snippet text
  for (const mark of local) {
    const start = mark.start - snipStart;
    const end = mark.end - snipStart;
    if (start < cursor) continue;
    target.appendChild(
      document.createTextNode(snippet.text.slice(cursor, start)));
    target.appendChild(mark.kind === "phrase"
      ? phraseMark(snippet, mark.phrase as PhraseView, start, end, handlers)
      : linkMark(snippet, mark, start, end, handlers));
    cursor = end;
  }
  target.appendChild(document.createTextNode(snippet.text.slice(cursor)));
}

function phraseMark(
  snippet: SnippetView,
  phrase: PhraseView,
  start: number,
  end: number,
  handlers: TextPanelHandlers,
): HTMLElement {
  const mark = document.createElement("span");
  mark.className = "phrase";
  mark.textContent = snippet.text.slice(start, end);
  mark.dataset.chunkId = phrase.chunk_id;
  mark.dataset.spanStart = String(phrase.span[0]);
  mark.dataset.spanEnd = String(phrase.span[1]);
  mark.addEventListener("click", (ev) => {
    ev.stopPropagation();
    handlers.onPhraseClick(mark, phrase.chunk_id, phrase.span,
                           phrase.surface_text);
  });
  return mark;
}

function linkMark(
  snippet: SnippetView,
  mark: InlineMark,
  start: number,
  end: number,
  handlers: TextPanelHandlers,
): HTMLElement {
  const link = document.createElement("span");
  link.className = "policy-link";
  link.textContent = snippet.text.slice(start, end);
  link.dataset.targetPolicyId = mark.targetPolicyId ?? "";
  handlers.decorateLink?.(link, mark.targetPolicyId ?? "");
  return link;
}

export function findSnippetRow(
  container: HTMLElement,
  snippetId: string,
): HTMLElement | null {
  return container.querySelector(
    `.snippet-row[data-snippet-id="${snippetId}"]`);
}

/** Parse "## Heading" lines out of a chunk separator so section titles
 * render between chunks. */
export function headingLines(sep: string): { level: number; text: string }[] {
  const out: { level: number; text: string }[] = [];
  for (const line of sep.split("\n")) {
    const m = /^(#{1,4})\s+(.*)$/.exec(line.trim());
    if (m) out.push({ level: m[1].length, text: m[2] });
  }
  return out;
}

/** Map a user text selection inside the panel to its chunk and exact
 * surface text, for arbitrary-span phrase scope requests. */
export function selectionTarget(
  selection: Selection | null,
): { chunkId: string; text: string } | null {
  if (!selection || selection.isCollapsed) return null;
  const text = selection.toString().trim();
  if (!text) return null;
  let node: Node | null = selection.anchorNode;
  while (node) {
    if (node instanceof HTMLElement && node.dataset.chunkId) {
      return { chunkId: node.dataset.chunkId, text };
    }
    node = node.parentNode;
  }
  return null;
}
