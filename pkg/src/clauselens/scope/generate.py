"""Phrase Scope generation: in-context definitions with validated
references, persona scenarios, and clarification answers.

All three are retrieval-augmented except the scenario, whose prompt
takes only the phrase context and the definition. Requests for the same
(phrase, chunk) coalesce into one provider call.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from ..annotator.parse import parse_answer, parse_definition, parse_story
from ..annotator.persona import Persona
from ..errors import InvalidInput, ReplayMiss, UnparseableCompletion
from ..gateway import ASK_EXAMPLES, DEFINE_EXAMPLES, Gateway
from .index import VectorIndex, make_query, retrieve

logger = logging.getLogger(__name__)

SCENARIO_WORD_LIMIT = 50


@dataclass(frozen=True)
class PhraseScopeResult:
    phrase: str
    context_chunk_id: str
    definition: str
    definition_refs: tuple[str, ...]
    scenario: str
    scenario_word_count: int
    over_length: bool
    persona_id: str


@dataclass(frozen=True)
class Answer:
    question: str
    answer_text: str
    refs: tuple[str, ...]


class ScopeGenerator:
    def __init__(self, gateway: Gateway, index: VectorIndex,
                 chunk_texts: dict[str, str], k: int = 15):
        self.gateway = gateway
        self.index = index
        self.chunk_texts = chunk_texts
        self.k = k
        self._flight = _SingleFlight()

    # -- retrieval plumbing --------------------------------------------
    def _retrieved(self, query_text: str) -> list[tuple[str, str]]:
        """(ref_id, chunk_id) pairs for the top-k chunks of a query."""
        vec = self.gateway.embed(query_text)
        ranked = retrieve(self.index, list(vec.values), self.k)
        return [(f"ref{i + 1}", cid) for i, (cid, _) in enumerate(ranked)]

    def _context_block(self, refs: list[tuple[str, str]]) -> str:
        lines = []
        for ref_id, chunk_id in refs:
            lines.append(f"{ref_id}: {self.chunk_texts[chunk_id]}")
        return "\n\n".join(lines)

    @staticmethod
    def _map_refs(cited: list[str], refs: list[tuple[str, str]]) -> tuple[str, ...]:
        """Map cited ref ids back to chunk ids, dropping anything outside
        the retrieved set with a warning."""
        table = dict(refs)
        out = []
        for ref in cited:
            if ref in table:
                out.append(table[ref])
            else:
                logger.warning("completion cited %r outside the retrieved "
                               "set; dropped", ref)
        return tuple(dict.fromkeys(out))  # dedupe, keep order

    # -- generation ------------------------------------------------------
    def define_phrase(self, phrase: str,
                      context_chunk_id: str) -> tuple[str, tuple[str, ...]]:
        if not phrase.strip():
            raise InvalidInput("empty phrase")
        context = self.chunk_texts[context_chunk_id]
        with self._flight.lock(("define", phrase, context_chunk_id)):
            refs = self._retrieved(make_query(phrase, context))
            bindings = {
                "EXAMPLES": DEFINE_EXAMPLES,
                "RETRIEVED_CONTEXT": self._context_block(refs),
                "INPUT_PHRASE": phrase,
                "PHRASE_CONTEXT": context,
            }
            definition, cited = self._run(
                "define", bindings, parse_definition)
            return definition, self._map_refs(cited, refs)

    def generate_scenario(self, phrase: str, context_chunk_id: str,
                          definition: str,
                          persona: Persona) -> tuple[str, int, bool]:
        """Returns (scenario, word_count, over_length). The 50-word limit
        is a soft check: violations are flagged, not rejected."""
        if not definition.strip():
            raise InvalidInput("scenario requires a generated definition")
        bindings = {
            "SERVICE_DESCRIPTOR": persona.service_descriptor,
            "INPUT_USER_PERSONA": persona.rendered_text,
            "INPUT_PHRASE": phrase,
            "PHRASE_CONTEXT": self.chunk_texts[context_chunk_id],
            "GENERATED_DEFINITION": definition,
        }
        story = self._run("scenario", bindings, parse_story)
        words = len(story.split())
        return story, words, words > SCENARIO_WORD_LIMIT

    def phrase_scope(self, phrase: str, context_chunk_id: str,
                     persona: Persona) -> PhraseScopeResult:
        definition, refs = self.define_phrase(phrase, context_chunk_id)
        scenario, words, over = self.generate_scenario(
            phrase, context_chunk_id, definition, persona)
        return PhraseScopeResult(
            phrase=phrase,
            context_chunk_id=context_chunk_id,
            definition=definition,
            definition_refs=refs,
            scenario=scenario,
            scenario_word_count=words,
            over_length=over,
            persona_id=persona.persona_id,
        )

    def answer_question(self, question: str, phrase: str,
                        context_chunk_id: str) -> Answer:
        """Same retrieval-augmented pipeline as definitions, with the
        user question as the retrieval query."""
        if not question.strip():
            raise InvalidInput("empty question")
        refs = self._retrieved(question)
        bindings = {
            "EXAMPLES": ASK_EXAMPLES,
            "RETRIEVED_CONTEXT": self._context_block(refs),
            "USER_QUESTION": question,
            "INPUT_PHRASE": phrase,
            "PHRASE_CONTEXT": self.chunk_texts[context_chunk_id],
        }
        text, cited = self._run("ask", bindings, parse_answer)
        return Answer(question=question, answer_text=text,
                      refs=self._map_refs(cited, refs))

    def _run(self, template_id: str, bindings: dict, parser):
        raw = self.gateway.run(template_id, bindings)
        try:
            return parser(raw)
        except UnparseableCompletion as first_error:
            try:
                raw = self.gateway.run(template_id,
                                       {**bindings, "_retry": "1"})
            except ReplayMiss:
                raise first_error from None
            return parser(raw)


class _SingleFlight:
    def __init__(self) -> None:
        self._master = threading.Lock()
        self._locks: dict = {}

    def lock(self, key) -> threading.Lock:
        with self._master:
            lock = self._locks.get(key)
            if lock is None:
                lock = self._locks[key] = threading.Lock()
            return lock
