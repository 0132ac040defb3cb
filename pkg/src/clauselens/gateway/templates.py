"""Prompt templates for every model call in the pipeline.

Bodies use string.Template ${NAME} placeholders so that literal JSON
braces inside the instructions survive rendering untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import Template

from ..errors import MissingBinding

TEMPLATE_IDS = ("summarize", "classify_power", "classify_relevance",
                "identify_jargon", "identify_vague", "define", "scenario",
                "ask")


@dataclass(frozen=True)
class PromptTemplate:
    template_id: str
    version: str
    body: str

    @property
    def placeholders(self) -> tuple[str, ...]:
        # Template.get_identifiers needs 3.11; walk the pattern directly.
        names = {
            m.group("named") or m.group("braced")
            for m in Template.pattern.finditer(self.body)
            if m.group("named") or m.group("braced")
        }
        return tuple(sorted(names))


_SUMMARIZE = """\
Summarize the input section of the Terms of Service into concise bullet points (less than 12 words) in plain language. When adjacent paragraphs or sentences share a similar or related theme, only output 1 single bullet point. For each bullet point summary, include the full-text reference to the original passage in {} and don't use "..." to reduce text in the reference. When outputting a reference, don't change anything in the original text, such as spaces and newlines. There can be multiple sentences or paragraphs that reference a single summary. The references to summary should cover the original text.

Example output format: ${EXAMPLE_OUTPUT}

Input: ${INPUT_TEXT_CHUNK}
"""

SUMMARIZE_EXAMPLE_OUTPUT = """\
- You grant the service a broad license over your content {When Your Content is created with or submitted to the Services, you grant us a worldwide, royalty-free license to use, copy, and display Your Content.}
- The service may remove content at its discretion {We may remove or restrict access to any content at any time without notice.}"""

_CLASSIFY_POWER = """\
Classify the input term from a Terms of Service agreement based on the power relationship and benefit between the service and the user. Use the following categories (Service, Neutral, User):
- Service: The term grants the service provider disproportionate power or control over the user. It may impose unfair restrictions, obligations, or liabilities on the user, or reduce the user's rights and autonomy over their data or content.
- Neutral: The term outlines standard procedures, responsibilities, or conditions the user and service have. For example, users take responsibility for the content they post. It neither significantly favors the service provider nor the user, and does not substantially impact the user's rights.
- User: The term empowers the user by offering clear protections, rights, or benefits, ensuring transparency, and limiting the service provider's power.

Examples for each category:

Service:
- The service can delete specific content without prior notice and without a reason.
- The service can license user content to third parties.
- The service tracks your personal data for advertising

Neutral:
- Users are responsible for the content they post
- Users agree not to use the service for illegal purposes
- Blocking first-party cookies may limit your ability to use the service

User:
- You can opt out of targeted advertising
- The service does not sell your personal data
- The service will not allow third parties to access your personal information without a legal basis

Output format in JSON:
{"Category": "Service/Neutral/User", "Explanation": "explanation of output" }

Input: ${INPUT_INFORMATION_SNIPPET}
"""

_CLASSIFY_RELEVANCE = """\
For the input term from a Terms of Service, output a relevance rating (High/Low) of the input term with respect to the user persona.
[High]: The term is directly relevant to the user's usage of the service or what the user cares about. The term applies to the user persona and is necessary for the user to know.
[Low]: The term is not relevant to the user's usage of the service or what the user cares about. The term doesn't apply to the user persona or is not necessary for the user to know.

User Persona: ${INPUT_USER_PERSONA}

Output format in JSON: {"Relevance": "Low/High", "Explanation": "explanation of output" }

Input: ${INPUT_INFORMATION_SNIPPET}
"""

_IDENTIFY_JARGON = """\
You are a helpful assistant who extracts words or multi-word phrases in the input section of Terms of Service that a high schooler might not know the meaning of. Jargon refers to domain-specific terminologies that a lay user might not know about.

Example jargon:
- legal jargon: indemnity, arbitration, liability
- copyright licenses: sublicensable licenses, royalty-free licenses
- technical privacy terms: cookies, Ad identifiers, Authentication tokens

Return an empty array if the section does not contain jargon. The extracted word should exactly match the original input text with the same capitalization and sequence of words.

Output format in JSON: {"Jargon": []}

Input: ${INPUT_TEXT_CHUNK}
"""

_IDENTIFY_VAGUE = """\
You are a helpful legal assistant who extracts vague terms (can have multiple words in one term) in the input section of Terms of Service. A vague term refers to information that is vaguely abstracted without a clear definition provided in the section.

Example Vague terms: information, other, some, third parties, most, generally, personal data, others, general, many, various, might, services, certain information

Return an empty array if the section does not contain vague terms. The extracted word should exactly match the original input text with the same capitalization and sequence of words.

Output format in JSON: {"Vague": []}

Input: ${INPUT_TEXT_CHUNK}
"""

_DEFINE = """\
Use information in the retrieved context to provide a definition of the user-selected phrase or term. Avoid using long sentences. For example, if the user-selected term is "information", define what the term "information" includes and refers to, such as: location data, interaction data, profile data, etc. The output definition should be specific and straight to the point; don't include language that doesn't contribute to the definition, such as 'in the given context'. Output the string list of reference ids (["ref1", ...]) used to generate the definition under "References". If the definition of the phrase is not specified in the retrieved context, output a definition of what the phrase might mean and output an empty array for "References".

Examples: ${EXAMPLES}

Output format in JSON: {"Definition": "", "References": ["ref1", "ref2", "ref3"]}

Retrieved Context: ${RETRIEVED_CONTEXT}

Question: What does ${INPUT_PHRASE} refer to?
Context around the user-selected phrase: ${PHRASE_CONTEXT}
"""

DEFINE_EXAMPLES = """\
{"Definition": "Royalty-free refers to the license to use, copy, modify, or distribute your content without requiring licensing fees.", "References": ["ref1"]}"""

_SCENARIO = """\
Tell a concise what-if scenario or example in less than 50 words to demonstrate the meaning and potential implications of the user-selected phrase based on the context around the user-selected phrase. The scenario/example should be relevant to the below user persona using ${SERVICE_DESCRIPTOR}.

User Persona: ${INPUT_USER_PERSONA}

Output format in JSON: {"Story": ""}

User selected phrase: ${INPUT_PHRASE}
Context around the user-selected phrase: ${PHRASE_CONTEXT}
Definition of user selected phrase: ${GENERATED_DEFINITION}
"""

_ASK = """\
You are an assistant for question-answering tasks. Use information in the retrieved context to answer the user's question in less than 5 sentences. Output the string list of reference ids (["ref1", ...]) used to generate the definition under "References". If the definition of the phrase is not specified in the retrieved context, output a definition of what the phrase might mean and output an empty array for "References".

Examples: ${EXAMPLES}

Output format in JSON: {"Answer": "", "References": ["ref1", "ref2", "ref3"]}

Retrieved Context: ${RETRIEVED_CONTEXT}

Question: ${USER_QUESTION}
User selected phrase: ${INPUT_PHRASE}
Context around the user-selected phrase: ${PHRASE_CONTEXT}
"""

ASK_EXAMPLES = """\
{"Answer": "You can request deletion of your account data through the account settings page.", "References": ["ref2"]}"""

TEMPLATES: dict[str, PromptTemplate] = {
    "summarize": PromptTemplate("summarize", "1", _SUMMARIZE),
    "classify_power": PromptTemplate("classify_power", "1", _CLASSIFY_POWER),
    "classify_relevance": PromptTemplate("classify_relevance", "1",
                                         _CLASSIFY_RELEVANCE),
    "identify_jargon": PromptTemplate("identify_jargon", "1", _IDENTIFY_JARGON),
    "identify_vague": PromptTemplate("identify_vague", "1", _IDENTIFY_VAGUE),
    "define": PromptTemplate("define", "1", _DEFINE),
    "scenario": PromptTemplate("scenario", "1", _SCENARIO),
    "ask": PromptTemplate("ask", "1", _ASK),
}

# Appended for the single automatic re-prompt after a parse failure.
RETRY_SUFFIX = ("\n\nYour previous response could not be parsed. "
                "Respond again using exactly the requested output format.")


def template_versions() -> dict[str, str]:
    return {tid: t.version for tid, t in TEMPLATES.items()}


def render_prompt(template_id: str, bindings: dict[str, str]) -> str:
    """Deterministic placeholder substitution; raises MissingBinding if
    any placeholder is unbound. Extra bindings are ignored except the
    reserved `_retry` marker, which appends the re-prompt suffix."""
    if template_id not in TEMPLATES:
        raise MissingBinding(f"unknown template {template_id!r}")
    tpl = TEMPLATES[template_id]
    try:
        rendered = Template(tpl.body).substitute(
            {k: v for k, v in bindings.items() if not k.startswith("_")})
    except KeyError as exc:
        raise MissingBinding(
            f"template {template_id!r} missing binding {exc.args[0]!r}"
        ) from exc
    if bindings.get("_retry"):
        rendered += RETRY_SUFFIX
    return rendered
