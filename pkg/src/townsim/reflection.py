"""Reflection: periodic synthesis of recent memories into cited insights.

When the summed importance of observations since the last run crosses a
threshold, the agent asks what the most salient high-level questions about
its recent records are, retrieves evidence for each, and stores the
synthesized insights as reflection memories that cite their evidence.
Because reflections can cite earlier reflections, repeated runs grow trees
whose leaves are always plain observations.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .errors import GatewayError
from .gametime import GameTime
from .memory import MemoryObject, MemoryStream, RetrievalConfig, RetrievalQuery

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 150
QUESTION_WINDOW = 100
QUESTION_COUNT = 3


@dataclass
class ReflectionTrigger:
    threshold: int = DEFAULT_THRESHOLD

    def due(self, stream: MemoryStream) -> bool:
        return reflection_due(self, stream)


def reflection_due(trigger: ReflectionTrigger, stream: MemoryStream) -> bool:
    """True iff accumulated observation importance strictly exceeds the threshold."""
    return stream.importance_accumulator > trigger.threshold


@dataclass(frozen=True)
class Insight:
    statement: str
    evidence: tuple[int, ...]


_LINE_PREFIX_RE = re.compile(r"^\s*(?:[-*•]|\d+[.)])?\s*")
_INSIGHT_RE = re.compile(r"^(?P<statement>.+?)\s*\(because of (?P<refs>[\d,\s]+)\)\s*\.?\s*$")


def parse_questions(reply: str) -> list[str]:
    questions = []
    for line in reply.splitlines():
        text = _LINE_PREFIX_RE.sub("", line).strip()
        if text.endswith("?"):
            questions.append(text)
    return questions


def salient_questions(stream: MemoryStream, now: GameTime, gateway) -> list[str]:
    """The (up to) 3 most salient high-level questions over recent records.

    The 100 most recent memory descriptions of every kind are sent; if the
    reply yields fewer than 3 questions it is retried once, after which
    whatever parsed (possibly nothing) is used.
    """
    if len(stream) == 0:
        raise ValueError("cannot ask salient questions of an empty stream")
    statements = "\n".join(stream.recent_descriptions(QUESTION_WINDOW))
    questions: list[str] = []
    for _ in range(2):
        try:
            reply = gateway.complete("reflection_questions", {"statements": statements})
        except GatewayError as exc:
            log.warning("salient question generation failed for %s: %s",
                        stream.agent_id, exc)
            return []
        questions = parse_questions(reply)
        if len(questions) >= QUESTION_COUNT:
            return questions[:QUESTION_COUNT]
    if not questions:
        log.warning("no parseable questions for %s; aborting reflection cycle",
                    stream.agent_id)
    return questions[:QUESTION_COUNT]


def parse_insights(reply: str, statement_ids: list[int]) -> list[Insight]:
    """Parse 'statement (because of i, j, k)' lines against numbered evidence.

    Indices are 1-based positions into the numbered statement list shown to
    the model; out-of-range indices are dropped, and an insight whose
    citations all fail validation is discarded entirely.
    """
    insights = []
    for line in reply.splitlines():
        text = _LINE_PREFIX_RE.sub("", line).strip()
        m = _INSIGHT_RE.match(text)
        if not m:
            continue
        evidence = []
        for token in m.group("refs").split(","):
            token = token.strip()
            if not token:
                continue
            index = int(token)
            if 1 <= index <= len(statement_ids):
                evidence.append(statement_ids[index - 1])
        if evidence:
            insights.append(Insight(m.group("statement").strip(),
                                    tuple(sorted(set(evidence)))))
    return insights


EVIDENCE_KINDS = frozenset({"observation", "reflection"})


def synthesize_insights(
    stream: MemoryStream,
    question: str,
    now: GameTime,
    gateway,
    config: RetrievalConfig | None = None,
) -> list[Insight]:
    """Insights (with evidence ids) for one salient question.

    Evidence retrieval covers observations and earlier reflections; plans
    schedule the future and are never citable evidence, which keeps every
    citation chain terminating in observations.
    """
    if not question:
        raise ValueError("question must be non-empty")
    retrieved = stream.retrieve(
        RetrievalQuery(question, gateway.embed(question), now,
                       kind_filter=EVIDENCE_KINDS), config
    )
    if not retrieved:
        return []
    numbered = "\n".join(
        f"{i}. {memory.description}" for i, memory in enumerate(retrieved, start=1)
    )
    try:
        reply = gateway.complete(
            "reflection_insights",
            {"subject": stream.agent_id, "statements": numbered},
        )
    except GatewayError as exc:
        log.warning("insight synthesis failed for %s: %s", stream.agent_id, exc)
        return []
    return parse_insights(reply, [memory.id for memory in retrieved])


def run_reflection(
    stream: MemoryStream,
    now: GameTime,
    gateway,
    config: RetrievalConfig | None = None,
    trigger: ReflectionTrigger | None = None,
) -> list[MemoryObject]:
    """One full reflection cycle: questions, insights, stored reflections.

    The accumulator resets even when every question fails, so a persistent
    gateway fault cannot re-trigger reflection every tick.
    """
    stored: list[MemoryObject] = []
    try:
        for question in salient_questions(stream, now, gateway):
            for insight in synthesize_insights(stream, question, now, gateway, config):
                stored.append(
                    stream.record(
                        "reflection", insight.statement, now, gateway,
                        citations=insight.evidence,
                    )
                )
    finally:
        stream.importance_accumulator = 0
    return stored


def citation_closure_kinds(stream: MemoryStream, memory_id: int) -> set[str]:
    """Kinds of all leaf memories reachable by following citations down."""
    leaves: set[str] = set()
    pending = [memory_id]
    seen = set()
    while pending:
        current = pending.pop()
        if current in seen:
            continue
        seen.add(current)
        memory = stream.memories[current]
        if memory.citations:
            pending.extend(memory.citations)
        else:
            leaves.add(memory.kind)
    return leaves
