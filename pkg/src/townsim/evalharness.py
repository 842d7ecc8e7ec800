"""Evaluation harness: interviews, ablations, and emergent-behavior reports.

Agents are probed with a 25-question battery (5 categories x 5 questions)
under ablation conditions that restrict which memory kinds retrieval may
see. On top of interviews, the harness measures information diffusion
(who verifiably holds a seeded item), relationship-network density over
the mutual-knowledge graph, and coordination (who actually showed up).
Interviews never mutate the subject: no new memories, no access-time
refreshes.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CommandError, GatewayError
from .gametime import datetime_label
from .memory import MemoryStream, RetrievalQuery

QUESTION_CATEGORIES = (
    "self_knowledge", "memory", "plans", "reactions", "reflections",
)

# allowed memory kinds per ablation, each a subset of the one before
CONDITIONS: dict[str, frozenset[str]] = {
    "full": frozenset({"observation", "reflection", "plan"}),
    "no_reflection": frozenset({"observation", "plan"}),
    "no_reflection_no_planning": frozenset({"observation"}),
    "fully_ablated": frozenset(),
}


@dataclass(frozen=True)
class InterviewQuestion:
    category: str
    text: str

    def __post_init__(self):
        if self.category not in QUESTION_CATEGORIES:
            raise ValueError(f"unknown question category '{self.category}'")


@dataclass
class InterviewAnswer:
    agent: str
    question: str
    condition: str
    text: str
    prompt: str
    context_memory_ids: list[int]
    context_memory_kinds: list[str]
    failed: bool = False


def battery_path() -> Path:
    return Path(__file__).parent / "data" / "interview_questions.json"


def load_battery(path: str | Path | None = None) -> list[InterviewQuestion]:
    data = json.loads(Path(path or battery_path()).read_text(encoding="utf-8"))
    questions = [InterviewQuestion(q["category"], q["text"]) for q in data]
    by_category: dict[str, int] = {}
    for q in questions:
        by_category[q.category] = by_category.get(q.category, 0) + 1
    if sorted(by_category) != sorted(QUESTION_CATEGORIES) or set(
            by_category.values()) != {5}:
        raise ValueError("battery must hold 5 categories x 5 questions")
    return questions


def interacted_names(sim, agent_name: str) -> list[str]:
    """Other agents mentioned anywhere in this agent's memory stream."""
    agent = sim.by_name[agent_name]
    text = "\n".join(m.description for m in agent.stream.memories)
    return [name for name in sorted(sim.by_name)
            if name != agent_name and name in text]


def fill_brackets(question: str, sim, agent_name: str, seed: int,
                  index: int) -> str:
    """Replace '[name]' slots with an interacted agent chosen by the
    seeded RNG (falls back to any other agent when none interacted)."""
    if "[name]" not in question:
        return question
    rng = random.Random(f"{seed}:{agent_name}:{index}")
    pool = interacted_names(sim, agent_name)
    if not pool:
        pool = [n for n in sorted(sim.by_name) if n != agent_name]
    return question.replace("[name]", rng.choice(pool))


def run_interview(
    sim,
    agent_name: str,
    question: str,
    condition: str = "full",
    persona: str = "an interviewer",
) -> InterviewAnswer:
    """Answer one question under an ablation condition.

    Retrieval is restricted to the condition's allowed kinds; the fully
    ablated condition skips the memory stream entirely and presents only
    the seed description.
    """
    if condition not in CONDITIONS:
        raise CommandError(f"unknown condition '{condition}'")
    agent = sim.by_name.get(agent_name)
    if agent is None:
        raise CommandError(f"unknown agent '{agent_name}'")
    allowed = CONDITIONS[condition]

    if not allowed:
        context_memories = []
        summary_text = agent.identity.seed_description
    else:
        query = RetrievalQuery(
            question, sim.gateway.embed(question), sim.clock,
            budget=sim.config.retrieval_budget, kind_filter=allowed,
        )
        context_memories = agent.stream.retrieve(
            query, sim.retrieval_config, update_access=False)
        summary_text = (agent.summary.text if agent.summary is not None
                        else agent.identity.seed_description)

    context = "\n".join(f"- {m.description}" for m in context_memories)
    slots = {
        "summary": summary_text,
        "datetime": datetime_label(sim.clock, sim.scenario.epoch_date),
        "name": agent.name,
        "context": context,
        "persona": persona,
        "question": question,
    }
    prompt = ""
    try:
        from .gateway import TEMPLATES

        prompt = TEMPLATES["interview_answer"].render(slots)
        text = sim.gateway.complete("interview_answer", slots).strip()
        failed = False
    except GatewayError:
        text = ""
        failed = True
    return InterviewAnswer(
        agent=agent_name, question=question, condition=condition, text=text,
        prompt=prompt,
        context_memory_ids=[m.id for m in context_memories],
        context_memory_kinds=[m.kind for m in context_memories],
        failed=failed,
    )


def run_battery(
    sim,
    agent_name: str,
    condition: str,
    questions: list[InterviewQuestion] | None = None,
    seed: int | None = None,
    persona: str = "an interviewer",
) -> list[InterviewAnswer]:
    questions = questions or load_battery()
    seed = sim.config.seed if seed is None else seed
    answers = []
    for index, q in enumerate(questions):
        filled = fill_brackets(q.text, sim, agent_name, seed, index)
        answers.append(run_interview(sim, agent_name, filled, condition, persona))
    return answers


# --- knowledge classification -------------------------------------------------


@dataclass(frozen=True)
class ItemMatchers:
    """Affirmation / negation patterns for one piece of information.

    ``content`` patterns identify the item itself inside memories and
    dialogues (used by hallucination checks and holder seeding).
    """

    item: str
    yes_patterns: tuple[str, ...]
    no_patterns: tuple[str, ...]
    content_patterns: tuple[str, ...]
    question: str

    def __post_init__(self):
        if not self.yes_patterns or not self.no_patterns:
            raise ValueError("matcher lists must be non-empty")


def classify_knowledge(answer: str, matchers: ItemMatchers) -> tuple[str, bool]:
    """Label an interview answer yes/no; (label, flagged_for_review).

    Ambiguous answers (both pattern families fire) are labeled no and
    flagged; a manual override file can correct individual labels.
    """
    if not answer.strip():
        return "no", False
    lowered = answer.lower()
    say_yes = any(p.lower() in lowered for p in matchers.yes_patterns)
    say_no = any(p.lower() in lowered for p in matchers.no_patterns)
    if say_yes and say_no:
        return "no", True
    if say_yes:
        return "yes", False
    return "no", not say_no  # pattern-free answers are flagged too


def load_overrides(path: str | Path | None) -> dict:
    if path is None:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def verify_not_hallucinated(stream: MemoryStream, matchers: ItemMatchers,
                            before) -> bool:
    """True iff some memory holding the item's content predates *before*.

    Dialogue turns are recorded as memories, so locating the specific
    dialogue and holding the item by initialization both count.
    """
    for memory in stream.memories:
        if memory.created_at >= before:
            continue
        text = memory.description.lower()
        if any(p.lower() in text for p in matchers.content_patterns):
            return True
    return False


# --- network density -----------------------------------------------------------


def network_density(vertex_count: int, edges: set[frozenset]) -> float:
    """eta = 2|E| / (|V| (|V|-1)); defined as 0 below two vertices."""
    if vertex_count < 2:
        return 0.0
    return 2.0 * len(edges) / (vertex_count * (vertex_count - 1))


KNOW_OF_QUESTION = "Do you know of {name}?"


def knows_of(sim, asker: str, about: str, condition: str = "full") -> bool:
    answer = run_interview(
        sim, asker, KNOW_OF_QUESTION.format(name=about), condition)
    return answer.text.lower().lstrip().startswith("yes")


def mutual_knowledge_graph(sim, names: list[str] | None = None) -> set[frozenset]:
    """Undirected edges between agents who both affirm knowing each other."""
    names = names or [a.name for a in sim.agents if not a.embodied]
    directed: dict[tuple[str, str], bool] = {}
    for asker in names:
        for about in names:
            if asker != about:
                directed[(asker, about)] = knows_of(sim, asker, about)
    edges = set()
    for a in names:
        for b in names:
            if a < b and directed[(a, b)] and directed[(b, a)]:
                edges.add(frozenset((a, b)))
    return edges


# --- diffusion -------------------------------------------------------------------


@dataclass
class DiffusionReport:
    item: str
    holders_start: set[str]
    holders_end: set[str]
    hallucination_flags: dict[str, bool]
    answers: dict[str, str] = field(default_factory=dict)
    review_flags: dict[str, bool] = field(default_factory=dict)

    def to_json(self, population: int) -> dict:
        return {
            "item": self.item,
            "population": population,
            "holders_start": sorted(self.holders_start),
            "holders_end": sorted(self.holders_end),
            "start_count": len(self.holders_start),
            "end_count": len(self.holders_end),
            "start_fraction": round(len(self.holders_start) / population, 4),
            "end_fraction": round(len(self.holders_end) / population, 4),
            "hallucinations": sorted(
                name for name, bad in self.hallucination_flags.items() if bad),
            "flagged_for_review": sorted(
                name for name, f in self.review_flags.items() if f),
        }


def diffusion_report(sim, matchers: ItemMatchers,
                     overrides: dict | None = None) -> DiffusionReport:
    """Measure who holds an item at the end of a run, with hallucination
    verification against each claimant's own memory stream."""
    overrides = overrides or {}
    holders_start = set()
    holders_end = set()
    flags: dict[str, bool] = {}
    review: dict[str, bool] = {}
    answers: dict[str, str] = {}
    for agent in sim.agents:
        if agent.embodied:
            continue
        seed_memories = [m for m in agent.stream.memories if m.created_at == 0]
        if any(
            any(p.lower() in m.description.lower() for p in matchers.content_patterns)
            for m in seed_memories
        ):
            holders_start.add(agent.name)
        answer = run_interview(sim, agent.name, matchers.question, "full")
        answers[agent.name] = answer.text
        label, flagged = classify_knowledge(answer.text, matchers)
        label = overrides.get(agent.name, {}).get(matchers.item, label)
        review[agent.name] = flagged
        if label == "yes":
            grounded = verify_not_hallucinated(agent.stream, matchers, sim.clock)
            flags[agent.name] = not grounded
            if grounded:
                holders_end.add(agent.name)
    return DiffusionReport(matchers.item, holders_start, holders_end, flags,
                           answers, review)


# --- coordination ------------------------------------------------------------------


def location_footprint(tree, location_path: str) -> set:
    node = tree.resolve(location_path)
    if node is None:
        raise CommandError(f"unknown location '{location_path}'")
    tiles = set()
    for descendant in node.walk():
        tiles.update(tuple(t) for t in descendant.footprint)
    if not tiles:
        raise CommandError(f"location '{location_path}' has no footprint")
    return tiles


def coordination_count(events: list[dict], tree, location_path: str,
                       window: tuple[int, int], invited: set[str]) -> int:
    """Invited agents whose position enters the location's footprint at any
    tick inside [window start, window end]."""
    footprint = location_footprint(tree, location_path)
    start_tick, end_tick = window
    tiles: dict[str, tuple] = {}
    present: set[str] = set()
    moves = [e for e in events if e["kind"] == "move"]
    cursor = 0
    for tick in range(0, end_tick + 1):
        while cursor < len(moves) and moves[cursor]["tick"] <= tick:
            payload = moves[cursor]["payload"]
            tiles[payload["agent"]] = tuple(payload["tile"])
            cursor += 1
        if tick >= start_tick:
            for name in invited:
                if tiles.get(name) in footprint:
                    present.add(name)
    return len(present)


# --- report rendering -----------------------------------------------------------


def render_table(rows: list[tuple], headers: tuple) -> str:
    widths = [max(len(str(r[i])) for r in [headers, *rows]) for i in range(len(headers))]
    def fmt(row):
        return "  ".join(str(cell).ljust(widths[i]) for i, cell in enumerate(row))
    lines = [fmt(headers), fmt(tuple("-" * w for w in widths))]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)
