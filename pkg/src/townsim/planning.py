"""Day planning, recursive decomposition, reactions, and dialogue.

Agents plan a day in 5-8 broad strokes, then lazily decompose the near
future into hour-scale and finally 5-15 minute actions. Perceptions can
interrupt: a model-adjudicated reaction truncates the current activity and
the rest of the day is re-planned from that moment. Dialogue between two
agents is generated turn by turn, each utterance conditioned on the
speaker's retrieved memories of the other.
"""

from __future__ import annotations

import datetime as _dt
import logging
import re
from dataclasses import dataclass, field, replace

from .errors import GatewayError
from .gametime import (
    MINUTES_PER_DAY,
    GameTime,
    clock_label,
    date_label,
    datetime_label,
    parse_all_clocks,
)
from .memory import MemoryStream, RetrievalConfig, RetrievalQuery

log = logging.getLogger(__name__)

DAY_ENTRY_MIN, DAY_ENTRY_MAX = 5, 8
MINUTE_LOW, MINUTE_HIGH = 5, 15
HOUR_LOW, HOUR_HIGH = 30, 90
SUMMARY_REFRESH_MINUTES = 120
DIALOGUE_TURN_CAP = 8
END_MARKER = "[end]"
RESUME_MARKER = "continue with the rest of the planned schedule"


@dataclass(frozen=True)
class AgentIdentity:
    name: str
    age: int
    innate_traits: str
    seed_description: str

    @property
    def first_name(self) -> str:
        return self.name.split()[0]

    def seed_phrases(self) -> list[str]:
        phrases = [p.strip() for p in self.seed_description.split(";")]
        phrases = [p for p in phrases if p]
        if not phrases:
            raise ValueError(f"seed description for {self.name} has no phrases")
        return phrases


@dataclass
class AgentSummary:
    text: str
    computed_at: GameTime
    refresh_interval: int = SUMMARY_REFRESH_MINUTES

    def fresh(self, now: GameTime) -> bool:
        return now - self.computed_at < self.refresh_interval


def agent_summary(
    identity: AgentIdentity,
    stream: MemoryStream,
    now: GameTime,
    gateway,
    cache: AgentSummary | None = None,
    refresh_interval: int = SUMMARY_REFRESH_MINUTES,
    config: RetrievalConfig | None = None,
) -> AgentSummary:
    """Cached paragraph describing the agent, rebuilt at regular intervals.

    Three retrievals (core characteristics, current daily occupation,
    feeling about recent progress) are each summarized by the model and
    concatenated with the agent's name, age, and traits. On gateway failure
    the stale cache is reused; with no cache at all, the seed description
    stands in verbatim.
    """
    if cache is not None and cache.fresh(now):
        return cache
    queries = [
        (f"{identity.name}'s core characteristics", "summary_core"),
        (f"{identity.name}'s current daily occupation", "summary_occupation"),
        (f"{identity.name}'s feeling about his recent progress in life", "summary_feeling"),
    ]
    parts = []
    try:
        for query_text, template_id in queries:
            retrieved = stream.retrieve(
                RetrievalQuery(query_text, gateway.embed(query_text), now), config
            )
            statements = "\n".join(f"- {m.description}" for m in retrieved)
            parts.append(
                gateway.complete(
                    template_id, {"name": identity.name, "statements": statements}
                ).strip()
            )
    except GatewayError as exc:
        log.warning("summary regeneration failed for %s: %s", identity.name, exc)
        if cache is not None:
            return cache
        return AgentSummary(identity.seed_description, now, refresh_interval)
    text = (
        f"Name: {identity.name} (age: {identity.age})\n"
        f"Innate traits: {identity.innate_traits}\n" + " ".join(p for p in parts if p)
    )
    return AgentSummary(text, now, refresh_interval)


@dataclass
class PlanEntry:
    """One scheduled action: what, where, when, for how long.

    ``start`` is absolute game time; children, when decomposed, tile the
    parent's interval exactly. ``object_path`` names a sandbox object the
    action interacts with (the '@ <path>' suffix convention).
    """

    description: str
    location: str
    start: GameTime
    duration: int
    level: str  # day | hour | minute
    object_path: str | None = None
    children: list["PlanEntry"] = field(default_factory=list)

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("plan entry duration must be positive")
        if self.level not in ("day", "hour", "minute"):
            raise ValueError(f"unknown plan level '{self.level}'")

    @property
    def end(self) -> GameTime:
        return self.start + self.duration

    def active(self, now: GameTime) -> bool:
        return self.start <= now < self.end

    def signature(self) -> tuple:
        """Identity tuple used for byte-identical preservation checks."""
        return (self.description, self.location, self.start, self.duration,
                self.level, self.object_path)

    def memory_text(self, epoch_date: _dt.date) -> str:
        where = f" at {self.location}" if self.location else ""
        return (f"for {self.duration} minutes from {clock_label(self.start)} on "
                f"{date_label(self.start, epoch_date)},{where}: {self.description}")


@dataclass
class DayPlan:
    date: int  # day index since epoch
    entries: list[PlanEntry]
    fallback: bool = False

    def active_chain(self, now: GameTime) -> list[PlanEntry]:
        """Entry chain (day, hour, minute) covering *now*; deepest last."""
        chain: list[PlanEntry] = []
        entries = self.entries
        while True:
            current = next((e for e in entries if e.active(now)), None)
            if current is None:
                return chain
            chain.append(current)
            entries = current.children

    def check_tiling(self) -> None:
        """Assert children tile their parents exactly, recursively."""
        def walk(entries: list[PlanEntry], lo: GameTime, hi: GameTime, top: bool):
            cursor = lo
            for entry in entries:
                if entry.start != cursor:
                    raise ValueError(
                        f"gap or overlap at {entry.description!r}: "
                        f"starts {entry.start}, expected {cursor}")
                cursor = entry.end
                if entry.children:
                    walk(entry.children, entry.start, entry.end, False)
            if not top and cursor != hi:
                raise ValueError(f"children end at {cursor}, parent ends at {hi}")
        if self.entries:
            walk(self.entries, self.entries[0].start, self.entries[-1].end, True)


# --- parsing ---------------------------------------------------------------

_ENTRY_SPLIT_RE = re.compile(r"\s*\d+[.)]\s*")
_LOCATION_RE = re.compile(r"\[([^\]]+)\]")
_OBJECT_RE = re.compile(r"\s@\s*(.+)$")


def _strip_markers(text: str) -> tuple[str, str | None, str | None]:
    """Split '<desc> [location] @ object' into its parts."""
    location = None
    m = _LOCATION_RE.search(text)
    if m:
        location = m.group(1).strip()
        text = (text[: m.start()] + text[m.end():]).strip()
    object_path = None
    m = _OBJECT_RE.search(text)
    if m:
        object_path = m.group(1).strip()
        text = text[: m.start()].strip()
    return text.strip(" ,."), location, object_path


def parse_day_plan_reply(reply: str, date: int) -> list[PlanEntry]:
    """Broad-strokes reply into chronological day-level entries.

    Each numbered chunk needs at least one clock time (its start); an
    entry's end is the next entry's start, and the final entry runs to
    midnight. Out-of-order entries are sorted with a warning.
    """
    base = date * MINUTES_PER_DAY
    chunks = [c.strip() for c in _ENTRY_SPLIT_RE.split(reply) if c.strip()]
    timed = []
    for chunk in chunks:
        text, location, object_path = _strip_markers(chunk)
        clocks = parse_all_clocks(text)
        if not clocks or not text:
            continue
        timed.append((base + clocks[0], text, location, object_path))
    if not timed:
        return []
    if any(b[0] < a[0] for a, b in zip(timed, timed[1:])):
        log.warning("day plan entries out of order; sorting by start time")
        timed.sort(key=lambda item: item[0])
    entries = []
    for i, (start, text, location, object_path) in enumerate(timed):
        end = timed[i + 1][0] if i + 1 < len(timed) else base + MINUTES_PER_DAY
        if end <= start:
            continue
        entries.append(PlanEntry(text, location or "", start, end - start, "day",
                                 object_path))
    return entries


def fallback_day_plan(identity: AgentIdentity, date: int, home: str) -> DayPlan:
    """Fixed wake/work/eat/sleep template for persistent parse failures."""
    base = date * MINUTES_PER_DAY
    entries = [
        PlanEntry("waking up and completing the morning routine", home,
                  base + 7 * 60, 120, "day"),
        PlanEntry("going about the day's work", home, base + 9 * 60, 540, "day"),
        PlanEntry("having dinner and relaxing at home", home, base + 18 * 60, 240, "day"),
        PlanEntry("getting ready for bed and sleeping", home, base + 22 * 60, 120, "day"),
    ]
    return DayPlan(date, entries, fallback=True)


def plan_day(
    identity: AgentIdentity,
    summary: AgentSummary,
    date: int,
    prior_day_summary: str,
    gateway,
    epoch_date: _dt.date,
    home: str,
    stream: MemoryStream | None = None,
    now: GameTime | None = None,
) -> DayPlan:
    """Generate the day's broad-strokes plan and store it as plan memories."""
    slots = {
        "name": identity.name,
        "age": str(identity.age),
        "traits": identity.innate_traits,
        "summary": summary.text,
        "prior_day": prior_day_summary,
        "date": date_label(date * MINUTES_PER_DAY, epoch_date),
        "first_name": identity.first_name,
    }
    entries: list[PlanEntry] = []
    for _ in range(2):
        try:
            reply = gateway.complete("day_plan", slots)
        except GatewayError as exc:
            log.warning("day plan generation failed for %s: %s", identity.name, exc)
            break
        entries = parse_day_plan_reply(reply, date)
        if DAY_ENTRY_MIN <= len(entries) <= DAY_ENTRY_MAX:
            break
    if len(entries) >= 3:
        plan = DayPlan(date, entries)
    else:
        plan = fallback_day_plan(identity, date, home)
    if stream is not None:
        record_at = now if now is not None else date * MINUTES_PER_DAY
        for entry in plan.entries:
            stream.record("plan", entry.memory_text(epoch_date), record_at, gateway)
    return plan


# --- decomposition ---------------------------------------------------------


def fit_chunks(
    total: int,
    items: list[tuple[str, int]],
    low: int,
    high: int,
) -> list[tuple[str, int]]:
    """Fit weighted chunks into *total* minutes with durations in [low, high].

    Model-suggested durations are treated as weights and proportionally
    rescaled so the chunks tile the parent exactly. The chunk list is
    padded (repeating the final activity) or truncated as needed; only a
    final remainder may fall below *low*, and only when the parent itself
    is shorter than *low*.
    """
    if total <= 0:
        raise ValueError("total must be positive")
    if not items:
        items = [("continuing the current activity", 1)]
    if total < low:
        return [(items[0][0], total)]
    k_min = -(-total // high)  # ceil
    k_max = max(1, total // low)
    k = min(max(len(items), k_min), k_max)
    fitted = [items[i % len(items)] for i in range(k)]
    weights = [max(1, w) for _, w in fitted]

    out: list[tuple[str, int]] = []
    remaining = total
    for i, (desc, _) in enumerate(fitted):
        chunks_left = k - i
        if chunks_left == 1:
            duration = remaining
        else:
            share = round(remaining * weights[i] / sum(weights[i:]))
            upper = min(high, remaining - (chunks_left - 1) * low)
            duration = max(low, min(share, upper))
            duration = max(duration, remaining - (chunks_left - 1) * high)
        out.append((desc, duration))
        remaining -= duration
    return out


_TIMED_LINE_RE = re.compile(
    r"(?:^|[.;]\s*)(\d{1,2}:\d{2}\s*(?:am|pm))\s*:\s*", re.IGNORECASE
)


def parse_decompose_reply(reply: str, parent: PlanEntry) -> list[tuple[str, int]]:
    """Reply into (description, weight) pairs for chunk fitting.

    Replies use the 'h:mm pm: do something' format; consecutive times give
    the suggested durations, with the final chunk running to the parent's
    end. Lines with no time contribute weight-1 chunks.
    """
    base = (parent.start // MINUTES_PER_DAY) * MINUTES_PER_DAY
    pieces: list[tuple[str, int]] = []
    matches = list(_TIMED_LINE_RE.finditer(reply))
    if matches:
        starts = []
        for i, m in enumerate(matches):
            end_pos = matches[i + 1].start() if i + 1 < len(matches) else len(reply)
            text, _, object_path = _strip_markers(reply[m.end(): end_pos])
            clock = parse_all_clocks(m.group(1))
            if not text or not clock:
                continue
            starts.append((base + clock[0], text, object_path))
        for i, (start, text, object_path) in enumerate(starts):
            end = starts[i + 1][0] if i + 1 < len(starts) else parent.end
            weight = max(1, end - start)
            pieces.append((text if object_path is None else f"{text} @ {object_path}",
                           weight))
    else:
        for line in reply.splitlines():
            text, _, object_path = _strip_markers(line)
            if text:
                pieces.append((text if object_path is None else f"{text} @ {object_path}", 1))
    return pieces


def decompose(
    entry: PlanEntry,
    identity: AgentIdentity,
    summary: AgentSummary,
    gateway,
    epoch_date: _dt.date,
    stream: MemoryStream | None = None,
    now: GameTime | None = None,
) -> list[PlanEntry]:
    """Decompose a day entry into hour chunks, or an hour entry into
    5-15 minute chunks, tiling the parent interval exactly."""
    if entry.level not in ("day", "hour"):
        raise ValueError("only day and hour entries decompose")
    template = "decompose_hour" if entry.level == "day" else "decompose_minute"
    child_level = "hour" if entry.level == "day" else "minute"
    low, high = (HOUR_LOW, HOUR_HIGH) if child_level == "hour" else (MINUTE_LOW, MINUTE_HIGH)
    slots = {
        "summary": summary.text,
        "date": date_label(entry.start, epoch_date),
        "name": identity.name,
        "activity": entry.description,
        "start": clock_label(entry.start),
        "end": clock_label(entry.end),
    }
    try:
        reply = gateway.complete(template, slots)
        pieces = parse_decompose_reply(reply, entry)
    except GatewayError as exc:
        log.warning("decomposition failed for %s (%s); single filler chunk",
                    identity.name, exc)
        pieces = []
    if not pieces:
        pieces = [(entry.description, 1)]
    children = []
    cursor = entry.start
    for desc, duration in fit_chunks(entry.duration, pieces, low, high):
        text, _, object_path = _strip_markers(desc) if " @ " in desc else (desc, None, None)
        children.append(
            PlanEntry(text, entry.location, cursor, duration, child_level, object_path)
        )
        cursor += duration
    entry.children = children
    if stream is not None and child_level == "minute":
        record_at = now if now is not None else entry.start
        for child in children:
            stream.record("plan", child.memory_text(epoch_date), record_at, gateway)
    return children


def ensure_decomposed(
    plan: DayPlan,
    now: GameTime,
    lookahead: int,
    identity: AgentIdentity,
    summary: AgentSummary,
    gateway,
    epoch_date: _dt.date,
    stream: MemoryStream | None = None,
) -> None:
    """Just-in-time decomposition of the entry containing *now* and the
    entries inside the lookahead window, down to minute level."""
    window_end = now + lookahead
    for entry in plan.entries:
        if entry.end <= now or entry.start >= window_end:
            continue
        if entry.duration <= MINUTE_HIGH:
            continue  # already action-sized; nothing to refine
        if not entry.children:
            decompose(entry, identity, summary, gateway, epoch_date, stream, now)
        for hour_entry in entry.children:
            if hour_entry.end <= now or hour_entry.start >= window_end:
                continue
            if (hour_entry.level == "hour" and not hour_entry.children
                    and hour_entry.duration > MINUTE_HIGH):
                decompose(hour_entry, identity, summary, gateway, epoch_date,
                          stream, now)


# --- reacting --------------------------------------------------------------


@dataclass(frozen=True)
class ReactionDecision:
    should_react: bool
    reaction_text: str | None = None
    starts_dialogue: bool = False

    def __post_init__(self):
        if self.should_react != (self.reaction_text is not None):
            raise ValueError("reaction_text present iff should_react")


_TALK_RE = re.compile(
    r"\b(ask|talk|chat|discuss|tell|greet|invite|say|thank|converse|speak)", re.IGNORECASE
)
_YES_RE = re.compile(r"^\s*yes\b[.,:;!]?\s*", re.IGNORECASE)
_NO_RE = re.compile(r"^\s*no\b", re.IGNORECASE)


def parse_reaction_reply(reply: str, observed_is_agent: bool) -> ReactionDecision:
    m = _YES_RE.match(reply)
    if not m:
        if not _NO_RE.match(reply):
            log.debug("unparseable reaction reply %r; continuing plan", reply)
        return ReactionDecision(False)
    text = reply[m.end():].strip().rstrip(".") or "reacting to the observation"
    starts_dialogue = bool(observed_is_agent and _TALK_RE.search(text))
    return ReactionDecision(True, text, starts_dialogue)


def reaction_context(
    identity: AgentIdentity,
    stream: MemoryStream,
    observed_name: str,
    observation: str,
    now: GameTime,
    gateway,
    config: RetrievalConfig | None = None,
) -> str:
    """Context paragraph: relationship + current action of the observed,
    summarized from two retrievals."""
    statements: list[str] = []
    seen = set()
    for query_text in (
        f"What is {identity.name}'s relationship with the {observed_name}?",
        observation,
    ):
        for memory in stream.retrieve(
            RetrievalQuery(query_text, gateway.embed(query_text), now), config
        ):
            if memory.id not in seen:
                seen.add(memory.id)
                statements.append(f"- {memory.description}")
    return gateway.complete(
        "context_relationship",
        {
            "name": identity.name,
            "entity": observed_name,
            "statements": "\n".join(statements),
        },
    ).strip()


def decide_reaction(
    identity: AgentIdentity,
    stream: MemoryStream,
    summary: AgentSummary,
    status: str,
    observation: str,
    observed_name: str,
    observed_is_agent: bool,
    now: GameTime,
    gateway,
    epoch_date: _dt.date,
    config: RetrievalConfig | None = None,
) -> ReactionDecision:
    """Should the agent deviate from its plan in response to a perception?"""
    try:
        context = reaction_context(identity, stream, observed_name, observation,
                                   now, gateway, config)
        reply = gateway.complete(
            "should_react",
            {
                "summary": summary.text,
                "datetime": datetime_label(now, epoch_date),
                "name": identity.name,
                "status": status,
                "observation": observation,
                "context": context,
            },
        )
    except GatewayError as exc:
        log.warning("reaction check failed for %s: %s", identity.name, exc)
        return ReactionDecision(False)
    return parse_reaction_reply(reply, observed_is_agent)


def regenerate_plan_from(
    plan: DayPlan,
    now: GameTime,
    reaction_entry: PlanEntry,
    identity: AgentIdentity,
    summary: AgentSummary,
    gateway,
    epoch_date: _dt.date,
    stream: MemoryStream | None = None,
) -> DayPlan:
    """Re-plan the rest of the day from *now*, keeping the past untouched.

    Entries already finished are carried over unchanged; the in-progress
    entry is truncated at *now*; the reaction becomes the first new entry.
    The model's re-plan of the remainder may answer with the resume marker,
    which keeps the previously planned future entries (trimmed to start
    after the reaction ends).
    """
    preserved = [e for e in plan.entries if e.end <= now]
    current = next((e for e in plan.entries if e.active(now)), None)
    if current is not None and current.start < now:
        truncated = replace(current, duration=now - current.start, children=[])
        _trim_children(current, truncated)
        preserved.append(truncated)
    future = [e for e in plan.entries if e.start >= now and e is not current]

    reaction = replace(reaction_entry, start=now)
    resume_at = min(reaction.end, (plan.date + 1) * MINUTES_PER_DAY)
    reaction = replace(reaction, duration=resume_at - now)

    slots = {
        "name": identity.name,
        "age": "0",
        "traits": "",
        "summary": summary.text,
        "prior_day": (
            f"At {clock_label(now)}, {identity.name} decided to: "
            f"{reaction.description}. Replan the rest of today starting "
            f"{clock_label(resume_at)}."
        ),
        "date": date_label(now, epoch_date),
        "first_name": identity.first_name,
    }
    remainder: list[PlanEntry] = []
    try:
        reply = gateway.complete("day_plan", slots)
    except GatewayError as exc:
        log.warning("re-plan failed for %s: %s", identity.name, exc)
        reply = RESUME_MARKER
    if RESUME_MARKER in reply.lower():
        remainder = _resume_future(future, current, resume_at)
    else:
        parsed = parse_day_plan_reply(reply, plan.date)
        remainder = [e for e in parsed if e.start >= resume_at]
        if remainder:
            first = remainder[0]
            if first.start > resume_at:
                remainder[0] = replace(
                    first, start=resume_at, duration=first.end - resume_at
                )
        else:
            remainder = _resume_future(future, current, resume_at)
    new_plan = DayPlan(plan.date, preserved + [reaction] + remainder)
    if stream is not None:
        stream.record("plan", reaction.memory_text(epoch_date), now, gateway)
    return new_plan


def _trim_children(original: PlanEntry, truncated: PlanEntry) -> None:
    kept = []
    for child in original.children:
        if child.end <= truncated.end:
            kept.append(child)
        elif child.start < truncated.end:
            trimmed = replace(child, duration=truncated.end - child.start, children=[])
            _trim_children(child, trimmed)
            kept.append(trimmed)
    truncated.children = kept


def _resume_future(
    future: list[PlanEntry], current: PlanEntry | None, resume_at: GameTime
) -> list[PlanEntry]:
    out: list[PlanEntry] = []
    if current is not None and current.end > resume_at:
        out.append(replace(current, start=resume_at,
                           duration=current.end - resume_at, children=[]))
    for entry in future:
        if entry.end <= resume_at:
            continue
        if entry.start < resume_at:
            out.append(replace(entry, start=resume_at,
                               duration=entry.end - resume_at, children=[]))
        else:
            out.append(entry)
    if out and out[0].start > resume_at:
        first = out[0]
        out[0] = replace(first, start=resume_at, duration=first.end - resume_at,
                         children=[])
    return out


# --- dialogue ---------------------------------------------------------------


@dataclass
class Dialogue:
    participants: tuple[str, str]
    turns: list[tuple[str, str]] = field(default_factory=list)
    ended: bool = False

    def turn_count(self, speaker: str) -> int:
        return sum(1 for s, _ in self.turns if s == speaker)

    def next_speaker(self) -> str:
        if not self.turns:
            return self.participants[0]
        last = self.turns[-1][0]
        return self.participants[1] if last == self.participants[0] else self.participants[0]

    def history_text(self) -> str:
        return "\n".join(f"{speaker.split()[0]}: {utterance}"
                         for speaker, utterance in self.turns)


def dialogue_turn(
    speaker_identity: AgentIdentity,
    speaker_stream: MemoryStream,
    speaker_summary: AgentSummary,
    speaker_status: str,
    listener_name: str,
    dialogue: Dialogue,
    now: GameTime,
    gateway,
    epoch_date: _dt.date,
    intent: str | None = None,
    observation: str | None = None,
    config: RetrievalConfig | None = None,
) -> str | None:
    """Produce the speaker's next utterance, or None when the dialogue ends.

    The first utterance is additionally conditioned on the intent that
    sparked the conversation. A hard cap bounds each participant's turns;
    gateway failures end the dialogue gracefully.
    """
    if dialogue.ended:
        raise ValueError("dialogue already ended")
    if dialogue.turn_count(speaker_identity.name) >= DIALOGUE_TURN_CAP:
        dialogue.ended = True
        return None

    last_utterance = dialogue.turns[-1][1] if dialogue.turns else None
    try:
        statements: list[str] = []
        seen = set()
        queries = [f"What is {speaker_identity.name}'s relationship with the {listener_name}?"]
        if last_utterance:
            queries.append(last_utterance)
        for query_text in queries:
            for memory in speaker_stream.retrieve(
                RetrievalQuery(query_text, gateway.embed(query_text), now), config
            ):
                if memory.id not in seen:
                    seen.add(memory.id)
                    statements.append(f"- {memory.description}")
        context = gateway.complete(
            "context_relationship",
            {
                "name": speaker_identity.name,
                "entity": listener_name,
                "statements": "\n".join(statements),
            },
        ).strip()

        slots = {
            "summary": speaker_summary.text,
            "datetime": datetime_label(now, epoch_date),
            "name": speaker_identity.name,
            "status": speaker_status,
            "observation": observation or (
                f"{listener_name} is initiating a conversation with "
                f"{speaker_identity.first_name}."
                if dialogue.turns
                else f"{speaker_identity.first_name} saw {listener_name}."
            ),
            "context": context,
        }
        if not dialogue.turns:
            slots["intent"] = intent or (
                f"{speaker_identity.first_name} is starting a conversation "
                f"with {listener_name}"
            )
            slots["other"] = listener_name.split()[0]
            reply = gateway.complete("dialogue_first", slots)
        else:
            slots["history"] = dialogue.history_text()
            slots["other"] = listener_name.split()[0]
            reply = gateway.complete("dialogue_next", slots)
    except GatewayError as exc:
        log.warning("dialogue turn failed for %s: %s", speaker_identity.name, exc)
        dialogue.ended = True
        return None

    text = reply.strip()
    ends = END_MARKER in text.lower()
    if ends:
        lowered = text.lower()
        cut = lowered.find(END_MARKER)
        text = text[:cut].strip()
    if not text:
        dialogue.ended = True
        return None
    dialogue.turns.append((speaker_identity.name, text))
    if ends or dialogue.turn_count(speaker_identity.name) >= DIALOGUE_TURN_CAP:
        dialogue.ended = True
    return text


def schedule_text(plan: DayPlan, epoch_date: _dt.date) -> str:
    """Human-readable schedule: one line per minute-level (or finest) entry."""
    lines = [f"# {date_label(plan.date * MINUTES_PER_DAY, epoch_date)}"]

    def walk(entries: list[PlanEntry]):
        for entry in entries:
            if entry.children:
                walk(entry.children)
            else:
                lines.append(
                    f"{clock_label(entry.start)}  {entry.duration:>3} min  "
                    f"{entry.location or '-'}  {entry.description}"
                )

    walk(plan.entries)
    return "\n".join(lines) + "\n"
