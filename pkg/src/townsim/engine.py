"""Deterministic tick engine: world state, agent loop, events, replay.

One tick is one game minute. Each tick the engine snapshots positions,
delivers percepts to every agent in ascending id order, then runs each
agent's turn (reflection check, reaction check, plan lookup, one movement
step), applies object transitions, appends events, and advances the clock.
With a fixed seed and the scripted gateway, the event log is byte-stable
across runs and platforms: the world at tick T is a pure function of the
scenario, the seed, the user commands so far, and the recorded exchanges.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import environment as env
from . import planning
from .config import RunConfig
from .environment import AgentEnvView, CollisionMap, EnvTree, Percept, Tile
from .errors import (
    CommandError,
    GatewayError,
    ReplayError,
    ScenarioError,
    UnreachableTileError,
)
from .gametime import MINUTES_PER_DAY, GameTime, clock_label, date_label
from .gateway import Gateway, LiveBackend, ModelExchange, ReplayBackend, ScriptedBackend
from .memory import MemoryStream, RetrievalConfig
from .planning import (
    AgentIdentity,
    AgentSummary,
    DayPlan,
    Dialogue,
    PlanEntry,
    ReactionDecision,
)
from .reflection import ReflectionTrigger, reflection_due, run_reflection
from .scenario import Scenario

log = logging.getLogger(__name__)

EVENT_KINDS = (
    "action_start", "action_end", "move", "percept", "dialogue_turn",
    "reflection", "plan", "user_command", "object_status", "model_exchange_ref",
)
FALLBACK_EMOJI = "💭"
INNER_VOICE_IMPORTANCE = 9
SLEEP_DESCRIPTION = "sleeping"

_REWRITE_RE = re.compile(r"^\s*<(?P<path>[^>]+)>\s+is\s+(?P<status>.+?)\s*$")


@dataclass
class AgentState:
    """Per-agent runtime record inside the world state."""

    agent_id: int
    identity: AgentIdentity
    stream: MemoryStream
    view: AgentEnvView
    trigger: ReflectionTrigger
    home: str
    bed: str
    tile: Tile
    action: str = ""
    emoji: str = FALLBACK_EMOJI
    interacting: str | None = None
    location_path: str = ""
    path: list[Tile] = field(default_factory=list)
    plans: dict[int, DayPlan] = field(default_factory=dict)
    summary: AgentSummary | None = None
    embodied: bool = False
    active_signature: tuple | None = None
    last_seen_actions: dict[str, str] = field(default_factory=dict)
    reaction_checked_at: dict[str, int] = field(default_factory=dict)
    conversed_at: dict[str, int] = field(default_factory=dict)
    forced_reactions: list[tuple[str, str, bool]] = field(default_factory=list)
    pending_checks: dict[str, tuple[str, bool]] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.identity.name


class EventLog:
    """Append-only event store with optional NDJSON file mirroring."""

    def __init__(self, record_path: str | None = None):
        self.events: list[dict] = []
        self.header: dict | None = None
        self._file = open(record_path, "w", encoding="utf-8") if record_path else None

    def write_header(self, header: dict) -> None:
        self.header = header
        if self._file:
            self._file.write(encode_line(header) + "\n")

    def append(self, event: dict) -> None:
        self.events.append(event)
        if self._file:
            self._file.write(encode_line(event) + "\n")

    def close(self) -> None:
        if self._file:
            self._file.flush()
            self._file.close()
            self._file = None


def encode_line(record: dict) -> str:
    # fixed separators and preserved insertion order keep logs byte-stable
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


class Simulation:
    """Authoritative, single-threaded world."""

    def __init__(
        self,
        scenario: Scenario,
        config: RunConfig,
        gateway: Gateway | None = None,
        record_path: str | None = None,
    ):
        self.scenario = scenario
        self.config = config.with_overrides(scenario.config_overrides)
        self.collision: CollisionMap = scenario.collision_map()
        self.tree: EnvTree = scenario.build_tree()
        self.log = EventLog(record_path)
        self.tick = 0
        self.clock: GameTime = 0
        self._seq = 0
        self.emoji_cache: dict[str, str] = {}
        self.command_queue: list[dict] = []
        self.retrieval_config = RetrievalConfig(
            decay=self.config.decay,
            alpha_recency=self.config.alpha_recency,
            alpha_importance=self.config.alpha_importance,
            alpha_relevance=self.config.alpha_relevance,
        )
        self.gateway = gateway or self._build_gateway()
        self.gateway.on_exchange = self._on_exchange
        self.agents: list[AgentState] = []
        for i, spec in enumerate(scenario.agents):
            identity = AgentIdentity(spec.name, spec.age, spec.traits, spec.seed)
            state = AgentState(
                agent_id=i,
                identity=identity,
                stream=MemoryStream(spec.name),
                view=AgentEnvView(spec.name),
                trigger=ReflectionTrigger(self.config.reflection_threshold),
                home=spec.home,
                bed=spec.bed,
                tile=env.arrival_tile(self.collision,
                                      self.tree.resolve_or_error(spec.bed)),
                location_path=spec.bed,
            )
            state.action = f"{spec.name} is {SLEEP_DESCRIPTION}"
            for area in spec.known_areas:
                node = self.tree.resolve(area)
                if node is not None:
                    for descendant in node.walk():
                        state.view.learn(self.tree, descendant.path(), 0,
                                         descendant.status)
            self.agents.append(state)
        self.by_name = {a.name: a for a in self.agents}
        self.log.write_header(self._header())
        for agent in self.agents:
            # starting positions make the log self-contained for replay and
            # for position tracking in reports
            self._emit("move", {"agent": agent.name,
                                "tile": [agent.tile[0], agent.tile[1]]})
        self._seed_memories()

    # --- construction helpers -------------------------------------------

    def _build_gateway(self) -> Gateway:
        if self.config.gateway_mode == "live":
            backend = LiveBackend(
                self.config.live_base_url,
                self.config.live_model,
                self.config.api_key(),
                embedding_model=self.config.live_embedding_model or None,
            )
            return Gateway(backend, deterministic_embeddings=False)
        return Gateway(ScriptedBackend.from_records(self.scenario.script))

    def _header(self) -> dict:
        return {
            "kind": "header",
            "schema_version": 1,
            "scenario_name": self.scenario.name,
            "scenario_digest": self.scenario.digest,
            "seed": self.config.seed,
            "config": {k: v for k, v in sorted(self.config.effective().items())},
        }

    def _seed_memories(self) -> None:
        for agent in self.agents:
            for phrase in agent.identity.seed_phrases():
                agent.stream.record("observation", phrase, 0, self.gateway)
        # seeds are identity, not perceptions: they never trip reflection
        for agent in self.agents:
            agent.stream.importance_accumulator = 0

    # --- event plumbing ----------------------------------------------------

    def _emit(self, kind: str, payload: dict) -> None:
        assert kind in EVENT_KINDS, kind
        self._seq += 1
        self.log.append(
            {"tick": self.tick, "seq": self._seq, "kind": kind, "payload": payload}
        )

    def _on_exchange(self, exchange: ModelExchange) -> None:
        self._emit(
            "model_exchange_ref",
            {
                "template": exchange.template_id,
                "digest": exchange.slots_digest,
                "reply": exchange.reply,
                "backend": exchange.backend,
                "miss": exchange.miss,
            },
        )

    # --- main loop -----------------------------------------------------------

    def run(self, ticks: int) -> None:
        for _ in range(ticks):
            self.step()

    def step(self) -> None:
        self._apply_queued_commands()
        percepts = self._deliver_percepts()
        pending_interactions: list[tuple[AgentState, str]] = []
        for agent in self.agents:
            self._agent_turn(agent, percepts.get(agent.agent_id, []),
                             pending_interactions)
        for agent, object_path in pending_interactions:
            self._apply_object_interaction(agent, object_path)
        self.tick += 1
        self.clock += self.config.tick_minutes

    # --- percepts --------------------------------------------------------------

    def _deliver_percepts(self) -> dict[int, list[Percept]]:
        positions = {a.name: (a.tile, a.action) for a in self.agents}
        new_percepts: dict[int, list[Percept]] = {}
        for agent in self.agents:
            seen = env.perceive(
                agent.view, self.tree, agent.name, agent.tile, positions,
                self.clock, self.config.vision_radius,
            )
            fresh: list[Percept] = []
            for percept in seen:
                if agent.last_seen_actions.get(percept.entity) == percept.text:
                    continue
                agent.last_seen_actions[percept.entity] = percept.text
                agent.stream.record("observation", percept.text, self.clock,
                                    self.gateway)
                self._emit("percept", {"agent": agent.name,
                                       "entity": percept.entity,
                                       "text": percept.text})
                fresh.append(percept)
            new_percepts[agent.agent_id] = fresh
        return new_percepts

    # --- agent turn ---------------------------------------------------------------

    def _agent_turn(self, agent: AgentState, fresh: list[Percept],
                    pending_interactions: list[tuple[AgentState, str]]) -> None:
        if agent.embodied:
            self._move_step(agent)
            return
        self._ensure_plan(agent)
        if reflection_due(agent.trigger, agent.stream):
            stored = run_reflection(agent.stream, self.clock, self.gateway,
                                    self.retrieval_config, agent.trigger)
            for memory in stored:
                self._emit("reflection", {
                    "agent": agent.name,
                    "memory_id": memory.id,
                    "statement": memory.description,
                    "citations": list(memory.citations),
                })
        self._reaction_phase(agent, fresh)
        self._action_phase(agent, pending_interactions)
        self._move_step(agent)

    def _ensure_plan(self, agent: AgentState) -> None:
        date = self.clock // MINUTES_PER_DAY
        if date in agent.plans:
            return
        agent.summary = planning.agent_summary(
            agent.identity, agent.stream, self.clock, self.gateway,
            cache=agent.summary, refresh_interval=self.config.summary_refresh,
            config=self.retrieval_config,
        )
        plan = planning.plan_day(
            agent.identity, agent.summary, date, self._prior_day_text(agent, date),
            self.gateway, self.scenario.epoch_date, home=agent.home,
            stream=agent.stream, now=self.clock,
        )
        agent.plans[date] = plan
        for entry in plan.entries:
            self._emit("plan", {
                "agent": agent.name, "level": entry.level,
                "description": entry.description, "start": entry.start,
                "duration": entry.duration, "location": entry.location,
            })

    def _prior_day_text(self, agent: AgentState, date: int) -> str:
        previous = agent.plans.get(date - 1)
        label = date_label((date - 1) * MINUTES_PER_DAY, self.scenario.epoch_date)
        if previous is None:
            return (f"This is {agent.identity.first_name}'s first day in town.")
        parts = [
            f"{i}) {entry.description} at {clock_label(entry.start)}"
            for i, entry in enumerate(previous.entries, start=1)
        ]
        return f"On {label}, {agent.identity.first_name} {', '.join(parts)}."

    # --- reactions -------------------------------------------------------------------

    def _reaction_phase(self, agent: AgentState, fresh: list[Percept]) -> None:
        forced = agent.forced_reactions
        agent.forced_reactions = []
        for entity, text, is_agent in forced:
            if self._run_check(agent, entity, text, is_agent):
                return  # one reaction per tick per agent
        # a percept suppressed by a rate limit stays pending (latest text
        # per entity) and is reconsidered once the limit expires
        for percept in fresh:
            if percept.is_agent and percept.entity == agent.name:
                continue  # self-observations never trigger reactions
            agent.pending_checks[percept.entity] = (percept.text, percept.is_agent)
        for entity in sorted(agent.pending_checks):
            text, is_agent = agent.pending_checks[entity]
            last_checked = agent.reaction_checked_at.get(entity)
            if (last_checked is not None
                    and self.clock - last_checked < self.config.reaction_rate_limit):
                continue
            if is_agent:
                talked = agent.conversed_at.get(entity)
                if (talked is not None
                        and self.clock - talked < self.config.dialogue_cooldown):
                    continue
            del agent.pending_checks[entity]
            if self._run_check(agent, entity, text, is_agent):
                return

    def _run_check(self, agent: AgentState, entity: str, text: str,
                   is_agent: bool) -> bool:
        """Run one reaction check; True when the agent reacted."""
        agent.reaction_checked_at[entity] = self.clock
        decision = planning.decide_reaction(
            agent.identity, agent.stream, self._summary_of(agent),
            status=agent.action, observation=text, observed_name=entity,
            observed_is_agent=is_agent, now=self.clock, gateway=self.gateway,
            epoch_date=self.scenario.epoch_date, config=self.retrieval_config,
        )
        if not decision.should_react:
            return False
        if decision.starts_dialogue and is_agent:
            other = self.by_name.get(entity)
            if other is not None and not other.embodied:
                self._run_dialogue(agent, other, decision.reaction_text, text)
                return True
            return False
        self._apply_reaction(agent, decision, text)
        return True

    def _summary_of(self, agent: AgentState) -> AgentSummary:
        agent.summary = planning.agent_summary(
            agent.identity, agent.stream, self.clock, self.gateway,
            cache=agent.summary, refresh_interval=self.config.summary_refresh,
            config=self.retrieval_config,
        )
        return agent.summary

    def _apply_reaction(self, agent: AgentState, decision: ReactionDecision,
                        observation: str) -> None:
        date = self.clock // MINUTES_PER_DAY
        plan = agent.plans.get(date)
        if plan is None:
            return
        location = agent.location_path or agent.bed
        reaction_entry = PlanEntry(decision.reaction_text, location,
                                   self.clock, 10, "day")
        agent.plans[date] = planning.regenerate_plan_from(
            plan, self.clock, reaction_entry, agent.identity,
            self._summary_of(agent), self.gateway, self.scenario.epoch_date,
            stream=agent.stream,
        )
        agent.stream.record(
            "observation",
            f"{agent.name} decided to {decision.reaction_text}",
            self.clock, self.gateway,
        )
        self._emit("plan", {
            "agent": agent.name, "level": "reaction",
            "description": decision.reaction_text, "start": self.clock,
            "duration": reaction_entry.duration, "location": location,
        })

    # --- dialogue ----------------------------------------------------------------------

    def _run_dialogue(self, initiator: AgentState, other: AgentState,
                      intent: str, observation: str) -> None:
        dialogue = Dialogue((initiator.name, other.name))
        while not dialogue.ended:
            speaker_name = dialogue.next_speaker()
            speaker = self.by_name[speaker_name]
            listener = other if speaker is initiator else initiator
            planning.dialogue_turn(
                speaker.identity, speaker.stream, self._summary_of(speaker),
                speaker.action, listener.name, dialogue, self.clock,
                self.gateway, self.scenario.epoch_date,
                intent=intent if not dialogue.turns else None,
                observation=observation if not dialogue.turns else None,
                config=self.retrieval_config,
            )
        if not dialogue.turns:
            return
        for speaker_name, utterance in dialogue.turns:
            self._emit("dialogue_turn", {
                "participants": [initiator.name, other.name],
                "speaker": speaker_name, "utterance": utterance,
            })
            for participant in (initiator, other):
                participant.stream.record(
                    "observation", f'{speaker_name} says "{utterance}"',
                    self.clock, self.gateway,
                )
        initiator.conversed_at[other.name] = self.clock
        other.conversed_at[initiator.name] = self.clock
        duration = max(10, 2 * len(dialogue.turns))
        date = self.clock // MINUTES_PER_DAY
        spot = initiator.location_path or initiator.bed
        for participant, partner in ((initiator, other), (other, initiator)):
            plan = participant.plans.get(date)
            if plan is None:
                continue
            entry = PlanEntry(
                f"conversing with {partner.identity.first_name}",
                spot, self.clock, duration, "day",
            )
            participant.plans[date] = planning.regenerate_plan_from(
                plan, self.clock, entry, participant.identity,
                self._summary_of(participant), self.gateway,
                self.scenario.epoch_date, stream=participant.stream,
            )

    # --- actions & movement ----------------------------------------------------------------

    def _current_entry(self, agent: AgentState) -> PlanEntry | None:
        date = self.clock // MINUTES_PER_DAY
        plan = agent.plans.get(date)
        if plan is None:
            return None
        planning.ensure_decomposed(
            plan, self.clock, self.config.plan_lookahead, agent.identity,
            self._summary_of(agent), self.gateway, self.scenario.epoch_date,
            agent.stream,
        )
        chain = plan.active_chain(self.clock)
        return chain[-1] if chain else None

    def _action_phase(self, agent: AgentState,
                      pending_interactions: list[tuple[AgentState, str]]) -> None:
        entry = self._current_entry(agent)
        if entry is None:
            signature = ("sleep",)
            description = SLEEP_DESCRIPTION
            location = agent.bed
            object_path = None
        else:
            signature = entry.signature()
            description = entry.description
            location = entry.location
            object_path = entry.object_path
        if signature == agent.active_signature:
            return
        if agent.active_signature is not None:
            self._emit("action_end", {"agent": agent.name, "action": agent.action})
        agent.active_signature = signature
        agent.action = f"{agent.name} is {description}"
        agent.emoji = self.emoji_for_action(agent.action)
        agent.interacting = object_path
        self._emit("action_start", {
            "agent": agent.name, "action": agent.action, "emoji": agent.emoji,
            "location": location or agent.location_path,
        })
        agent.stream.record("observation", agent.action, self.clock, self.gateway)
        if not location and entry is not None and not agent.embodied:
            location = env.choose_location(
                agent.view, self.tree, agent.name,
                self._summary_of(agent).text, description,
                agent.location_path or agent.bed, self.gateway,
            )
        self._set_destination(agent, location or agent.location_path)
        if object_path:
            pending_interactions.append((agent, object_path))

    def _set_destination(self, agent: AgentState, location: str) -> None:
        node = self.tree.resolve(location)
        if node is None:
            log.warning("%s cannot find '%s'; staying put", agent.name, location)
            agent.path = []
            return
        agent.location_path = location
        target = env.arrival_tile(self.collision, node)
        if target == agent.tile:
            agent.path = []
            return
        try:
            agent.path = env.path_find(self.collision, agent.tile, target)
        except UnreachableTileError:
            log.warning("%s cannot reach '%s'; staying put", agent.name, location)
            agent.path = []

    def _move_step(self, agent: AgentState) -> None:
        if not agent.path:
            return
        agent.tile = agent.path.pop(0)
        self._emit("move", {"agent": agent.name,
                            "tile": [agent.tile[0], agent.tile[1]]})

    def _apply_object_interaction(self, agent: AgentState, object_path: str) -> None:
        node = self.tree.resolve(object_path)
        if node is None or node.kind != "object":
            return
        before = node.status
        after = env.object_transition(node, agent.name, agent.action, self.gateway)
        if after != before:
            self._emit("object_status", {
                "path": object_path, "status": after, "by": agent.name,
            })

    # --- emoji ------------------------------------------------------------------------------

    def emoji_for_action(self, action_text: str) -> str:
        if not action_text:
            raise ValueError("action text must be non-empty")
        cached = self.emoji_cache.get(action_text)
        if cached is not None:
            return cached
        try:
            reply = self.gateway.complete("emoji", {"action": action_text}).strip()
        except GatewayError:
            reply = ""
        emoji = reply if _plausible_emoji(reply) else FALLBACK_EMOJI
        self.emoji_cache[action_text] = emoji
        return emoji

    # --- user commands -------------------------------------------------------------------------

    def validate_command(self, command: dict) -> None:
        """Syntax and target checks that need no world mutation.

        Raises :class:`CommandError` so a caller can reject a queued
        command immediately; application still happens at tick boundaries.
        """
        kind = command.get("kind")
        if kind not in ("interview", "inner_voice", "object_rewrite",
                        "embody_move", "embody_say"):
            raise CommandError(f"unknown command kind '{kind}'")
        if kind in ("interview", "inner_voice"):
            self._agent_or_error(command.get("target", ""))
        if kind == "object_rewrite":
            payload = command.get("payload", "")
            m = _REWRITE_RE.match(payload)
            if not m:
                raise CommandError(
                    'object_rewrite payload must look like '
                    '"<area: subarea: object> is <status>"')
            try:
                node = self.tree.resolve_or_error(m.group("path"))
            except ScenarioError as exc:
                raise CommandError(str(exc))
            if node.kind != "object":
                raise CommandError(f"'{m.group('path')}' is not an object")

    def queue_command(self, command: dict) -> None:
        self.validate_command(command)
        self.command_queue.append(command)

    def _apply_queued_commands(self) -> None:
        queue, self.command_queue = self.command_queue, []
        for command in queue:
            try:
                self.apply_user_command(command)
            except CommandError as exc:
                log.warning("rejected user command: %s", exc)

    def apply_user_command(self, command: dict) -> dict:
        """Apply one user command between ticks; returns a result payload.

        Kinds: interview (persona Q&A, clock does not advance), inner_voice
        (high-importance directive + forced reaction check), object_rewrite
        (authoritative status set verbatim), embody_move / embody_say.
        """
        kind = command.get("kind")
        target = command.get("target", "")
        payload = command.get("payload", "")
        self._emit("user_command", {
            "command": kind, "target": target, "payload": payload,
            "persona": command.get("persona", ""),
        })
        if kind == "interview":
            return self._command_interview(command)
        if kind == "inner_voice":
            agent = self._agent_or_error(target)
            memory = agent.stream.record(
                "observation",
                f"{agent.identity.first_name}'s inner voice says: {payload}",
                self.clock, self.gateway,
            )
            # directives must reliably win retrieval
            agent.stream._importance[memory.id] = INNER_VOICE_IMPORTANCE
            memory.importance = INNER_VOICE_IMPORTANCE
            agent.forced_reactions.append(
                ("inner voice", memory.description, False))
            return {"status": "recorded", "memory_id": memory.id}
        if kind == "object_rewrite":
            return self._command_rewrite(payload)
        if kind == "embody_move":
            return self._command_embody_move(target, payload)
        if kind == "embody_say":
            return self._command_embody_say(target, payload)
        raise CommandError(f"unknown command kind '{kind}'")

    def _agent_or_error(self, name: str) -> AgentState:
        agent = self.by_name.get(name)
        if agent is None:
            raise CommandError(f"unknown agent '{name}'")
        return agent

    def _command_interview(self, command: dict) -> dict:
        from .evalharness import run_interview  # cycle-free at call time

        agent = self._agent_or_error(command.get("target", ""))
        answer = run_interview(
            self, agent.name, command.get("payload", ""),
            condition="full", persona=command.get("persona", "") or "a visitor",
        )
        return {"status": "answered", "answer": answer.text}

    def _command_rewrite(self, payload: str) -> dict:
        m = _REWRITE_RE.match(payload)
        if not m:
            raise CommandError(
                'object_rewrite payload must look like "<area: subarea: object> is <status>"')
        path, status = m.group("path"), m.group("status")
        try:
            node = self.tree.resolve_or_error(path)
        except ScenarioError as exc:
            raise CommandError(str(exc))
        if node.kind != "object":
            raise CommandError(f"'{path}' is not an object")
        node.status = status  # verbatim, no gateway call
        self._emit("object_status", {"path": node.path(), "status": status,
                                     "by": "user"})
        return {"status": "rewritten", "path": node.path()}

    def _ensure_visitor(self, name: str) -> AgentState:
        existing = self.by_name.get(name)
        if existing is not None:
            if not existing.embodied:
                raise CommandError(f"'{name}' is a resident, not an embodied avatar")
            return existing
        spec_name = name or "Visitor"
        first_open = next(
            (r, c) for r in range(self.collision.height)
            for c in range(self.collision.width)
            if not self.collision.blocked((r, c))
        )
        state = AgentState(
            agent_id=len(self.agents),
            identity=AgentIdentity(spec_name, 0, "visiting",
                                   f"{spec_name} is visiting the town"),
            stream=MemoryStream(spec_name),
            view=AgentEnvView(spec_name),
            trigger=ReflectionTrigger(self.config.reflection_threshold),
            home="", bed="",
            tile=first_open,
            embodied=True,
        )
        state.action = f"{spec_name} is looking around"
        self.agents.append(state)
        self.by_name[spec_name] = state
        return state

    def _command_embody_move(self, target: str, payload: str) -> dict:
        avatar = self._ensure_visitor(target or "Visitor")
        node = self.tree.resolve(payload)
        if node is None:
            raise CommandError(f"unknown destination '{payload}'")
        target_tile = env.arrival_tile(self.collision, node)
        try:
            avatar.path = env.path_find(self.collision, avatar.tile, target_tile)
        except UnreachableTileError as exc:
            raise CommandError(str(exc))
        return {"status": "moving", "steps": len(avatar.path)}

    def _command_embody_say(self, target: str, payload: str) -> dict:
        avatar = self._ensure_visitor(target or "Visitor")
        if not payload:
            raise CommandError("embody_say needs text")
        avatar.action = f'{avatar.name} says "{payload}"'
        heard = 0
        for agent in self.agents:
            if agent is avatar:
                continue
            if env.chebyshev(agent.tile, avatar.tile) <= self.config.vision_radius:
                agent.stream.record("observation", avatar.action, self.clock,
                                    self.gateway)
                heard += 1
        return {"status": "said", "heard_by": heard}

    # --- save / load / replay ------------------------------------------------------------------

    def to_state(self) -> dict:
        return {
            "schema_version": 1,
            "scenario_name": self.scenario.name,
            "scenario_digest": self.scenario.digest,
            "tick": self.tick,
            "clock": self.clock,
            "seq": self._seq,
            "tree": self.tree.to_records(),
            "emoji_cache": dict(sorted(self.emoji_cache.items())),
            "agents": [self._agent_state_dict(a) for a in self.agents],
        }

    def _agent_state_dict(self, agent: AgentState) -> dict:
        return {
            "name": agent.name,
            "age": agent.identity.age,
            "traits": agent.identity.innate_traits,
            "seed": agent.identity.seed_description,
            "home": agent.home,
            "bed": agent.bed,
            "tile": list(agent.tile),
            "action": agent.action,
            "emoji": agent.emoji,
            "interacting": agent.interacting,
            "location_path": agent.location_path,
            "path": [list(t) for t in agent.path],
            "embodied": agent.embodied,
            "active_signature": list(agent.active_signature)
            if agent.active_signature else None,
            "accumulator": agent.stream.importance_accumulator,
            "memories": [m.to_record() for m in agent.stream.memories],
            "view": {
                "known_paths": sorted(agent.view.known_paths),
                "remembered_status": dict(sorted(agent.view.remembered_status.items())),
                "last_seen": dict(sorted(agent.view.last_seen.items())),
            },
            "summary": None if agent.summary is None else {
                "text": agent.summary.text,
                "computed_at": agent.summary.computed_at,
                "refresh_interval": agent.summary.refresh_interval,
            },
            "plans": {
                str(date): [_entry_dict(e) for e in plan.entries]
                for date, plan in sorted(agent.plans.items())
            },
            "last_seen_actions": dict(sorted(agent.last_seen_actions.items())),
            "reaction_checked_at": dict(sorted(agent.reaction_checked_at.items())),
            "conversed_at": dict(sorted(agent.conversed_at.items())),
            "pending_checks": {k: list(v) for k, v in
                               sorted(agent.pending_checks.items())},
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_state(), ensure_ascii=False, sort_keys=True,
                       separators=(",", ":")) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path, scenario: Scenario, config: RunConfig,
             gateway: Gateway | None = None) -> "Simulation":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if data.get("schema_version") != 1:
            raise ScenarioError(
                f"save file schema_version {data.get('schema_version')} unsupported")
        if data.get("scenario_digest") != scenario.digest:
            raise ScenarioError(
                "save file was produced from a different scenario "
                f"(digest {data.get('scenario_digest')} != {scenario.digest})")
        sim = cls(scenario, config, gateway=gateway)
        sim.restore_state(data)
        return sim

    def restore_state(self, data: dict) -> None:
        from .memory import MemoryObject

        self.tick = data["tick"]
        self.clock = data["clock"]
        self._seq = data["seq"]
        self.tree = EnvTree.from_records(data["tree"])
        self.emoji_cache = dict(data["emoji_cache"])
        self.agents = []
        self.by_name = {}
        for i, rec in enumerate(data["agents"]):
            identity = AgentIdentity(rec["name"], rec["age"], rec["traits"],
                                     rec["seed"])
            stream = MemoryStream(rec["name"])
            for m in rec["memories"]:
                stream.append(MemoryObject(
                    id=m["id"], kind=m["kind"], description=m["description"],
                    created_at=m["created_at"], last_accessed=m["last_accessed"],
                    importance=m["importance"],
                    embedding=self.gateway.embed(m["description"]),
                    citations=tuple(m.get("citations", ())),
                    importance_defaulted=m.get("importance_defaulted", False),
                ))
            stream.importance_accumulator = rec["accumulator"]
            view = AgentEnvView(rec["name"])
            view.known_paths = set(rec["view"]["known_paths"])
            view.remembered_status = dict(rec["view"]["remembered_status"])
            view.last_seen = {k: v for k, v in rec["view"]["last_seen"].items()}
            state = AgentState(
                agent_id=i, identity=identity, stream=stream, view=view,
                trigger=ReflectionTrigger(self.config.reflection_threshold),
                home=rec["home"], bed=rec["bed"],
                tile=tuple(rec["tile"]),
                action=rec["action"], emoji=rec["emoji"],
                interacting=rec["interacting"],
                location_path=rec["location_path"],
                path=[tuple(t) for t in rec["path"]],
                embodied=rec["embodied"],
                active_signature=tuple(rec["active_signature"])
                if rec["active_signature"] else None,
            )
            if rec["summary"]:
                state.summary = AgentSummary(
                    rec["summary"]["text"], rec["summary"]["computed_at"],
                    rec["summary"]["refresh_interval"])
            state.plans = {
                int(date): DayPlan(int(date), [_entry_from(e) for e in entries])
                for date, entries in rec["plans"].items()
            }
            state.last_seen_actions = dict(rec["last_seen_actions"])
            state.reaction_checked_at = dict(rec["reaction_checked_at"])
            state.conversed_at = dict(rec["conversed_at"])
            state.pending_checks = {k: (v[0], v[1]) for k, v in
                                    rec.get("pending_checks", {}).items()}
            self.agents.append(state)
            self.by_name[state.name] = state


def _entry_dict(entry: PlanEntry) -> dict:
    return {
        "description": entry.description,
        "location": entry.location,
        "start": entry.start,
        "duration": entry.duration,
        "level": entry.level,
        "object_path": entry.object_path,
        "children": [_entry_dict(c) for c in entry.children],
    }


def _entry_from(rec: dict) -> PlanEntry:
    return PlanEntry(
        rec["description"], rec["location"], rec["start"], rec["duration"],
        rec["level"], rec["object_path"],
        [_entry_from(c) for c in rec["children"]],
    )


def _plausible_emoji(reply: str) -> bool:
    if not reply or len(reply) > 8:
        return False
    return not any(ch.isalnum() or ch.isspace() for ch in reply)


# --- replay ---------------------------------------------------------------------


def read_event_log(path: str | Path) -> tuple[dict, list[dict]]:
    """Parse an NDJSON event log into (header, events).

    A gap in the sequence numbers means the log was truncated; that is an
    error at the first missing record.
    """
    header: dict | None = None
    events: list[dict] = []
    if not Path(path).exists():
        raise ReplayError(f"event log not found: {path}")
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                raise ReplayError(f"log line {line_number} is not valid JSON")
            if record.get("kind") == "header":
                header = record
            else:
                events.append(record)
    if header is None:
        raise ReplayError("log has no header record")
    expected = 1
    for event in events:
        if event["seq"] != expected:
            raise ReplayError(
                f"log truncated or reordered: expected seq {expected}, "
                f"found {event['seq']}")
        expected += 1
    return header, events


def replay(log_path: str | Path, scenario: Scenario,
           config: RunConfig | None = None,
           until: int | None = None) -> Simulation:
    """Reconstruct the run from its event log with zero gateway calls.

    The recorded model exchanges feed a :class:`ReplayBackend`; logged user
    commands are re-applied at their ticks. Determinism makes the replayed
    world identical to the live one at every tick.
    """
    header, events = read_event_log(log_path)
    if header.get("scenario_digest") != scenario.digest:
        raise ReplayError(
            "log was recorded from a different scenario "
            f"(digest {header.get('scenario_digest')} != {scenario.digest})")
    run_config = config or RunConfig()
    merged = dict(header["config"])
    merged.pop("record_path", None)
    run_config = run_config.with_overrides(merged)

    recorded = [
        (e["payload"]["template"], e["payload"]["digest"], e["payload"]["reply"],
         e["payload"].get("miss", False))
        for e in events if e["kind"] == "model_exchange_ref"
    ]
    commands_by_tick: dict[int, list[dict]] = {}
    for event in events:
        if event["kind"] == "user_command":
            commands_by_tick.setdefault(event["tick"], []).append(event["payload"])

    # quiet late ticks emit nothing, so the run length comes from the
    # header's effective configuration, not from the last event
    recorded_ticks = int(header["config"].get("ticks", 0))
    if events:
        recorded_ticks = max(recorded_ticks, events[-1]["tick"] + 1)
    ticks = min(until, recorded_ticks) if until is not None else recorded_ticks

    gateway = Gateway(ReplayBackend(recorded))
    sim = Simulation(scenario, run_config, gateway=gateway)
    for _ in range(ticks):
        for payload in commands_by_tick.get(sim.tick, []):
            sim.queue_command({
                "kind": payload["command"], "target": payload["target"],
                "payload": payload["payload"], "persona": payload["persona"],
            })
        sim.step()
    return sim
