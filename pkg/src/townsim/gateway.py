"""Model gateway: prompt templates, backends, and embeddings.

Every language-model interaction in the engine flows through a
:class:`Gateway`, which renders a registered template, asks its backend for
a completion, and reports the exchange to an optional log hook. Backends:

* :class:`ScriptedBackend` — deterministic canned replies matched against
  the scenario script; the only backend tests need.
* :class:`LiveBackend` — HTTP chat-completion endpoint, temperature 0.
* :class:`ReplayBackend` — serves replies recorded in an event log, in
  order, so a recorded run replays without any model access.

Embeddings default to a deterministic feature-hashed bag of words so that
retrieval behaves identically on every run and platform.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GatewayError, ReplayError, ScriptMissError

log = logging.getLogger(__name__)

EMBEDDING_DIM = 256

TEMPLATE_IDS = (
    "importance",
    "reflection_questions",
    "reflection_insights",
    "day_plan",
    "decompose_hour",
    "decompose_minute",
    "should_react",
    "dialogue_first",
    "dialogue_next",
    "summary_core",
    "summary_occupation",
    "summary_feeling",
    "context_relationship",
    "location_choose",
    "object_state",
    "emoji",
    "interview_answer",
)


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    body: str

    def slots(self) -> list[str]:
        out, i = [], 0
        while True:
            i = self.body.find("{", i)
            if i < 0:
                return out
            j = self.body.find("}", i)
            out.append(self.body[i + 1 : j])
            i = j + 1

    def render(self, slots: dict[str, str]) -> str:
        missing = [s for s in self.slots() if s not in slots]
        if missing:
            raise GatewayError(
                f"template '{self.id}' missing slots: {', '.join(missing)}"
            )
        text = self.body
        for name in self.slots():
            text = text.replace("{" + name + "}", str(slots[name]))
        return text


TEMPLATES: dict[str, PromptTemplate] = {
    t.id: t
    for t in [
        PromptTemplate(
            "importance",
            "On the scale of 1 to 10, where 1 is purely mundane (e.g., brushing "
            "teeth, making bed) and 10 is extremely poignant (e.g., a break up, "
            "college acceptance), rate the likely poignancy of the following "
            "piece of memory.\n"
            "Memory: {description}\n"
            "Rating: <fill in>",
        ),
        PromptTemplate(
            "reflection_questions",
            "{statements}\n"
            "Given only the information above, what are 3 most salient "
            "high-level questions we can answer about the subjects in the "
            "statements?",
        ),
        PromptTemplate(
            "reflection_insights",
            "Statements about {subject}\n"
            "{statements}\n"
            "What 5 high-level insights can you infer from the above "
            "statements? (example format: insight (because of 1, 5, 3))",
        ),
        PromptTemplate(
            "day_plan",
            "Name: {name} (age: {age})\n"
            "Innate traits: {traits}\n"
            "{summary}\n"
            "{prior_day}\n"
            "Today is {date}. Here is {first_name}'s plan today in broad "
            "strokes: 1)",
        ),
        PromptTemplate(
            "decompose_hour",
            "{summary}\n"
            "Today is {date}. {name} is planning to {activity} from {start} "
            "to {end}.\n"
            "Break this down into roughly hour-long chunks of actions.\n"
            "(example format: 1:00 pm: start by brainstorming some ideas)",
        ),
        PromptTemplate(
            "decompose_minute",
            "{summary}\n"
            "Today is {date}. {name} is planning to {activity} from {start} "
            "to {end}.\n"
            "Break this down into 5-15 minute chunks of actions.\n"
            "(example format: 4:00 pm: grab a light snack)",
        ),
        PromptTemplate(
            "should_react",
            "{summary}\n"
            "It is {datetime}.\n"
            "{name}'s status: {status}.\n"
            "Observation: {observation}\n"
            "Summary of relevant context from {name}'s memory: {context}\n"
            "Should {name} react to the observation, and if so, what would be "
            "an appropriate reaction?",
        ),
        PromptTemplate(
            "dialogue_first",
            "{summary}\n"
            "It is {datetime}.\n"
            "{name}'s status: {status}.\n"
            "Observation: {observation}\n"
            "Summary of relevant context from {name}'s memory: {context}\n"
            "{intent}. What would {name} say to {other}?",
        ),
        PromptTemplate(
            "dialogue_next",
            "{summary}\n"
            "It is {datetime}.\n"
            "{name}'s status: {status}.\n"
            "Observation: {observation}\n"
            "Summary of relevant context from {name}'s memory: {context}\n"
            "Here is the dialogue history:\n"
            "{history}\n"
            "How would {name} respond to {other}?",
        ),
        PromptTemplate(
            "summary_core",
            "How would one describe {name}'s core characteristics given the "
            "following statements?\n"
            "{statements}",
        ),
        PromptTemplate(
            "summary_occupation",
            "What is {name}'s current daily occupation given the following "
            "statements?\n"
            "{statements}",
        ),
        PromptTemplate(
            "summary_feeling",
            "How would one describe {name}'s feeling about their recent "
            "progress in life given the following statements?\n"
            "{statements}",
        ),
        PromptTemplate(
            "context_relationship",
            "Given the following statements about {name} and {entity}:\n"
            "{statements}\n"
            "What is {name}'s relationship with {entity}, and what is "
            "{entity} currently doing? Summarize in a short paragraph.",
        ),
        PromptTemplate(
            "location_choose",
            "{summary}\n"
            "{name} is currently in {current} that has {options}.\n"
            "{name} knows of the following areas: {known_areas}.\n"
            "* Prefer to stay in the current area if the activity can be "
            "done there.\n"
            "{name} is planning to {action}. Which area should {name} go to?",
        ),
        PromptTemplate(
            "object_state",
            "What happens to the state of the {object} when {actor} is "
            "{action}?\n"
            "Respond with the {object}'s new status in a few words.\n"
            "(example format: brewing coffee)",
        ),
        PromptTemplate(
            "emoji",
            "Translate the following action into one to three emojis.\n"
            "Action: {action}\n"
            "Emojis:",
        ),
        PromptTemplate(
            "interview_answer",
            "{summary}\n"
            "It is {datetime}.\n"
            "Summary of relevant context from {name}'s memory:\n"
            "{context}\n"
            'A person, speaking as {persona}, asks {name}: "{question}"\n'
            "How would {name} respond?",
        ),
    ]
}

assert tuple(TEMPLATES) == TEMPLATE_IDS


def slot_digest(slots: dict[str, str]) -> str:
    payload = json.dumps(
        {k: str(v) for k, v in sorted(slots.items())}, ensure_ascii=False
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class ModelExchange:
    template_id: str
    prompt: str
    reply: str
    backend: str
    latency: float
    slots_digest: str
    miss: bool = False  # backend failed; caller's declared fallback engaged


# --- deterministic embeddings -------------------------------------------

# function words carry no retrieval signal; without this filter, questions
# like "do you know of <name>?" rank chatty memories above naming ones
STOPWORDS = frozenset(
    "a an and are as at be but by did do does for from had has have he her "
    "hers him his i if in into is it its me my of on or our she so that the "
    "their them they this to up was we were what when which who will with "
    "would you your".split()
)


def _token_slot(token: str) -> tuple[int, int]:
    # blake2b rather than hash(): stable across processes and platforms
    h = int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")
    index = h % EMBEDDING_DIM
    sign = 1 if (h >> 62) & 1 else -1
    return index, sign


def hashed_embedding(text: str, dim: int = EMBEDDING_DIM) -> np.ndarray:
    """Feature-hashed bag-of-words embedding, L2-normalized.

    Lowercased word tokens (minus function words) are signed-hashed into a
    fixed-dimension vector, so texts sharing more content words land closer
    in cosine space.
    """
    if not text:
        raise GatewayError("cannot embed empty text")
    vec = np.zeros(dim, dtype=np.float64)
    raw = [t for t in "".join(c if c.isalnum() else " " for c in text.lower()).split() if t]
    tokens = [t for t in raw if t not in STOPWORDS] or raw
    if not tokens:
        raise GatewayError("cannot embed text with no word tokens")
    for token in tokens:
        index, sign = _token_slot(token)
        vec[index % dim] += sign
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        # all signed counts cancelled; fall back to an unsigned count vector
        for token in tokens:
            index, _ = _token_slot(token)
            vec[index % dim] += 1.0
        norm = float(np.linalg.norm(vec))
    return vec / norm


# --- backends -------------------------------------------------------------


@dataclass(frozen=True)
class ScriptEntry:
    """One scripted reply: slot matchers plus the canned text.

    Matcher values are substring matches; ``{"equals": ...}`` forces an
    exact comparison. All listed slots must match. First matching entry in
    file order wins.
    """

    template_id: str
    match: dict[str, object]
    reply: str

    def matches(self, slots: dict[str, str]) -> bool:
        for slot_name, matcher in self.match.items():
            value = str(slots.get(slot_name, ""))
            if isinstance(matcher, dict):
                wanted = str(matcher.get("equals", ""))
                if value != wanted:
                    return False
            else:
                if str(matcher) not in value:
                    return False
        return True


class ScriptedBackend:
    """Pure-function backend: (template id, slots, script) -> reply."""

    name = "scripted"

    def __init__(self, entries: list[ScriptEntry]):
        self.entries = entries
        self._by_template: dict[str, list[ScriptEntry]] = {}
        for entry in entries:
            self._by_template.setdefault(entry.template_id, []).append(entry)

    @classmethod
    def from_records(cls, records: list[dict]) -> "ScriptedBackend":
        entries = [
            ScriptEntry(r["template"], dict(r.get("match", {})), r["reply"])
            for r in records
        ]
        return cls(entries)

    def complete(self, template_id: str, slots: dict[str, str], prompt: str) -> str:
        for entry in self._by_template.get(template_id, ()):
            if entry.matches(slots):
                return entry.reply
        raise ScriptMissError(template_id, slot_digest(slots), dict(slots))


class LiveBackend:
    """HTTP chat-completion backend (OpenAI-style JSON bodies).

    Credentials come from configuration; requests use temperature 0 and are
    retried twice with exponential backoff before the error surfaces to the
    caller's declared fallback.
    """

    name = "live"

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key: str,
        embedding_model: str | None = None,
        timeout: float = 30.0,
        retries: int = 2,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.embedding_model = embedding_model
        self.timeout = timeout
        self.retries = retries
        self._sleep = sleep

    def _post(self, path: str, body: dict) -> dict:
        data = json.dumps(body).encode("utf-8")
        request = urllib.request.Request(
            self.base_url + path,
            data=data,
            headers={
                "Content-Type": "application/json",
                "Authorization": f"Bearer {self.api_key}",
            },
            method="POST",
        )
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                    return json.loads(resp.read().decode("utf-8"))
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                last_error = exc
                if attempt < self.retries:
                    self._sleep(0.5 * 2**attempt)
        redacted = {**body}
        log.warning("live backend failed after retries: %s (body %s)", last_error, redacted)
        raise GatewayError(f"live backend unreachable: {last_error}")

    def complete(self, template_id: str, slots: dict[str, str], prompt: str) -> str:
        reply = self._post(
            "/chat/completions",
            {
                "model": self.model,
                "temperature": 0,
                "messages": [{"role": "user", "content": prompt}],
            },
        )
        try:
            return reply["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise GatewayError(f"malformed completion response: {exc}")

    def embed(self, text: str) -> np.ndarray:
        reply = self._post(
            "/embeddings",
            {"model": self.embedding_model or self.model, "input": text},
        )
        try:
            vec = np.asarray(reply["data"][0]["embedding"], dtype=np.float64)
        except (KeyError, IndexError, TypeError) as exc:
            raise GatewayError(f"malformed embedding response: {exc}")
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise GatewayError("embedding endpoint returned a zero vector")
        return vec / norm


class ReplayBackend:
    """Serves recorded replies in order; never contacts a model.

    The engine's call sequence is deterministic, so replaying the recorded
    replies one by one reproduces the run. A template mismatch means the
    log is truncated or from a different build, and is an error.
    """

    name = "replay"

    def __init__(self, recorded: list[tuple[str, str, str, bool]]):
        # entries are (template_id, slots_digest, reply, miss)
        self._recorded = recorded
        self._cursor = 0

    def complete(self, template_id: str, slots: dict[str, str], prompt: str) -> str:
        if self._cursor >= len(self._recorded):
            raise ReplayError(
                f"event log exhausted at exchange #{self._cursor} "
                f"(wanted template '{template_id}')"
            )
        rec_template, rec_digest, reply, miss = self._recorded[self._cursor]
        if rec_template != template_id:
            raise ReplayError(
                f"exchange #{self._cursor} diverges: log has '{rec_template}', "
                f"engine asked for '{template_id}'"
            )
        self._cursor += 1
        if miss:
            # the original backend failed here; reproduce the failure so the
            # caller takes the same fallback path
            raise GatewayError(f"recorded miss for template '{template_id}'")
        return reply

    @property
    def consumed(self) -> int:
        return self._cursor


class Gateway:
    """Single choke point for completions and embeddings.

    ``on_exchange`` is invoked for every completed exchange so the engine
    can append it to the event log before the tick commits.
    """

    def __init__(
        self,
        backend,
        embedding_dim: int = EMBEDDING_DIM,
        deterministic_embeddings: bool = True,
        on_exchange: Callable[[ModelExchange], None] | None = None,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.backend = backend
        self.embedding_dim = embedding_dim
        self.deterministic_embeddings = deterministic_embeddings
        self.on_exchange = on_exchange
        self._clock = clock
        self._embed_cache: dict[str, np.ndarray] = {}

    def complete(self, template_id: str, slots: dict[str, str]) -> str:
        template = TEMPLATES.get(template_id)
        if template is None:
            raise GatewayError(f"unknown template '{template_id}'")
        prompt = template.render(slots)
        started = self._clock()
        failure: GatewayError | None = None
        try:
            reply = self.backend.complete(template_id, slots, prompt)
        except GatewayError as exc:
            # failures are logged too, so replay reproduces fallback paths
            reply, failure = "", exc
        exchange = ModelExchange(
            template_id=template_id,
            prompt=prompt,
            reply=reply,
            backend=self.backend.name,
            latency=self._clock() - started,
            slots_digest=slot_digest(slots),
            miss=failure is not None,
        )
        if self.on_exchange is not None:
            self.on_exchange(exchange)
        if failure is not None:
            raise failure
        return reply

    def embed(self, text: str) -> np.ndarray:
        cached = self._embed_cache.get(text)
        if cached is not None:
            return cached
        if self.deterministic_embeddings or not hasattr(self.backend, "embed"):
            vec = hashed_embedding(text, self.embedding_dim)
        else:
            try:
                vec = self.backend.embed(text)
            except GatewayError as exc:
                log.warning("live embedding failed, using deterministic fallback: %s", exc)
                vec = hashed_embedding(text, self.embedding_dim)
        self._embed_cache[text] = vec
        return vec


def scripted_gateway(
    records: list[dict], on_exchange: Callable[[ModelExchange], None] | None = None
) -> Gateway:
    return Gateway(ScriptedBackend.from_records(records), on_exchange=on_exchange)
