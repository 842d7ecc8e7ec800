"""Memory stream: append-only experience records with scored retrieval.

Each agent owns a :class:`MemoryStream` of natural-language
:class:`MemoryObject` records (observations, reflections, plans). Retrieval
ranks candidates by a weighted sum of recency (exponential decay per game
hour since last access), importance (a 1-10 poignancy score assigned at
creation), and relevance (cosine similarity to the query embedding), each
min-max scaled over the candidate set.
"""

from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import EmbeddingDimensionError, GatewayError
from .gametime import GameTime, hours_between

log = logging.getLogger(__name__)

MEMORY_KINDS = ("observation", "reflection", "plan")

DEFAULT_DECAY = 0.995
DEFAULT_BUDGET = 1200
DEFAULT_IMPORTANCE = 3
TOKENS_PER_WORD = 1.3


def token_estimate(text: str) -> int:
    """Approximate token count: whitespace word count times 1.3."""
    return math.ceil(len(text.split()) * TOKENS_PER_WORD)


@dataclass(eq=False)
class MemoryObject:
    """One natural-language record of an agent's experience.

    ``description``, ``created_at``, and ``kind`` never change after
    creation; ``last_accessed`` moves forward when retrieval returns the
    memory. ``citations`` is non-empty only for reflections and points at
    strictly earlier ids, which makes citation chains acyclic.
    """

    id: int
    kind: str
    description: str
    created_at: GameTime
    last_accessed: GameTime
    importance: int
    embedding: np.ndarray
    citations: tuple[int, ...] = ()
    importance_defaulted: bool = False

    def __post_init__(self):
        if self.kind not in MEMORY_KINDS:
            raise ValueError(f"unknown memory kind '{self.kind}'")
        if not (1 <= self.importance <= 10):
            raise ValueError(f"importance {self.importance} outside [1,10]")
        if self.last_accessed < self.created_at:
            raise ValueError("last_accessed precedes created_at")
        if any(cited >= self.id for cited in self.citations):
            raise ValueError("citations must reference earlier ids")
        norm = float(np.linalg.norm(self.embedding))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"embedding norm {norm} not unit length")

    def to_record(self) -> dict:
        # embedding intentionally omitted; recomputed from description on load
        return {
            "id": self.id,
            "kind": self.kind,
            "description": self.description,
            "created_at": self.created_at,
            "last_accessed": self.last_accessed,
            "importance": self.importance,
            "citations": list(self.citations),
            "importance_defaulted": self.importance_defaulted,
        }


@dataclass
class RetrievalConfig:
    decay: float = DEFAULT_DECAY
    alpha_recency: float = 1.0
    alpha_importance: float = 1.0
    alpha_relevance: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.decay <= 1.0):
            raise ValueError("decay must be in (0,1]")
        for name in ("alpha_recency", "alpha_importance", "alpha_relevance"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass
class RetrievalQuery:
    query_text: str
    query_embedding: np.ndarray
    now: GameTime
    budget: int = DEFAULT_BUDGET
    kind_filter: frozenset[str] | None = None

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")


def recency_score(now: GameTime, last_accessed: GameTime, decay: float) -> float:
    """decay ** (game hours since last access)."""
    if now < last_accessed:
        raise ValueError("now precedes last_accessed")
    return decay ** hours_between(last_accessed, now)


def relevance_score(query_embedding: np.ndarray, memory_embedding: np.ndarray) -> float:
    """Cosine similarity; equals the dot product under the unit-norm invariant."""
    if query_embedding.shape != memory_embedding.shape:
        raise EmbeddingDimensionError(
            f"query dim {query_embedding.shape} != memory dim {memory_embedding.shape}"
        )
    return float(np.dot(query_embedding, memory_embedding))


_INT_RE = re.compile(r"-?\d+")


def parse_importance_reply(reply: str) -> int | None:
    """First integer in the reply, clamped to [1,10]; None if unparseable."""
    m = _INT_RE.search(reply)
    if m is None:
        return None
    return max(1, min(10, int(m.group(0))))


def score_importance(gateway, description: str) -> tuple[int, bool]:
    """Poignancy score for a new memory via the importance prompt.

    Returns (score, defaulted). An unparseable reply is retried once; a
    second failure (or a gateway error) falls back to the mundane-leaning
    default of 3 with a logged warning.
    """
    for _ in range(2):
        try:
            reply = gateway.complete("importance", {"description": description})
        except GatewayError as exc:
            log.warning("importance scoring failed for %r: %s", description, exc)
            return DEFAULT_IMPORTANCE, True
        parsed = parse_importance_reply(reply)
        if parsed is not None:
            return parsed, False
    log.warning("unparseable importance reply for %r; defaulting to %d",
                description, DEFAULT_IMPORTANCE)
    return DEFAULT_IMPORTANCE, True


class MemoryStream:
    """Append-only, per-agent memory store with columnar score inputs.

    Descriptions and embeddings are kept both as :class:`MemoryObject`
    records (the API surface) and as parallel numpy columns so retrieval
    scoring over a few thousand memories stays a handful of vector ops.
    """

    def __init__(self, agent_id: str, embedding_dim: int | None = None):
        self.agent_id = agent_id
        self.memories: list[MemoryObject] = []
        self.importance_accumulator = 0
        self._dim = embedding_dim
        self._capacity = 0
        self._embeddings = np.zeros((0, 0))
        self._last_accessed = np.zeros(0, dtype=np.int64)
        self._importance = np.zeros(0, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.memories)

    def _grow(self, dim: int) -> None:
        new_capacity = max(64, self._capacity * 2)
        embeddings = np.zeros((new_capacity, dim))
        last_accessed = np.zeros(new_capacity, dtype=np.int64)
        importance = np.zeros(new_capacity, dtype=np.float64)
        n = len(self.memories)
        if n:
            embeddings[:n] = self._embeddings[:n]
            last_accessed[:n] = self._last_accessed[:n]
            importance[:n] = self._importance[:n]
        self._embeddings = embeddings
        self._last_accessed = last_accessed
        self._importance = importance
        self._capacity = new_capacity

    def append(self, memory: MemoryObject) -> MemoryObject:
        expected_id = self.memories[-1].id + 1 if self.memories else 0
        if memory.id != expected_id:
            raise ValueError(f"memory id {memory.id} breaks append order "
                             f"(expected {expected_id})")
        dim = memory.embedding.shape[0]
        if self._dim is None:
            self._dim = dim
        elif dim != self._dim:
            raise EmbeddingDimensionError(
                f"stream dimension {self._dim}, memory dimension {dim}")
        if len(self.memories) >= self._capacity:
            self._grow(self._dim)
        n = len(self.memories)
        self._embeddings[n] = memory.embedding
        self._last_accessed[n] = memory.last_accessed
        self._importance[n] = memory.importance
        self.memories.append(memory)
        return memory

    def record(
        self,
        kind: str,
        description: str,
        now: GameTime,
        gateway,
        citations: tuple[int, ...] = (),
    ) -> MemoryObject:
        """Score, embed, and append a new memory.

        Observations feed the reflection accumulator; reflections and plans
        are scored by the same poignancy prompt but do not.
        """
        if not description:
            raise ValueError("description must be non-empty")
        importance, defaulted = score_importance(gateway, description)
        memory = MemoryObject(
            id=self.memories[-1].id + 1 if self.memories else 0,
            kind=kind,
            description=description,
            created_at=now,
            last_accessed=now,
            importance=importance,
            embedding=gateway.embed(description),
            citations=tuple(citations),
            importance_defaulted=defaulted,
        )
        self.append(memory)
        if kind == "observation":
            self.importance_accumulator += importance
        return memory

    def touch(self, memory_id: int, now: GameTime) -> None:
        memory = self.memories[memory_id]
        if now >= memory.last_accessed:
            memory.last_accessed = now
            self._last_accessed[memory_id] = now

    def recent_descriptions(self, count: int) -> list[str]:
        return [m.description for m in self.memories[-count:]]

    def retrieve(
        self,
        query: RetrievalQuery,
        config: RetrievalConfig | None = None,
        update_access: bool = True,
    ) -> list[MemoryObject]:
        """Top-scoring memories for the query, within the token budget.

        Raw recency, importance, and relevance are min-max scaled to [0,1]
        over the candidate set (a degenerate component pins at 0.5), then
        combined with the configured weights. Output is sorted by falling
        score, ties going to the higher id, and cut at the first memory
        whose description would overflow the budget. Returned memories get
        their last access time refreshed unless ``update_access`` is off
        (interviews must not perturb the subject).
        """
        config = config or RetrievalConfig()
        n = len(self.memories)
        if n == 0:
            return []

        if query.kind_filter is None:
            candidates = np.arange(n)
        else:
            candidates = np.array(
                [i for i, m in enumerate(self.memories) if m.kind in query.kind_filter],
                dtype=np.int64,
            )
            if candidates.size == 0:
                return []

        hours = (query.now - self._last_accessed[candidates]) / 60.0
        recency = np.power(config.decay, hours)
        importance = self._importance[candidates]
        if self._embeddings.shape[1] != query.query_embedding.shape[0]:
            raise EmbeddingDimensionError(
                f"stream dimension {self._embeddings.shape[1]}, "
                f"query dimension {query.query_embedding.shape[0]}")
        relevance = self._embeddings[candidates] @ query.query_embedding

        score = (
            config.alpha_recency * _min_max(recency)
            + config.alpha_importance * _min_max(importance)
            + config.alpha_relevance * _min_max(relevance)
        )

        ids = candidates  # candidate index == memory id (append-only)
        order = np.lexsort((-ids, -score))
        ranked = candidates[order]

        out: list[MemoryObject] = []
        used = 0
        for index in ranked:
            memory = self.memories[index]
            cost = token_estimate(memory.description)
            if used + cost > query.budget:
                break
            used += cost
            out.append(memory)
        if update_access:
            for memory in out:
                self.touch(memory.id, query.now)
        return out

    # --- serialization ----------------------------------------------------

    def dump_jsonl(self) -> str:
        """Line-delimited JSON log, one memory per line, embeddings omitted."""
        lines = [
            json.dumps(m.to_record(), ensure_ascii=False, separators=(", ", ": "))
            for m in self.memories
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def load_jsonl(cls, agent_id: str, text: str, gateway) -> "MemoryStream":
        """Rebuild a stream from its log, re-embedding each description."""
        stream = cls(agent_id)
        for line in text.splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            stream.append(
                MemoryObject(
                    id=rec["id"],
                    kind=rec["kind"],
                    description=rec["description"],
                    created_at=rec["created_at"],
                    last_accessed=rec["last_accessed"],
                    importance=rec["importance"],
                    embedding=gateway.embed(rec["description"]),
                    citations=tuple(rec.get("citations", ())),
                    importance_defaulted=rec.get("importance_defaulted", False),
                )
            )
        return stream


def _min_max(values: np.ndarray) -> np.ndarray:
    low = float(values.min())
    high = float(values.max())
    if high - low <= 1e-12:
        return np.full(values.shape, 0.5)
    return (values - low) / (high - low)
