"""Exception types shared across the engine."""

from __future__ import annotations


class TownsimError(Exception):
    """Base class for engine errors."""


class GatewayError(TownsimError):
    """The model gateway could not produce a reply."""


class ScriptMissError(GatewayError):
    """The scripted backend has no entry matching a request.

    Scripted scenarios are expected to be exhaustive; a miss is a scenario
    authoring bug, so the error names the template and a digest of the slots.
    """

    def __init__(self, template_id: str, slot_digest: str, slots: dict[str, str]):
        self.template_id = template_id
        self.slot_digest = slot_digest
        self.slots = slots
        super().__init__(
            f"no scripted reply for template '{template_id}' (slots {slot_digest})"
        )


class EmbeddingDimensionError(TownsimError):
    """Vectors of mismatched dimension reached a similarity computation."""


class UnreachableTileError(TownsimError):
    """Pathfinding target cannot be reached from the start tile."""


class ScenarioError(TownsimError):
    """A scenario file failed validation."""


class CommandError(TownsimError):
    """A user command was malformed or referenced an unknown target."""


class ReplayError(TownsimError):
    """An event log cannot be replayed (truncated or divergent)."""
