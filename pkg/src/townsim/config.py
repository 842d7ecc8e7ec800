"""Run configuration: defaults, overrides, and validation.

Precedence is CLI flags > scenario config block > defaults. The effective
configuration is echoed into the event log header so every recorded run is
self-describing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields


@dataclass
class RunConfig:
    scenario: str = ""
    seed: int = 42
    ticks: int = 2880
    gateway_mode: str = "scripted"        # scripted | live
    record_path: str | None = None
    pacing: str = "unpaced"               # unpaced | real
    tick_minutes: int = 1
    # retrieval / reflection parameters (defaults follow the architecture)
    decay: float = 0.995
    alpha_recency: float = 1.0
    alpha_importance: float = 1.0
    alpha_relevance: float = 1.0
    reflection_threshold: int = 150
    vision_radius: int = 4
    retrieval_budget: int = 1200
    plan_lookahead: int = 120
    summary_refresh: int = 120
    dialogue_cap: int = 8
    reaction_rate_limit: int = 10
    dialogue_cooldown: int = 120
    # live backend
    live_base_url: str = ""
    live_model: str = ""
    live_embedding_model: str = ""
    api_key_env: str = "TOWNSIM_API_KEY"

    def api_key(self) -> str:
        return os.environ.get(self.api_key_env, "")

    def effective(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "api_key_env":
                continue  # never echo credential plumbing into logs
            out[f.name] = getattr(self, f.name)
        return out

    def with_overrides(self, overrides: dict) -> "RunConfig":
        known = {f.name for f in fields(self)}
        merged = dict(self.__dict__)
        for key, value in overrides.items():
            if key in known and value is not None:
                merged[key] = value
        return RunConfig(**merged)


_RANGE_RULES = [
    ("decay", lambda v: 0.0 < v <= 1.0, "decay must be in (0,1]"),
    ("alpha_recency", lambda v: v >= 0, "alpha_recency must be >= 0"),
    ("alpha_importance", lambda v: v >= 0, "alpha_importance must be >= 0"),
    ("alpha_relevance", lambda v: v >= 0, "alpha_relevance must be >= 0"),
    ("reflection_threshold", lambda v: v >= 0, "reflection_threshold must be >= 0"),
    ("vision_radius", lambda v: v >= 1, "vision_radius must be >= 1"),
    ("retrieval_budget", lambda v: v > 0, "retrieval_budget must be > 0"),
    ("plan_lookahead", lambda v: v >= 15, "plan_lookahead must be >= 15 minutes"),
    ("summary_refresh", lambda v: v > 0, "summary_refresh must be > 0"),
    ("dialogue_cap", lambda v: v >= 1, "dialogue_cap must be >= 1"),
    ("reaction_rate_limit", lambda v: v >= 1, "reaction_rate_limit must be >= 1"),
    ("dialogue_cooldown", lambda v: v >= 0, "dialogue_cooldown must be >= 0"),
    ("ticks", lambda v: v >= 0, "ticks must be >= 0"),
    ("tick_minutes", lambda v: v >= 1, "tick_minutes must be >= 1"),
]


def validate(config: RunConfig) -> list[str]:
    """Diagnostics for every violated constraint; an empty list means a run
    cannot fail on configuration."""
    diagnostics = []
    for name, rule, message in _RANGE_RULES:
        if not rule(getattr(config, name)):
            diagnostics.append(f"{name}: {message} (got {getattr(config, name)!r})")
    if config.gateway_mode not in ("scripted", "live"):
        diagnostics.append(
            f"gateway_mode: must be 'scripted' or 'live' (got {config.gateway_mode!r})")
    if config.pacing not in ("unpaced", "real"):
        diagnostics.append(f"pacing: must be 'unpaced' or 'real' (got {config.pacing!r})")
    if config.gateway_mode == "live":
        if not config.live_base_url:
            diagnostics.append("live_base_url: required for the live gateway")
        if not config.live_model:
            diagnostics.append("live_model: required for the live gateway")
        if not config.api_key():
            diagnostics.append(
                f"api key: environment variable {config.api_key_env} is not set")
    return diagnostics
