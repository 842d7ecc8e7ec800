import numpy as np
import pytest

from townsim.gateway import Gateway, ScriptedBackend


def make_gateway(entries, **kwargs):
    """Gateway over an inline script; entries are (template, match, reply)."""
    records = [
        {"template": t, "match": m, "reply": r} for t, m, r in entries
    ]
    return Gateway(ScriptedBackend.from_records(records), **kwargs)


BASELINE_SCRIPT = [
    ("importance", {}, "3"),
    ("reflection_questions", {}, "1. What is this agent focused on?\n"
                                 "2. Who does this agent spend time with?\n"
                                 "3. What does this agent care about?"),
    ("reflection_insights", {}, "This agent keeps a steady routine (because of 1, 2)"),
    ("summary_core", {}, "A steady, reliable person."),
    ("summary_occupation", {}, "Goes about a daily routine."),
    ("summary_feeling", {}, "Feels content with recent progress."),
    ("context_relationship", {}, "They know each other from around town."),
    ("should_react", {}, "No."),
    ("emoji", {}, "💭"),
]


@pytest.fixture
def baseline_gateway():
    return make_gateway(BASELINE_SCRIPT)


def unit_vector(values) -> np.ndarray:
    vec = np.asarray(values, dtype=np.float64)
    return vec / np.linalg.norm(vec)
