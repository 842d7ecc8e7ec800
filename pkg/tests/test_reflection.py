"""Reflection trigger, question generation, and insight synthesis tests."""

import pytest

from townsim.memory import MemoryStream
from townsim.reflection import (
    Insight,
    ReflectionTrigger,
    citation_closure_kinds,
    parse_insights,
    parse_questions,
    reflection_due,
    run_reflection,
    salient_questions,
    synthesize_insights,
)

from conftest import make_gateway

KLAUS_RECORDS = [
    "Klaus Mueller is reading a book on gentrification",
    "Klaus Mueller is conversing with a librarian about his research project",
    "desk at the library is currently unoccupied",
    "Klaus Mueller is writing a research paper",
    "Klaus Mueller enjoys reading a book on gentrification",
    "Klaus Mueller is conversing with Ayesha Khan about exercising",
]

KLAUS_SCRIPT = [
    ("importance", {}, "4"),
    (
        "reflection_questions",
        {"statements": "gentrification"},
        "1. What topic is Klaus Mueller passionate about?\n"
        "2. What is the relationship between Klaus Mueller and Maria Lopez?\n"
        "3. What is Klaus Mueller working toward?",
    ),
    (
        "reflection_insights",
        {"statements": "gentrification"},
        "Klaus Mueller is dedicated to his research on gentrification "
        "(because of 1, 2, 3, 4)",
    ),
    ("reflection_insights", {}, "no insights here"),
]


def klaus_stream(gateway):
    stream = MemoryStream("Klaus Mueller")
    for i, text in enumerate(KLAUS_RECORDS):
        stream.record("observation", text, now=10 * i, gateway=gateway)
    return stream


# --- trigger -----------------------------------------------------------------


def test_trigger_boundary_is_strict():
    trigger = ReflectionTrigger(threshold=150)
    stream = MemoryStream("a")
    stream.importance_accumulator = 150
    assert reflection_due(trigger, stream) is False
    stream.importance_accumulator = 151
    assert reflection_due(trigger, stream) is True


def test_trigger_fresh_agent_not_due():
    assert reflection_due(ReflectionTrigger(), MemoryStream("a")) is False


# --- questions -----------------------------------------------------------------


def test_salient_questions_scripted_example():
    gw = make_gateway(KLAUS_SCRIPT)
    stream = klaus_stream(gw)
    questions = salient_questions(stream, now=100, gateway=gw)
    assert questions[0] == "What topic is Klaus Mueller passionate about?"
    assert len(questions) == 3


def test_salient_questions_small_stream_sends_all_records():
    seen_statements = []

    def spy(exchange):
        if exchange.template_id == "reflection_questions":
            seen_statements.append(exchange.prompt)

    gw = make_gateway(KLAUS_SCRIPT, on_exchange=spy)
    stream = klaus_stream(gw)
    salient_questions(stream, now=100, gateway=gw)
    prompt = seen_statements[0]
    for record in KLAUS_RECORDS:
        assert record in prompt


def test_salient_questions_keeps_first_three_of_five():
    gw = make_gateway([
        ("importance", {}, "3"),
        ("reflection_questions", {},
         "1. One?\n2. Two?\n3. Three?\n4. Four?\n5. Five?"),
    ])
    stream = MemoryStream("a")
    stream.record("observation", "something happened", 0, gw)
    assert salient_questions(stream, 10, gw) == ["One?", "Two?", "Three?"]


def test_salient_questions_empty_stream_rejected(baseline_gateway):
    with pytest.raises(ValueError):
        salient_questions(MemoryStream("a"), 0, baseline_gateway)


def test_parse_questions_skips_non_questions():
    parsed = parse_questions("Here are some:\n1. A real question?\nnot a question")
    assert parsed == ["A real question?"]


# --- insights -------------------------------------------------------------------


def test_parse_insights_maps_indices_to_ids():
    ids = [10, 20, 30, 80, 150]
    insights = parse_insights(
        "Klaus Mueller is dedicated to his research on gentrification "
        "(because of 1, 2, 4, 5)",
        ids,
    )
    assert insights == [
        Insight("Klaus Mueller is dedicated to his research on gentrification",
                (10, 20, 80, 150))
    ]


def test_parse_insights_drops_out_of_range_citations():
    insights = parse_insights("something insightful (because of 1, 999)", [42])
    assert insights == [Insight("something insightful", (42,))]


def test_parse_insights_discards_insight_with_no_valid_citations():
    assert parse_insights("ungrounded claim (because of 999)", [42]) == []
    assert parse_insights("no citation syntax at all", [42]) == []


def test_synthesize_insights_klaus():
    gw = make_gateway(KLAUS_SCRIPT)
    stream = klaus_stream(gw)
    insights = synthesize_insights(
        stream, "What topic is Klaus Mueller passionate about?", 100, gw)
    assert len(insights) == 1
    assert insights[0].statement == (
        "Klaus Mueller is dedicated to his research on gentrification")
    assert all(cited_id in range(len(KLAUS_RECORDS))
               for cited_id in insights[0].evidence)


def test_synthesize_insights_empty_retrieval_returns_empty(baseline_gateway):
    got = synthesize_insights(MemoryStream("a"), "anything?", 0, baseline_gateway)
    assert got == []


# --- run_reflection ---------------------------------------------------------------


def test_run_reflection_stores_cited_reflections_and_resets():
    gw = make_gateway(KLAUS_SCRIPT)
    stream = klaus_stream(gw)
    assert stream.importance_accumulator == 4 * len(KLAUS_RECORDS)
    stored = run_reflection(stream, now=200, gateway=gw)
    assert stream.importance_accumulator == 0
    assert stored, "expected at least one reflection"
    for reflection in stored:
        assert reflection.kind == "reflection"
        assert reflection.citations
        assert all(cited < reflection.id for cited in reflection.citations)
        assert citation_closure_kinds(stream, reflection.id) == {"observation"}


def test_run_reflection_zero_insights_resets_accumulator():
    gw = make_gateway([
        ("importance", {}, "4"),
        ("reflection_questions", {}, "1. A question?\n2. B?\n3. C?"),
        ("reflection_insights", {}, "nothing parseable"),
    ])
    stream = MemoryStream("a")
    stream.record("observation", "an event", 0, gw)
    before = len(stream)
    stored = run_reflection(stream, 10, gw)
    assert stored == []
    assert len(stream) == before
    assert stream.importance_accumulator == 0


def test_second_generation_reflection_cites_reflection():
    gw = make_gateway(KLAUS_SCRIPT)
    stream = klaus_stream(gw)
    first = run_reflection(stream, 200, gw)
    # later cycle may cite the earlier reflection; closure still bottoms out
    # at observations
    second = stream.record(
        "reflection", "Klaus Mueller's conclusions build on his research habits",
        300, gw, citations=(first[0].id,))
    assert citation_closure_kinds(stream, second.id) == {"observation"}


def test_trigger_frequency_scripted_day():
    """A day summing to ~400 importance fires reflection 2-3 times."""
    gw = make_gateway([
        ("importance", {}, "5"),
        ("reflection_questions", {}, "1. Q?\n2. R?\n3. S?"),
        ("reflection_insights", {}, "a steady pattern (because of 1)"),
    ])
    stream = MemoryStream("a")
    trigger = ReflectionTrigger()
    reflections = 0
    # 80 observations x importance 5 = 400 importance over the day
    for i in range(80):
        stream.record("observation", f"event number {i}", now=i * 18, gateway=gw)
        if reflection_due(trigger, stream):
            run_reflection(stream, i * 18, gw)
            reflections += 1
    assert reflections in (2, 3)
