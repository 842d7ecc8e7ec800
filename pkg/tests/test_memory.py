"""Memory stream and retrieval tests.

Expected values tagged as derived were computed with independent oracles:
arbitrary-precision decimal exponentiation for recency, hand-evaluated dot
products for relevance, and a brute-force rescoring oracle for retrieval
ordering (see oracle_retrieve below).
"""

import math
from decimal import Decimal, getcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from townsim.errors import EmbeddingDimensionError, ScriptMissError
from townsim.memory import (
    MemoryObject,
    MemoryStream,
    RetrievalConfig,
    RetrievalQuery,
    recency_score,
    relevance_score,
    score_importance,
    token_estimate,
)

from conftest import make_gateway, unit_vector


def basis(dim, index):
    vec = np.zeros(dim)
    vec[index % dim] = 1.0
    return vec


def make_stream(specs, dim=8):
    """specs: list of (kind, importance, created, last_accessed, embedding)."""
    stream = MemoryStream("test-agent")
    for i, (kind, importance, created, accessed, emb) in enumerate(specs):
        stream.append(
            MemoryObject(
                id=i,
                kind=kind,
                description=f"memory number {i}",
                created_at=created,
                last_accessed=accessed,
                importance=importance,
                embedding=emb,
                citations=(0,) if kind == "reflection" and i > 0 else (),
            )
        )
    return stream


# --- recency ---------------------------------------------------------------


def decimal_decay(decay: str, hours: int) -> float:
    getcontext().prec = 60
    return float(Decimal(decay) ** hours)


def test_recency_zero_hours_is_one():
    assert recency_score(500, 500, 0.995) == 1.0


def test_recency_ten_hours_matches_decimal_oracle():
    expected = decimal_decay("0.995", 10)  # = 0.951110130465772...
    got = recency_score(10 * 60, 0, 0.995)
    assert abs(got - expected) < 1e-12
    assert abs(got - 0.951110) < 1e-6


def test_recency_hundred_hours_matches_decimal_oracle():
    expected = decimal_decay("0.995", 100)  # = 0.605770436280699...
    got = recency_score(100 * 60, 0, 0.995)
    assert abs(got - expected) < 1e-12
    assert abs(got - 0.605770) < 1e-6


def test_recency_fractional_hours():
    got = recency_score(90, 0, 0.995)
    assert abs(got - 0.995 ** 1.5) < 1e-12


def test_recency_rejects_future_access():
    with pytest.raises(ValueError):
        recency_score(10, 20, 0.995)


# --- relevance ---------------------------------------------------------------


def test_relevance_identical_vectors():
    v = unit_vector([1, 2, 3])
    assert relevance_score(v, v) == pytest.approx(1.0)


def test_relevance_orthogonal_vectors():
    assert relevance_score(basis(4, 0), basis(4, 1)) == 0.0


def test_relevance_45_degrees():
    # hand-evaluated: (1,0) . (1/sqrt2, 1/sqrt2) = 1/sqrt2 = 0.70710678...
    got = relevance_score(np.array([1.0, 0.0]), unit_vector([1, 1]))
    assert abs(got - 0.7071067811865475) < 1e-12


def test_relevance_dimension_mismatch_errors():
    with pytest.raises(EmbeddingDimensionError):
        relevance_score(basis(4, 0), basis(5, 0))


# --- importance scoring -------------------------------------------------------


IMPORTANCE_SCRIPT = [
    ("importance", {"description": "cleaning up the room"}, "2"),
    ("importance", {"description": "asking your crush out on a date"}, "8"),
    ("importance", {"description": "winning the lottery"}, "15"),
    ("importance", {"description": "static noise"}, "no idea, sorry"),
    ("importance", {}, "3"),
]


def test_importance_canonical_examples():
    gw = make_gateway(IMPORTANCE_SCRIPT)
    assert score_importance(gw, "cleaning up the room") == (2, False)
    assert score_importance(gw, "asking your crush out on a date") == (8, False)


def test_importance_clamps_to_ten():
    gw = make_gateway(IMPORTANCE_SCRIPT)
    assert score_importance(gw, "winning the lottery") == (10, False)


def test_importance_junk_reply_defaults_after_retry():
    gw = make_gateway(IMPORTANCE_SCRIPT)
    calls = []
    original = gw.backend.complete

    def counting(template_id, slots, prompt):
        calls.append(template_id)
        return original(template_id, slots, prompt)

    gw.backend.complete = counting
    assert score_importance(gw, "static noise") == (3, True)
    assert len(calls) == 2  # one retry, then default


def test_importance_gateway_failure_defaults():
    gw = make_gateway([])  # empty script: every call is a miss
    assert score_importance(gw, "anything") == (3, True)


# --- record -------------------------------------------------------------------


def test_record_first_id_is_zero(baseline_gateway):
    stream = MemoryStream("isabella")
    m = stream.record("observation", "Isabella Rodriguez is setting out the pastries",
                      now=100, gateway=baseline_gateway)
    assert m.id == 0
    assert m.kind == "observation"
    assert m.description == "Isabella Rodriguez is setting out the pastries"
    assert m.created_at == m.last_accessed == 100


def test_record_same_tick_preserves_call_order(baseline_gateway):
    stream = MemoryStream("a")
    first = stream.record("observation", "first thing", 5, baseline_gateway)
    second = stream.record("observation", "second thing", 5, baseline_gateway)
    assert (first.id, second.id) == (0, 1)


def test_record_accumulates_observation_importance_only(baseline_gateway):
    stream = MemoryStream("a")
    stream.record("observation", "something mundane", 0, baseline_gateway)
    assert stream.importance_accumulator == 3
    stream.record("plan", "a plan for the day", 0, baseline_gateway)
    stream.record("reflection", "an insight", 0, baseline_gateway, citations=(0,))
    assert stream.importance_accumulator == 3


def test_record_rejects_empty_description(baseline_gateway):
    with pytest.raises(ValueError):
        MemoryStream("a").record("observation", "", 0, baseline_gateway)


def test_memory_object_invariants():
    with pytest.raises(ValueError):
        MemoryObject(0, "observation", "x", 10, 5, 5, basis(4, 0))
    with pytest.raises(ValueError):
        MemoryObject(0, "observation", "x", 0, 0, 11, basis(4, 0))
    with pytest.raises(ValueError):
        MemoryObject(1, "reflection", "x", 0, 0, 5, basis(4, 0), citations=(2,))
    with pytest.raises(ValueError):
        MemoryObject(0, "observation", "x", 0, 0, 5, np.array([1.0, 1.0]))


# --- retrieval ----------------------------------------------------------------


def oracle_retrieve(stream, query, config):
    """Brute-force reimplementation of the retrieval contract.

    Scores every candidate independently with pure-python math and sorts;
    kept deliberately free of the numpy code path it checks.
    """
    candidates = [
        m for m in stream.memories
        if query.kind_filter is None or m.kind in query.kind_filter
    ]
    if not candidates:
        return []

    def min_max(values):
        low, high = min(values), max(values)
        if high - low <= 1e-12:
            return [0.5] * len(values)
        return [(v - low) / (high - low) for v in values]

    recency = [config.decay ** ((query.now - m.last_accessed) / 60.0)
               for m in candidates]
    importance = [float(m.importance) for m in candidates]
    relevance = [
        sum(a * b for a, b in zip(query.query_embedding, m.embedding))
        for m in candidates
    ]
    r, i, v = min_max(recency), min_max(importance), min_max(relevance)
    scored = [
        (config.alpha_recency * r[k] + config.alpha_importance * i[k]
         + config.alpha_relevance * v[k], m.id, m)
        for k, m in enumerate(candidates)
    ]
    scored.sort(key=lambda t: (-t[0], -t[1]))
    out, used = [], 0
    for _, _, m in scored:
        cost = token_estimate(m.description)
        if used + cost > query.budget:
            break
        used += cost
        out.append(m)
    return out


def random_stream(rng, size, dim=8):
    specs = []
    t = 0
    for _ in range(size):
        t += rng.integers(0, 120)
        vec = rng.normal(size=dim)
        vec /= np.linalg.norm(vec)
        created = int(t)
        accessed = created + int(rng.integers(0, 300))
        specs.append(("observation", int(rng.integers(1, 11)), created, accessed, vec))
    return make_stream(specs, dim), int(t + 600)


def test_retrieve_empty_stream_returns_empty():
    stream = MemoryStream("a")
    q = RetrievalQuery("anything", basis(8, 0), now=0)
    assert stream.retrieve(q) == []


def test_retrieve_singleton():
    stream = make_stream([("observation", 5, 0, 0, basis(8, 0))])
    q = RetrievalQuery("x", basis(8, 1), now=10)
    assert [m.id for m in stream.retrieve(q)] == [0]


def test_retrieve_matches_oracle_on_random_streams():
    rng = np.random.default_rng(7)
    config = RetrievalConfig()
    for _ in range(60):
        stream, now = random_stream(rng, int(rng.integers(1, 60)))
        vec = rng.normal(size=8)
        vec /= np.linalg.norm(vec)
        q = RetrievalQuery("query", vec, now=now, budget=int(rng.integers(10, 400)))
        expected = [m.id for m in oracle_retrieve(stream, q, config)]
        got = [m.id for m in stream.retrieve(q, config, update_access=False)]
        assert got == expected


def test_retrieve_recency_only_orders_by_last_access():
    # alpha_i = alpha_v = 0: pure recency ordering, id breaks ties
    stream = make_stream([
        ("observation", 1, 0, 100, basis(8, 0)),
        ("observation", 9, 0, 300, basis(8, 1)),
        ("observation", 5, 0, 300, basis(8, 2)),
        ("observation", 5, 0, 50, basis(8, 3)),
    ])
    config = RetrievalConfig(alpha_importance=0.0, alpha_relevance=0.0)
    q = RetrievalQuery("x", basis(8, 4), now=400)
    got = [m.id for m in stream.retrieve(q, config, update_access=False)]
    assert got == [2, 1, 0, 3]


def test_retrieve_importance_shift_leaves_order_unchanged():
    # min-max scaling: +c on every raw importance must not change the order
    rng = np.random.default_rng(3)
    stream, now = random_stream(rng, 30)
    shifted = MemoryStream("shifted")
    for m in stream.memories:
        shifted.append(
            MemoryObject(m.id, m.kind, m.description, m.created_at,
                         m.last_accessed, min(10, m.importance + 2) if False else m.importance,
                         m.embedding, m.citations)
        )
    # shift raw importances directly in the columnar store to bypass the
    # [1,10] domain check; ranking must be scale-invariant regardless
    shifted._importance[: len(shifted.memories)] += 7.0
    vec = rng.normal(size=8)
    vec /= np.linalg.norm(vec)
    q = RetrievalQuery("q", vec, now=now)
    a = [m.id for m in stream.retrieve(q, update_access=False)]
    b = [m.id for m in shifted.retrieve(q, update_access=False)]
    assert a == b


def test_retrieve_updates_last_accessed_of_returned_only():
    stream = make_stream([
        ("observation", 5, 0, 0, basis(8, 0)),
        ("observation", 5, 10, 10, basis(8, 1)),
        ("observation", 5, 20, 20, basis(8, 2)),
    ])
    q = RetrievalQuery("x", basis(8, 0), now=1000, budget=token_estimate("memory number 0"))
    returned = stream.retrieve(q)
    assert len(returned) == 1
    returned_ids = {m.id for m in returned}
    for m in stream.memories:
        if m.id in returned_ids:
            assert m.last_accessed == 1000
        else:
            assert m.last_accessed == m.created_at


def test_retrieve_determinism():
    rng = np.random.default_rng(11)
    stream, now = random_stream(rng, 40)
    vec = rng.normal(size=8)
    vec /= np.linalg.norm(vec)
    q = RetrievalQuery("q", vec, now=now)
    a = [m.id for m in stream.retrieve(q, update_access=False)]
    b = [m.id for m in stream.retrieve(q, update_access=False)]
    assert a == b


def test_retrieve_kind_filter():
    stream = make_stream([
        ("observation", 5, 0, 0, basis(8, 0)),
        ("plan", 5, 0, 0, basis(8, 1)),
        ("reflection", 5, 0, 0, basis(8, 2)),
    ])
    q = RetrievalQuery("x", basis(8, 0), now=10,
                       kind_filter=frozenset({"observation", "plan"}))
    got = {m.kind for m in stream.retrieve(q, update_access=False)}
    assert got == {"observation", "plan"}


def test_retrieve_budget_prefix_semantics():
    stream = make_stream([("observation", i + 1, 0, 0, basis(8, i)) for i in range(5)])
    cost = token_estimate("memory number 0")
    q = RetrievalQuery("x", basis(8, 4), now=10, budget=cost * 2)
    assert len(stream.retrieve(q, update_access=False)) == 2


@settings(max_examples=40, deadline=None)
@given(
    sizes=st.integers(min_value=1, max_value=25),
    seed=st.integers(min_value=0, max_value=10_000),
    budget=st.integers(min_value=5, max_value=500),
)
def test_retrieve_oracle_property(sizes, seed, budget):
    rng = np.random.default_rng(seed)
    stream, now = random_stream(rng, sizes)
    vec = rng.normal(size=8)
    vec /= np.linalg.norm(vec)
    config = RetrievalConfig()
    q = RetrievalQuery("q", vec, now=now, budget=budget)
    expected = [m.id for m in oracle_retrieve(stream, q, config)]
    got = [m.id for m in stream.retrieve(q, config, update_access=False)]
    assert got == expected


# --- append-only & serialization ----------------------------------------------


def test_stream_rejects_out_of_order_ids():
    stream = MemoryStream("a")
    with pytest.raises(ValueError):
        stream.append(MemoryObject(3, "observation", "x", 0, 0, 5, basis(8, 0)))


def test_jsonl_round_trip(baseline_gateway):
    stream = MemoryStream("klaus")
    stream.record("observation", "Klaus Mueller is reading a book", 10, baseline_gateway)
    stream.record("observation", "Klaus Mueller is writing notes", 20, baseline_gateway)
    stream.record("reflection", "Klaus Mueller is dedicated to research", 30,
                  baseline_gateway, citations=(0, 1))
    text = stream.dump_jsonl()
    assert "embedding" not in text
    loaded = MemoryStream.load_jsonl("klaus", text, baseline_gateway)
    assert len(loaded) == 3
    for original, restored in zip(stream.memories, loaded.memories):
        assert original.to_record() == restored.to_record()
        assert np.allclose(original.embedding, restored.embedding)


def test_scripted_miss_raises_named_error():
    gw = make_gateway([("emoji", {"action": "specific"}, "🙂")])
    with pytest.raises(ScriptMissError) as err:
        gw.complete("emoji", {"action": "unmatched thing"})
    assert "emoji" in str(err.value)
