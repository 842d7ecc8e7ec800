"""Gateway, scripted backend, embeddings, and live-backend tests."""

import hashlib
import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np
import pytest

from townsim.errors import GatewayError, ReplayError, ScriptMissError
from townsim.gateway import (
    EMBEDDING_DIM,
    TEMPLATES,
    Gateway,
    LiveBackend,
    ModelExchange,
    ReplayBackend,
    ScriptedBackend,
    hashed_embedding,
    slot_digest,
)

from conftest import make_gateway


# --- templates -------------------------------------------------------------


def test_all_templates_registered():
    assert len(TEMPLATES) == 17
    assert "importance" in TEMPLATES and "interview_answer" in TEMPLATES


def test_importance_template_text():
    prompt = TEMPLATES["importance"].render({"description": "cleaning up the room"})
    assert prompt.startswith("On the scale of 1 to 10")
    assert "rate the likely poignancy" in prompt
    assert "Memory: cleaning up the room" in prompt


def test_template_missing_slot_raises():
    with pytest.raises(GatewayError) as err:
        TEMPLATES["importance"].render({})
    assert "description" in str(err.value)


def test_reaction_template_form():
    prompt = TEMPLATES["should_react"].render({
        "summary": "[Agent's Summary Description]",
        "datetime": "February 13, 2023, 4:56 pm",
        "name": "John",
        "status": "John is back home early from work",
        "observation": "John saw Eddy taking a short walk around his workplace",
        "context": "Eddy Lin is John's Lin's son.",
    })
    assert "Should John react to the observation" in prompt
    assert "It is February 13, 2023, 4:56 pm." in prompt


def test_location_template_has_stay_hint():
    prompt = TEMPLATES["location_choose"].render({
        "summary": "s", "name": "Eddy Lin", "current": "bedroom",
        "options": "kitchen, garden", "known_areas": "The Lin family's house",
        "action": "take a short walk",
    })
    assert "* Prefer to stay in the current area" in prompt
    assert "Which area should Eddy Lin go to?" in prompt


# --- scripted backend ----------------------------------------------------------


def test_first_match_wins_in_file_order():
    gw = make_gateway([
        ("emoji", {"action": "writing"}, "📓🖊"),
        ("emoji", {}, "💭"),
    ])
    assert gw.complete("emoji", {"action": "writing in her journal"}) == "📓🖊"
    assert gw.complete("emoji", {"action": "daydreaming"}) == "💭"


def test_equals_matcher_is_exact():
    gw = make_gateway([
        ("emoji", {"action": {"equals": "napping"}}, "😴"),
        ("emoji", {}, "💭"),
    ])
    assert gw.complete("emoji", {"action": "napping"}) == "😴"
    assert gw.complete("emoji", {"action": "napping hard"}) == "💭"


def test_scripted_miss_names_template_and_digest():
    backend = ScriptedBackend([])
    with pytest.raises(ScriptMissError) as err:
        backend.complete("emoji", {"action": "x"}, "prompt")
    assert err.value.template_id == "emoji"
    assert err.value.slot_digest == slot_digest({"action": "x"})


def test_scripted_determinism_pure_function():
    gw = make_gateway([("emoji", {}, "💭")])
    slots = {"action": "whatever"}
    assert gw.complete("emoji", slots) == gw.complete("emoji", slots)


def test_exchange_hook_sees_every_call():
    seen: list[ModelExchange] = []
    gw = make_gateway([("emoji", {}, "💭")], on_exchange=seen.append)
    gw.complete("emoji", {"action": "one"})
    gw.complete("emoji", {"action": "one"})
    assert len(seen) == 2  # identical requests logged separately
    assert seen[0].backend == "scripted"
    assert seen[0].template_id == "emoji"


# --- embeddings ------------------------------------------------------------------


def token_overlap_cosine(a: str, b: str) -> float:
    """Oracle: cosine from token multisets, assuming no hash collisions."""
    ta = a.lower().split()
    tb = b.lower().split()
    common = 0
    for t in set(ta) | set(tb):
        common += ta.count(t) * tb.count(t)
    return common / math.sqrt(len(ta) * len(tb))


def test_embedding_deterministic():
    a = hashed_embedding("the same text twice")
    b = hashed_embedding("the same text twice")
    assert np.array_equal(a, b)


def test_embedding_unit_norm():
    for text in ("one", "a few more words here", "chemistry test"):
        assert abs(np.linalg.norm(hashed_embedding(text)) - 1.0) < 1e-6


def test_embedding_dimension():
    assert hashed_embedding("hello world").shape == (EMBEDDING_DIM,)


def test_embedding_similarity_tracks_shared_words():
    # derived with the token-overlap oracle: cos(test, homework-variant)
    # = 1/2, cos(test, cereal) = 0; hashing may add small collision noise
    query = "chemistry test"
    related = "chemistry homework"
    unrelated = "breakfast cereal"
    cos_related = float(hashed_embedding(query) @ hashed_embedding(related))
    cos_unrelated = float(hashed_embedding(query) @ hashed_embedding(unrelated))
    assert cos_unrelated < cos_related
    assert abs(cos_related - token_overlap_cosine(query, related)) < 0.02
    assert abs(cos_unrelated - token_overlap_cosine(query, unrelated)) < 0.02


def test_embedding_rejects_empty():
    with pytest.raises(GatewayError):
        hashed_embedding("")


def test_gateway_embed_cache():
    gw = make_gateway([])
    a = gw.embed("some text")
    b = gw.embed("some text")
    assert a is b


# --- replay backend ------------------------------------------------------------


def test_replay_serves_recorded_replies_in_order():
    backend = ReplayBackend([
        ("importance", "d1", "5", False),
        ("emoji", "d2", "🙂", False),
    ])
    gw = Gateway(backend)
    assert gw.complete("importance", {"description": "x"}) == "5"
    assert gw.complete("emoji", {"action": "y"}) == "🙂"
    assert backend.consumed == 2


def test_replay_divergence_raises():
    gw = Gateway(ReplayBackend([("emoji", "d", "🙂", False)]))
    with pytest.raises(ReplayError):
        gw.complete("importance", {"description": "x"})


def test_replay_reproduces_recorded_misses():
    gw = Gateway(ReplayBackend([("emoji", "d", "", True)]))
    with pytest.raises(GatewayError):
        gw.complete("emoji", {"action": "x"})


def test_replay_exhaustion_raises():
    gw = Gateway(ReplayBackend([]))
    with pytest.raises(ReplayError):
        gw.complete("emoji", {"action": "x"})


# --- live backend (against a local mock server) -----------------------------------


class _MockModelHandler(BaseHTTPRequestHandler):
    failures_left = 0

    def do_POST(self):
        cls = type(self)
        if cls.failures_left > 0:
            cls.failures_left -= 1
            self.send_error(503)
            return
        length = int(self.headers["Content-Length"])
        body = json.loads(self.rfile.read(length))
        if self.path.endswith("/chat/completions"):
            assert body["temperature"] == 0
            payload = {"choices": [{"message": {"content": "mock reply"}}]}
        else:
            payload = {"data": [{"embedding": [1.0, 2.0, 2.0]}]}
        data = json.dumps(payload).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture
def mock_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _MockModelHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}/v1"
    server.shutdown()


def test_live_backend_completion(mock_server):
    backend = LiveBackend(mock_server, "test-model", "secret-key", sleep=lambda s: None)
    gw = Gateway(backend, deterministic_embeddings=True)
    assert gw.complete("emoji", {"action": "x"}) == "mock reply"


def test_live_backend_retries_then_succeeds(mock_server):
    _MockModelHandler.failures_left = 2
    backend = LiveBackend(mock_server, "m", "k", sleep=lambda s: None)
    assert backend.complete("emoji", {}, "prompt") == "mock reply"


def test_live_backend_fails_after_retries(mock_server):
    _MockModelHandler.failures_left = 10
    backend = LiveBackend(mock_server, "m", "k", sleep=lambda s: None)
    with pytest.raises(GatewayError):
        backend.complete("emoji", {}, "prompt")
    _MockModelHandler.failures_left = 0


def test_live_embedding_normalized(mock_server):
    backend = LiveBackend(mock_server, "m", "k", sleep=lambda s: None)
    vec = backend.embed("hello")
    assert abs(float(np.linalg.norm(vec)) - 1.0) < 1e-9
    assert np.allclose(vec, np.array([1.0, 2.0, 2.0]) / 3.0)


def test_live_embedding_failure_falls_back_to_deterministic(mock_server):
    _MockModelHandler.failures_left = 10
    backend = LiveBackend(mock_server, "m", "k", sleep=lambda s: None)
    gw = Gateway(backend, deterministic_embeddings=False)
    vec = gw.embed("hello world")
    assert np.array_equal(vec, hashed_embedding("hello world"))
    _MockModelHandler.failures_left = 0
