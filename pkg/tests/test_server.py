"""Wire protocol tests: snapshot/delta streaming and command handling."""

import base64
import json
import os
import socket
import struct
import threading
import time

import pytest

from townsim.config import RunConfig
from townsim.scenario import load_scenario_dict
from townsim.server import SandboxServer, make_http_handler

from http.server import ThreadingHTTPServer

from smalltown import scenario_dict


class WsClient:
    """Just enough RFC 6455 to talk to the sandbox server."""

    def __init__(self, host, port, timeout=10.0):
        self.sock = socket.create_connection((host, port), timeout=timeout)
        key = base64.b64encode(os.urandom(16)).decode()
        request = (
            f"GET /ws HTTP/1.1\r\nHost: {host}:{port}\r\n"
            "Upgrade: websocket\r\nConnection: Upgrade\r\n"
            f"Sec-WebSocket-Key: {key}\r\nSec-WebSocket-Version: 13\r\n\r\n"
        )
        self.sock.sendall(request.encode())
        response = b""
        while b"\r\n\r\n" not in response:
            response += self.sock.recv(4096)
        head, _, rest = response.partition(b"\r\n\r\n")
        assert b"101" in head.split(b"\r\n")[0]
        self._buffer = rest  # frames may coalesce with the handshake bytes

    def send(self, message: dict):
        data = (json.dumps(message) + "\n").encode()
        mask = os.urandom(4)
        length = len(data)
        if length < 126:
            header = struct.pack("!BB", 0x81, 0x80 | length)
        else:
            header = struct.pack("!BBH", 0x81, 0x80 | 126, length)
        masked = bytes(b ^ mask[i % 4] for i, b in enumerate(data))
        self.sock.sendall(header + mask + masked)

    def _read_exact(self, count):
        while len(self._buffer) < count:
            chunk = self.sock.recv(4096)
            if not chunk:
                raise ConnectionError("closed")
            self._buffer += chunk
        out, self._buffer = self._buffer[:count], self._buffer[count:]
        return out

    def recv(self) -> dict:
        head = self._read_exact(2)
        length = head[1] & 0x7F
        if length == 126:
            length = struct.unpack("!H", self._read_exact(2))[0]
        elif length == 127:
            length = struct.unpack("!Q", self._read_exact(8))[0]
        payload = self._read_exact(length)
        return json.loads(payload.decode())

    def recv_until(self, kind: str, limit: int = 200) -> dict:
        for _ in range(limit):
            message = self.recv()
            if message.get("kind") == kind:
                return message
        raise AssertionError(f"no {kind} message within {limit} frames")

    def close(self):
        self.sock.close()


@pytest.fixture
def server():
    scenario = load_scenario_dict(scenario_dict())
    sandbox = SandboxServer(scenario, RunConfig(seed=42, ticks=4000),
                            tick_seconds=0.0)
    httpd = ThreadingHTTPServer(("127.0.0.1", 0), make_http_handler(sandbox, None))
    threading.Thread(target=httpd.serve_forever, daemon=True).start()
    loop = threading.Thread(target=sandbox.run_loop, daemon=True)
    yield sandbox, httpd.server_port, loop
    sandbox.stopped.set()
    httpd.shutdown()


def test_snapshot_on_connect(server):
    sandbox, port, _loop = server
    client = WsClient("127.0.0.1", port)
    snapshot = client.recv()
    assert snapshot["kind"] == "state_snapshot"
    assert len(snapshot["agents"]) == 3
    assert all("emoji" in a and "tile" in a for a in snapshot["agents"])
    assert snapshot["grid"]
    client.close()


def test_delta_stream_and_interview_roundtrip(server):
    sandbox, port, loop = server
    client = WsClient("127.0.0.1", port)
    client.recv()  # snapshot
    loop.start()
    delta = client.recv_until("state_delta")
    assert delta["tick"] >= 1
    client.send({"kind": "command", "cmd_id": "q1",
                 "command": {"kind": "interview", "target": "Ann Porter",
                             "payload": "Do you know of Ben Reyes?",
                             "persona": "reporter"}})
    ack = client.recv_until("command_ack")
    assert ack["cmd_id"] == "q1"
    assert ack["result"]["answer"] == "Yes, I know of Ben Reyes."
    client.close()


def test_queued_command_applies_at_tick_boundary(server):
    sandbox, port, loop = server
    client = WsClient("127.0.0.1", port)
    client.recv()
    client.send({"kind": "command", "cmd_id": "r1",
                 "command": {"kind": "object_rewrite", "target": "",
                             "payload": "<Ann's house: bedroom: stove> is burning"}})
    ack = client.recv_until("command_ack")
    assert ack["status"] == "queued"
    loop.start()
    deadline = time.time() + 10
    while time.time() < deadline:
        if sandbox.sim.tree.resolve("Ann's house: bedroom: stove").status == "burning":
            break
        time.sleep(0.01)
    assert sandbox.sim.tree.resolve("Ann's house: bedroom: stove").status == "burning"
    client.close()


def test_malformed_command_gets_error(server):
    sandbox, port, _loop = server
    client = WsClient("127.0.0.1", port)
    client.recv()
    client.send({"kind": "command", "cmd_id": "bad",
                 "command": {"kind": "object_rewrite", "target": "",
                             "payload": "not the rewrite syntax"}})
    error = client.recv_until("error")
    assert error["cmd_id"] == "bad"
    assert "object_rewrite" in error["message"]
    client.close()


def test_pause_resume(server):
    sandbox, port, loop = server
    client = WsClient("127.0.0.1", port)
    client.recv()
    client.send({"kind": "command", "cmd_id": "p",
                 "command": {"kind": "pause"}})
    ack = client.recv_until("command_ack")
    assert ack["result"]["paused"] is True
    loop.start()
    time.sleep(0.2)
    tick = sandbox.sim.tick
    time.sleep(0.2)
    assert sandbox.sim.tick == tick  # paused loop does not advance
    client.send({"kind": "command", "cmd_id": "r",
                 "command": {"kind": "resume"}})
    client.recv_until("command_ack")
    deadline = time.time() + 5
    while time.time() < deadline and sandbox.sim.tick == tick:
        time.sleep(0.01)
    assert sandbox.sim.tick > tick
    client.close()
