"""Sandbox server: drives the simulation and speaks the UI wire protocol.

The protocol is newline-delimited JSON messages over a persistent
bidirectional socket; WebSocket text frames carry one message each so a
browser can connect natively. Message kinds: state_snapshot, state_delta,
event, command, command_ack, error. Commands are queued and applied at
tick boundaries; interviews answer immediately without advancing the
clock. The loop is authoritative and single-threaded; client connections
are served concurrently and fed from a per-client outbox.
"""

from __future__ import annotations

import base64
import hashlib
import json
import logging
import socket
import struct
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .config import RunConfig
from .engine import Simulation, encode_line
from .errors import CommandError
from .gametime import clock_label, date_label
from .scenario import Scenario

log = logging.getLogger(__name__)

_WS_MAGIC = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


def _accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + _WS_MAGIC).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def ws_encode_text(payload: str) -> bytes:
    """One unmasked server-to-client text frame."""
    data = payload.encode("utf-8")
    length = len(data)
    if length < 126:
        header = struct.pack("!BB", 0x81, length)
    elif length < 65536:
        header = struct.pack("!BBH", 0x81, 126, length)
    else:
        header = struct.pack("!BBQ", 0x81, 127, length)
    return header + data


def ws_read_frame(sock: socket.socket) -> tuple[int, bytes] | None:
    """Read one client frame; returns (opcode, payload) or None on close."""
    head = _read_exact(sock, 2)
    if head is None:
        return None
    opcode = head[0] & 0x0F
    masked = bool(head[1] & 0x80)
    length = head[1] & 0x7F
    if length == 126:
        ext = _read_exact(sock, 2)
        if ext is None:
            return None
        length = struct.unpack("!H", ext)[0]
    elif length == 127:
        ext = _read_exact(sock, 8)
        if ext is None:
            return None
        length = struct.unpack("!Q", ext)[0]
    mask = b"\x00" * 4
    if masked:
        mask_bytes = _read_exact(sock, 4)
        if mask_bytes is None:
            return None
        mask = mask_bytes
    payload = _read_exact(sock, length) if length else b""
    if payload is None:
        return None
    if masked:
        payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
    return opcode, payload


def _read_exact(sock: socket.socket, count: int) -> bytes | None:
    chunks = b""
    while len(chunks) < count:
        try:
            chunk = sock.recv(count - len(chunks))
        except OSError:
            return None
        if not chunk:
            return None
        chunks += chunk
    return chunks


class Client:
    def __init__(self, sock: socket.socket, address):
        self.sock = sock
        self.address = address
        self.lock = threading.Lock()
        self.open = True

    def send(self, message: dict) -> None:
        frame = ws_encode_text(encode_line(message) + "\n")
        with self.lock:
            if not self.open:
                return
            try:
                self.sock.sendall(frame)
            except OSError:
                self.open = False


class SandboxServer:
    """Owns the simulation loop and the connected UI clients."""

    def __init__(self, scenario: Scenario, config: RunConfig,
                 tick_seconds: float = 1.0, max_ticks: int | None = None):
        self.sim = Simulation(scenario, config)
        self.tick_seconds = tick_seconds
        self.max_ticks = max_ticks if max_ticks is not None else config.ticks
        self.clients: list[Client] = []
        self.clients_lock = threading.Lock()
        self.paused = False
        self.stopped = threading.Event()
        self._known_events = 0

    # --- state messages -----------------------------------------------

    def snapshot(self) -> dict:
        sim = self.sim
        objects = []
        for node in sim.tree.root.walk():
            if node.kind == "object" and node.footprint:
                tile = min(node.footprint)
                objects.append({"path": node.path(), "status": node.status or "idle",
                                "tile": [tile[0], tile[1]]})
        return {
            "kind": "state_snapshot",
            "schema_version": 1,
            "tick": sim.tick,
            "clock": clock_label(sim.clock),
            "date": date_label(sim.clock, sim.scenario.epoch_date),
            "paused": self.paused,
            "grid": sim.collision.rows,
            "agents": [self._agent_view(a) for a in sim.agents],
            "objects": objects,
        }

    def _agent_view(self, agent) -> dict:
        return {
            "name": agent.name,
            "tile": [agent.tile[0], agent.tile[1]],
            "action": agent.action,
            "emoji": agent.emoji,
            "location": agent.location_path,
        }

    def _delta(self, new_events: list[dict]) -> dict:
        sim = self.sim
        return {
            "kind": "state_delta",
            "tick": sim.tick,
            "clock": clock_label(sim.clock),
            "date": date_label(sim.clock, sim.scenario.epoch_date),
            "paused": self.paused,
            "agents": [self._agent_view(a) for a in sim.agents],
            "events": [e for e in new_events
                       if e["kind"] not in ("model_exchange_ref", "move")],
        }

    # --- loop ------------------------------------------------------------

    def step_once(self) -> None:
        before = len(self.sim.log.events)
        self.sim.step()
        new_events = self.sim.log.events[before:]
        self.broadcast(self._delta(new_events))

    def run_loop(self) -> None:
        while not self.stopped.is_set():
            if self.max_ticks and self.sim.tick >= self.max_ticks:
                break
            if self.paused:
                time.sleep(0.05)
                continue
            started = time.monotonic()
            self.step_once()
            if self.tick_seconds > 0:
                elapsed = time.monotonic() - started
                time.sleep(max(0.0, self.tick_seconds - elapsed))
        self.stopped.set()

    def broadcast(self, message: dict) -> None:
        with self.clients_lock:
            clients = list(self.clients)
        for client in clients:
            client.send(message)
        self._drop_closed()

    def _drop_closed(self) -> None:
        with self.clients_lock:
            self.clients = [c for c in self.clients if c.open]

    # --- commands -----------------------------------------------------------

    def handle_message(self, client: Client, message: dict) -> None:
        kind = message.get("kind")
        if kind != "command":
            client.send({"kind": "error", "message": f"unknown kind '{kind}'"})
            return
        cmd_id = message.get("cmd_id")
        command = message.get("command") or {}
        cmd_kind = command.get("kind")
        try:
            if cmd_kind == "pause":
                self.paused = True
                client.send({"kind": "command_ack", "cmd_id": cmd_id,
                             "status": "applied", "result": {"paused": True}})
                return
            if cmd_kind == "resume":
                self.paused = False
                client.send({"kind": "command_ack", "cmd_id": cmd_id,
                             "status": "applied", "result": {"paused": False}})
                return
            if cmd_kind == "interview":
                # interviews answer without advancing the clock
                result = self.sim.apply_user_command(command)
                client.send({"kind": "command_ack", "cmd_id": cmd_id,
                             "status": "applied", "result": result})
                return
            self.sim.queue_command(command)
            client.send({"kind": "command_ack", "cmd_id": cmd_id,
                         "status": "queued", "result": {}})
        except CommandError as exc:
            client.send({"kind": "error", "cmd_id": cmd_id, "message": str(exc)})

    # --- websocket plumbing ----------------------------------------------------

    def attach(self, sock: socket.socket, address) -> None:
        client = Client(sock, address)
        with self.clients_lock:
            self.clients.append(client)
        client.send(self.snapshot())
        while client.open and not self.stopped.is_set():
            frame = ws_read_frame(sock)
            if frame is None:
                break
            opcode, payload = frame
            if opcode == 0x8:  # close
                break
            if opcode == 0x9:  # ping -> pong
                with client.lock:
                    try:
                        header = struct.pack("!BB", 0x8A, len(payload))
                        sock.sendall(header + payload)
                    except OSError:
                        break
                continue
            if opcode != 0x1:
                continue
            for line in payload.decode("utf-8", "replace").splitlines():
                line = line.strip()
                if not line:
                    continue
                try:
                    message = json.loads(line)
                except json.JSONDecodeError:
                    client.send({"kind": "error",
                                 "message": "malformed JSON message"})
                    continue
                self.handle_message(client, message)
        client.open = False
        self._drop_closed()


def make_http_handler(server: SandboxServer, static_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args):
            pass

        def do_GET(self):
            if self.headers.get("Upgrade", "").lower() == "websocket":
                self._upgrade()
                return
            self._static()

        def _upgrade(self):
            key = self.headers.get("Sec-WebSocket-Key", "")
            self.send_response(101, "Switching Protocols")
            self.send_header("Upgrade", "websocket")
            self.send_header("Connection", "Upgrade")
            self.send_header("Sec-WebSocket-Accept", _accept_key(key))
            self.end_headers()
            self.close_connection = True
            server.attach(self.connection, self.client_address)

        def _static(self):
            if static_dir is None:
                body = b"townsim server: no UI assets configured\n"
                self.send_response(200)
                self.send_header("Content-Type", "text/plain")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            rel = self.path.split("?")[0].lstrip("/") or "index.html"
            target = (static_dir / rel).resolve()
            if not str(target).startswith(str(static_dir.resolve())) \
                    or not target.is_file():
                self.send_error(404)
                return
            content_types = {".html": "text/html", ".js": "text/javascript",
                             ".css": "text/css", ".png": "image/png",
                             ".json": "application/json", ".map": "application/json"}
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type",
                             content_types.get(target.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


def serve(scenario: Scenario, config: RunConfig, port: int = 8421,
          host: str = "127.0.0.1", tick_seconds: float = 1.0,
          static_dir: str | None = None,
          ready: threading.Event | None = None) -> SandboxServer:
    """Run the simulation with the UI protocol attached; blocks until done."""
    sandbox = SandboxServer(scenario, config, tick_seconds=tick_seconds)
    static = Path(static_dir) if static_dir else _default_static_dir()
    httpd = ThreadingHTTPServer((host, port), make_http_handler(sandbox, static))
    http_thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    http_thread.start()
    log.info("serving '%s' on http://%s:%d", scenario.name, host, port)
    print(f"serving '{scenario.name}' on http://{host}:{port} "
          f"(tick every {tick_seconds}s)")
    if ready is not None:
        ready.set()
    try:
        sandbox.run_loop()
    except KeyboardInterrupt:
        pass
    finally:
        sandbox.stopped.set()
        httpd.shutdown()
    return sandbox


def _default_static_dir() -> Path | None:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None
