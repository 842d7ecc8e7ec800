"""Sandbox world: containment tree, agent views, perception, pathfinding.

The world is a tree (world > area > subarea > object) whose edges mean
containment. Agents never see the authoritative tree directly: each holds
a possibly-stale subview that grows and refreshes only through perception.
Leaves carry tile footprints on a collision grid; movement runs on
4-connected shortest paths.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .errors import ScenarioError, UnreachableTileError
from .gametime import GameTime

log = logging.getLogger(__name__)

NODE_KINDS = ("world", "area", "subarea", "object")
PATH_SEP = ": "
DEFAULT_VISION_RADIUS = 4

Tile = tuple[int, int]  # (row, col)


@dataclass
class EnvNode:
    name: str
    kind: str
    status: str | None = None
    footprint: list[Tile] = field(default_factory=list)
    children: dict[str, "EnvNode"] = field(default_factory=dict)
    parent: "EnvNode | None" = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ScenarioError(f"unknown node kind '{self.kind}'")
        if self.kind == "object" and self.children:
            raise ScenarioError(f"object node '{self.name}' must be a leaf")

    def add(self, child: "EnvNode") -> "EnvNode":
        if child.name in self.children:
            raise ScenarioError(
                f"duplicate child '{child.name}' under '{self.name}'")
        order = NODE_KINDS.index
        if order(child.kind) <= order(self.kind):
            raise ScenarioError(
                f"'{child.kind}' node cannot nest under '{self.kind}'")
        child.parent = self
        self.children[child.name] = child
        return child

    def path(self) -> str:
        parts = []
        node: EnvNode | None = self
        while node is not None and node.kind != "world":
            parts.append(node.name)
            node = node.parent
        return PATH_SEP.join(reversed(parts))

    def walk(self):
        yield self
        for child in self.children.values():
            yield from child.walk()

    def leaves(self):
        for node in self.walk():
            if not node.children:
                yield node


def render_containment(node: EnvNode) -> str:
    """Containment relation as a sentence, e.g. 'there is a stove in the
    kitchen'. Nodes directly under the world root (and the root itself)
    have no containment sentence."""
    if node.parent is None or node.parent.kind == "world":
        return ""
    return f"there is a {node.name} in the {node.parent.name}"


def render_subtree(node: EnvNode) -> str:
    """Depth-first concatenation of containment sentences below *node*."""
    sentences = [s for s in (render_containment(n) for n in node.walk()) if s]
    return ". ".join(sentences)


class EnvTree:
    """Authoritative containment tree with path resolution."""

    def __init__(self, root: EnvNode):
        if root.kind != "world":
            raise ScenarioError("root node must have kind 'world'")
        self.root = root

    def resolve(self, path: str) -> EnvNode | None:
        node = self.root
        for raw in path.split(":"):
            name = raw.strip()
            if not name:
                return None
            child = node.children.get(name)
            if child is None:
                return None
            node = child
        return node

    def resolve_or_error(self, path: str) -> EnvNode:
        node = self.root
        for raw in path.split(":"):
            name = raw.strip()
            child = node.children.get(name) if name else None
            if child is None:
                raise ScenarioError(
                    f"unknown segment '{name}' in path '{path}' "
                    f"(under '{node.name}')")
            node = child
        return node

    @classmethod
    def from_records(cls, record: dict) -> "EnvTree":
        def build(rec: dict) -> EnvNode:
            footprint = [tuple(t) for t in rec.get("tiles", [])]
            if "rect" in rec:
                r0, c0, r1, c1 = rec["rect"]
                footprint = [(r, c) for r in range(r0, r1 + 1)
                             for c in range(c0, c1 + 1)]
            node = EnvNode(rec["name"], rec["kind"], rec.get("status"), footprint)
            for child_rec in rec.get("children", []):
                node.add(build(child_rec))
            return node

        return cls(build(record))

    def to_records(self) -> dict:
        def dump(node: EnvNode) -> dict:
            rec: dict = {"name": node.name, "kind": node.kind}
            if node.status is not None:
                rec["status"] = node.status
            if node.footprint:
                rec["tiles"] = [list(t) for t in node.footprint]
            if node.children:
                rec["children"] = [dump(c) for c in node.children.values()]
            return rec

        return dump(self.root)


@dataclass
class AgentEnvView:
    """One agent's remembered slice of the world, refreshed by perception."""

    agent_id: str
    known_paths: set[str] = field(default_factory=set)
    remembered_status: dict[str, str] = field(default_factory=dict)
    last_seen: dict[str, GameTime] = field(default_factory=dict)

    def knows(self, path: str) -> bool:
        return path in self.known_paths

    def learn(self, tree: EnvTree, path: str, now: GameTime,
              status: str | None = None) -> None:
        """Add a node (and its ancestors) to the view; refresh its status."""
        node = tree.resolve(path)
        if node is None:
            return
        while node is not None and node.kind != "world":
            self.known_paths.add(node.path())
            node = node.parent
        self.last_seen[path] = now
        if status is not None:
            self.remembered_status[path] = status

    def known_top_areas(self, tree: EnvTree) -> list[str]:
        return [name for name, node in tree.root.children.items()
                if node.path() in self.known_paths]

    def known_children(self, tree: EnvTree, path: str) -> list[str]:
        node = tree.resolve(path) if path else tree.root
        if node is None:
            return []
        return [name for name, child in node.children.items()
                if child.path() in self.known_paths]

    def reconcile(self, tree: EnvTree) -> None:
        """Drop view entries whose nodes no longer exist in the world."""
        stale = [p for p in self.known_paths if tree.resolve(p) is None]
        for path in stale:
            self.known_paths.discard(path)
            self.remembered_status.pop(path, None)
            self.last_seen.pop(path, None)


class CollisionMap:
    """Tile grid of walkable / blocked cells, parsed from a text raster."""

    def __init__(self, rows: list[str]):
        if not rows:
            raise ScenarioError("collision map is empty")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ScenarioError("collision map rows have uneven width")
        self.height = len(rows)
        self.width = width
        self.rows = rows

    def blocked(self, tile: Tile) -> bool:
        r, c = tile
        if not (0 <= r < self.height and 0 <= c < self.width):
            return True
        return self.rows[r][c] == "#"

    def in_bounds(self, tile: Tile) -> bool:
        r, c = tile
        return 0 <= r < self.height and 0 <= c < self.width


# neighbor expansion in (row, col) order pins shortest-path tie-breaking
_NEIGHBOR_DELTAS = ((-1, 0), (0, -1), (0, 1), (1, 0))


def path_find(collision: CollisionMap, start: Tile, goal: Tile) -> list[Tile]:
    """Shortest 4-connected path from start to goal (goal inclusive,
    start exclusive). Returns [] when start == goal; raises when the goal
    is blocked or unreachable."""
    if collision.blocked(start):
        raise UnreachableTileError(f"start tile {start} is blocked")
    if collision.blocked(goal):
        raise UnreachableTileError(f"goal tile {goal} is blocked")
    if start == goal:
        return []
    parent: dict[Tile, Tile] = {start: start}
    frontier = [start]
    while frontier:
        next_frontier: list[Tile] = []
        for tile in frontier:
            for dr, dc in _NEIGHBOR_DELTAS:
                neighbor = (tile[0] + dr, tile[1] + dc)
                if neighbor in parent or collision.blocked(neighbor):
                    continue
                parent[neighbor] = tile
                if neighbor == goal:
                    path = [neighbor]
                    while parent[path[-1]] != path[-1]:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path[1:]
                next_frontier.append(neighbor)
        frontier = next_frontier
    raise UnreachableTileError(f"no path from {start} to {goal}")


def chebyshev(a: Tile, b: Tile) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def arrival_tile(collision: CollisionMap, node: EnvNode) -> Tile:
    """Deterministic standing tile for a leaf: the first unblocked footprint
    tile, else the first unblocked 4-neighbor of the footprint, row-major."""
    for tile in sorted(node.footprint):
        if not collision.blocked(tile):
            return tile
    for tile in sorted(node.footprint):
        for dr, dc in _NEIGHBOR_DELTAS:
            candidate = (tile[0] + dr, tile[1] + dc)
            if not collision.blocked(candidate):
                return candidate
    raise ScenarioError(
        f"node '{node.path()}' has no reachable standing tile")


@dataclass(frozen=True)
class Percept:
    """One perceived entity: an agent or an object within visual range."""

    entity: str           # agent name or object path
    is_agent: bool
    text: str             # "<entity> is <action/status>"
    status: str | None    # object status (objects only)
    tile: Tile


def perceive(
    view: AgentEnvView,
    tree: EnvTree,
    self_name: str,
    self_tile: Tile,
    agent_positions: dict[str, tuple[Tile, str]],
    now: GameTime,
    radius: int = DEFAULT_VISION_RADIUS,
) -> list[Percept]:
    """Everything within Chebyshev *radius* of the agent.

    Perceiving a node refreshes the agent's view of it (newly seen areas
    join the subtree; remembered statuses are corrected), which is the only
    way a stale view catches up with the world.
    """
    percepts: list[Percept] = []
    for other_name, (tile, action) in agent_positions.items():
        if other_name == self_name:
            continue
        if chebyshev(self_tile, tile) <= radius:
            percepts.append(Percept(other_name, True, action, None, tile))
    for node in tree.root.walk():
        if node.kind != "object" or not node.footprint:
            continue
        tile = min(node.footprint)
        if chebyshev(self_tile, tile) <= radius:
            status = node.status or "idle"
            path = node.path()
            percepts.append(
                Percept(path, False, f"{node.name} is {status}", status, tile)
            )
            view.learn(tree, path, now, status)
    view.reconcile(tree)
    return percepts


# --- location grounding -----------------------------------------------------


def choose_location(
    view: AgentEnvView,
    tree: EnvTree,
    agent_name: str,
    summary_text: str,
    action: str,
    current_path: str,
    gateway,
) -> str:
    """Ground an action to a leaf by recursive descent over the agent's view.

    At each level the model picks one child by name from the agent's
    remembered children (the authoritative tree is never consulted for
    options). Levels with a single known child skip the model. Two
    unparseable picks leave the agent where it is.
    """
    known_areas = view.known_top_areas(tree)
    if not known_areas:
        return current_path
    path = ""
    options = known_areas
    while True:
        if len(options) == 1:
            chosen = options[0]
        else:
            chosen = None
            for _ in range(2):
                reply = gateway.complete(
                    "location_choose",
                    {
                        "summary": summary_text,
                        "name": agent_name,
                        "current": current_path or "an unknown place",
                        "options": ", ".join(options),
                        "known_areas": ", ".join(known_areas),
                        "action": action,
                    },
                )
                candidate = _match_option(reply, options)
                if candidate is not None:
                    chosen = candidate
                    break
            if chosen is None:
                log.warning("%s could not ground %r; staying at %s",
                            agent_name, action, current_path)
                return current_path
        path = f"{path}{PATH_SEP}{chosen}" if path else chosen
        options = view.known_children(tree, path)
        if not options:
            return path


def _match_option(reply: str, options: list[str]) -> str | None:
    cleaned = reply.strip().strip(".").strip()
    for option in options:
        if option.lower() == cleaned.lower():
            return option
    hits = [o for o in options if o.lower() in reply.lower()]
    return hits[0] if len(hits) >= 1 else None


# --- object state -----------------------------------------------------------

_STATUS_CLEAN_RE = re.compile(r"^[\s'\"]*|[\s'\".]*$")


def object_transition(node: EnvNode, actor: str, action: str, gateway) -> str:
    """Ask the model what an action does to an object's state.

    An unparseable reply leaves the status unchanged.
    """
    if node.kind != "object":
        raise ValueError(f"'{node.path()}' is not an object")
    try:
        reply = gateway.complete(
            "object_state",
            {"object": node.name, "actor": actor, "action": action},
        )
    except Exception as exc:  # gateway errors leave state untouched
        log.warning("object transition failed for %s: %s", node.path(), exc)
        return node.status or "idle"
    status = _STATUS_CLEAN_RE.sub("", reply.splitlines()[0] if reply else "")
    if not status or len(status.split()) > 8:
        return node.status or "idle"
    node.status = status
    return status
