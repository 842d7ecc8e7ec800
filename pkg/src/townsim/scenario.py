"""Scenario files: the world definition a simulation runs from.

A scenario bundles the tile grid (collision raster), the environment tree,
the agent roster with seed descriptions and initial views, and the reply
script for the deterministic gateway. Files are JSON with a schema_version
field and validate before tick 0.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .environment import CollisionMap, EnvTree, arrival_tile
from .errors import ScenarioError

SCHEMA_VERSION = 1


@dataclass
class AgentSpec:
    name: str
    age: int
    traits: str
    seed: str
    home: str                 # area or subarea path used by fallback plans
    bed: str                  # leaf path: sleeping spot and starting tile
    known_areas: list[str] = field(default_factory=list)


@dataclass
class Scenario:
    name: str
    epoch_date: _dt.date
    grid: list[str]
    tree_record: dict
    agents: list[AgentSpec]
    script: list[dict]
    config_overrides: dict
    digest: str

    def collision_map(self) -> CollisionMap:
        return CollisionMap(self.grid)

    def build_tree(self) -> EnvTree:
        return EnvTree.from_records(self.tree_record)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ScenarioError(message)


def load_scenario_dict(data: dict) -> Scenario:
    _check("schema_version" in data, "scenario missing schema_version")
    version = data["schema_version"]
    _check(
        version == SCHEMA_VERSION,
        f"scenario schema_version {version} unsupported (expected {SCHEMA_VERSION})",
    )
    for key in ("name", "epoch_date", "grid", "tree", "agents"):
        _check(key in data, f"scenario missing required field '{key}'")

    grid = list(data["grid"])
    _check(len(grid) > 0, "scenario grid is empty")
    collision = CollisionMap(grid)

    tree = EnvTree.from_records(data["tree"])
    for node in tree.root.walk():
        if node.kind == "object":
            _check(bool(node.footprint),
                   f"object '{node.path()}' has no footprint")
            arrival_tile(collision, node)  # raises when unreachable

    agents: list[AgentSpec] = []
    names = set()
    for i, rec in enumerate(data["agents"]):
        for key in ("name", "age", "traits", "seed", "home", "bed"):
            _check(key in rec, f"agent #{i} missing field '{key}'")
        name = rec["name"]
        _check(name not in names, f"duplicate agent name '{name}'")
        names.add(name)
        _check(";" in rec["seed"] or rec["seed"].strip(),
               f"agent '{name}' has an empty seed description")
        _check(tree.resolve(rec["home"]) is not None,
               f"agent '{name}' home '{rec['home']}' not in the tree")
        bed = tree.resolve(rec["bed"])
        _check(bed is not None, f"agent '{name}' bed '{rec['bed']}' not in the tree")
        _check(not bed.children, f"agent '{name}' bed must be a leaf")
        arrival_tile(collision, bed)
        for area in rec.get("known_areas", []):
            _check(tree.resolve(area) is not None,
                   f"agent '{name}' known area '{area}' not in the tree")
        agents.append(
            AgentSpec(
                name=name,
                age=int(rec["age"]),
                traits=rec["traits"],
                seed=rec["seed"],
                home=rec["home"],
                bed=rec["bed"],
                known_areas=list(rec.get("known_areas", [])),
            )
        )
    _check(len(agents) > 0, "scenario defines no agents")

    script = list(data.get("script", []))
    for i, entry in enumerate(script):
        _check("template" in entry and "reply" in entry,
               f"script entry #{i} missing template or reply")

    canonical = json.dumps(data, sort_keys=True, ensure_ascii=False)
    digest = hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    return Scenario(
        name=data["name"],
        epoch_date=_dt.date.fromisoformat(data["epoch_date"]),
        grid=grid,
        tree_record=data["tree"],
        agents=agents,
        script=script,
        config_overrides=dict(data.get("config", {})),
        digest=digest,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    if not path.exists():
        raise ScenarioError(f"scenario file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}")
    return load_scenario_dict(data)


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario bundled with the package (e.g. 'valentine')."""
    return Path(__file__).parent / "data" / f"{name}.json"
