"""Scenario file validation and run-configuration tests."""

import json

import pytest

from townsim.config import RunConfig, validate
from townsim.errors import ScenarioError
from townsim.scenario import load_scenario, load_scenario_dict

from smalltown import scenario_dict


def test_valid_scenario_loads():
    scenario = load_scenario_dict(scenario_dict())
    assert scenario.name == "smalltown"
    assert len(scenario.agents) == 3
    assert scenario.digest


def test_scenario_digest_tracks_content():
    a = load_scenario_dict(scenario_dict())
    changed = scenario_dict()
    changed["agents"][0]["age"] = 99
    b = load_scenario_dict(changed)
    assert a.digest != b.digest


def test_missing_schema_version_rejected():
    data = scenario_dict()
    del data["schema_version"]
    with pytest.raises(ScenarioError) as err:
        load_scenario_dict(data)
    assert "schema_version" in str(err.value)


def test_wrong_schema_version_rejected():
    data = scenario_dict()
    data["schema_version"] = 99
    with pytest.raises(ScenarioError):
        load_scenario_dict(data)


def test_unknown_home_rejected():
    data = scenario_dict()
    data["agents"][0]["home"] = "Nowhere: room"
    with pytest.raises(ScenarioError) as err:
        load_scenario_dict(data)
    assert "Ann Porter" in str(err.value)


def test_duplicate_agent_rejected():
    data = scenario_dict()
    data["agents"].append(dict(data["agents"][0]))
    with pytest.raises(ScenarioError):
        load_scenario_dict(data)


def test_uneven_grid_rejected():
    data = scenario_dict()
    data["grid"][2] = data["grid"][2][:-3]
    with pytest.raises(ScenarioError):
        load_scenario_dict(data)


def test_load_scenario_from_file(tmp_path):
    path = tmp_path / "town.json"
    path.write_text(json.dumps(scenario_dict()), encoding="utf-8")
    assert load_scenario(path).name == "smalltown"
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ScenarioError):
        load_scenario(bad)


def test_bundled_valentine_matches_builder():
    """The checked-in scenario file is exactly the builder's output."""
    from townsim.data import valentine_builder as vb
    from townsim.scenario import bundled_scenario_path

    bundled = json.loads(bundled_scenario_path("valentine").read_text("utf-8"))
    assert bundled == vb.build_scenario()


def test_bundled_valentine_loads_with_25_agents():
    from townsim.scenario import bundled_scenario_path

    scenario = load_scenario(bundled_scenario_path("valentine"))
    assert len(scenario.agents) == 25
    # the landmark locations all resolve
    tree = scenario.build_tree()
    for path in (
        "The Lin family's house: garden: house garden",
        "Isabella's apartment: kitchen: stove",
        "Hobbs Cafe: counter: coffee machine",
        "Oak Hill College Dorm: Klaus Mueller's room: desk",
    ):
        assert tree.resolve(path) is not None, path


# --- config ------------------------------------------------------------------


def test_defaults_validate_clean():
    assert validate(RunConfig()) == []


def test_canonical_defaults_present():
    config = RunConfig()
    assert config.decay == 0.995
    assert config.alpha_recency == config.alpha_importance == config.alpha_relevance == 1.0
    assert config.reflection_threshold == 150
    assert config.vision_radius == 4
    assert config.effective()["reflection_threshold"] == 150


def test_decay_out_of_range_diagnostic():
    diagnostics = validate(RunConfig(decay=1.5))
    assert any("decay must be in (0,1]" in d for d in diagnostics)


def test_multiple_diagnostics_name_fields():
    diagnostics = validate(RunConfig(decay=0.0, retrieval_budget=-1,
                                     gateway_mode="quantum"))
    text = "\n".join(diagnostics)
    assert "decay" in text and "retrieval_budget" in text and "gateway_mode" in text


def test_live_mode_requires_credentials(monkeypatch):
    monkeypatch.delenv("TOWNSIM_API_KEY", raising=False)
    diagnostics = validate(RunConfig(gateway_mode="live"))
    text = "\n".join(diagnostics)
    assert "live_base_url" in text and "TOWNSIM_API_KEY" in text
    monkeypatch.setenv("TOWNSIM_API_KEY", "k")
    diagnostics = validate(RunConfig(gateway_mode="live",
                                     live_base_url="http://x", live_model="m"))
    assert diagnostics == []


def test_overrides_precedence():
    base = RunConfig()
    merged = base.with_overrides({"decay": 0.9, "unknown_key": 1, "seed": None})
    assert merged.decay == 0.9
    assert merged.seed == base.seed  # None flags never override
    assert not hasattr(merged, "unknown_key")


def test_api_key_never_echoed():
    assert "api_key_env" not in RunConfig().effective()
