"""Run the bundled two-day town and print the emergent measurements.

This is the whole pipeline end to end: 25 agents, deterministic scripted
gateway, seed 42, 2,880 ticks (two game days), then the interview-based
reports — information diffusion, mutual-knowledge network density, and
party attendance. Takes about half a minute.
"""

import collections

from townsim import evalharness as harness
from townsim.cli import _load_measures
from townsim.config import RunConfig
from townsim.data import valentine_builder as vb
from townsim.engine import Simulation
from townsim.scenario import bundled_scenario_path, load_scenario

scenario = load_scenario(bundled_scenario_path("valentine"))
print(f"scenario '{scenario.name}': {len(scenario.agents)} agents, "
      f"{len(scenario.script)} scripted replies")

sim = Simulation(scenario, RunConfig(seed=42, ticks=2880))
sim.run(2880)
kinds = collections.Counter(e["kind"] for e in sim.log.events)
print(f"\ntwo game days simulated: {len(sim.log.events)} events")
for kind, count in kinds.most_common():
    print(f"  {kind:>20}: {count}")

print("\ndialogues that happened:")
pairs = collections.Counter(tuple(e["payload"]["participants"])
                            for e in sim.log.events
                            if e["kind"] == "dialogue_turn")
for (a, b), turns in pairs.items():
    print(f"  {a} and {b} ({turns} turns)")

print("\nmeasurements:")
for item, matchers in _load_measures(scenario).items():
    report = harness.diffusion_report(sim, matchers)
    print(f"  {item}: {len(report.holders_start)} -> {len(report.holders_end)} "
          f"holders of 25 "
          f"({len(report.holders_end) / 25:.0%}), "
          f"hallucinations: {sum(report.hallucination_flags.values())}")

attended = harness.coordination_count(
    sim.log.events, sim.tree, vb.PARTY_LOCATION, vb.PARTY_WINDOW,
    set(vb.PARTY_INVITED))
print(f"  party attendance: {attended} of {len(vb.PARTY_INVITED)} invited")

edges = harness.mutual_knowledge_graph(sim)
start_edges = harness.mutual_knowledge_graph(Simulation(scenario, RunConfig(seed=42)))
print(f"  network density: {harness.network_density(25, start_edges):.3f} -> "
      f"{harness.network_density(25, edges):.2f} "
      f"({len(start_edges)} -> {len(edges)} mutual pairs)")
