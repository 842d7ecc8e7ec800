"""Command-line entry points: run, replay, interview, report, serve."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import evalharness as harness
from .config import RunConfig, validate
from .engine import Simulation, read_event_log, replay
from .errors import TownsimError
from .gateway import Gateway, ScriptedBackend
from .scenario import Scenario, bundled_scenario_path, load_scenario


def _resolve_scenario(value: str) -> Scenario:
    path = Path(value)
    if not path.exists():
        bundled = bundled_scenario_path(value)
        if bundled.exists():
            path = bundled
    return load_scenario(path)


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("parameter overrides")
    group.add_argument("--decay", type=float, default=None,
                       help="recency decay per game hour (default 0.995)")
    group.add_argument("--alpha-recency", type=float, default=None,
                       help="recency weight (default 1.0)")
    group.add_argument("--alpha-importance", type=float, default=None,
                       help="importance weight (default 1.0)")
    group.add_argument("--alpha-relevance", type=float, default=None,
                       help="relevance weight (default 1.0)")
    group.add_argument("--threshold", dest="reflection_threshold", type=int,
                       default=None,
                       help="reflection trigger threshold (default 150)")
    group.add_argument("--radius", dest="vision_radius", type=int, default=None,
                       help="vision radius in tiles (default 4)")
    group.add_argument("--budget", dest="retrieval_budget", type=int, default=None,
                       help="retrieval token budget (default 1200)")


def _config_from_args(args: argparse.Namespace, scenario_path: str) -> RunConfig:
    base = RunConfig(scenario=scenario_path)
    if getattr(args, "config", None):
        file_overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
        base = base.with_overrides(file_overrides)
    flags = {
        key: getattr(args, key, None)
        for key in ("seed", "ticks", "decay", "alpha_recency", "alpha_importance",
                    "alpha_relevance", "reflection_threshold", "vision_radius",
                    "retrieval_budget")
    }
    if getattr(args, "gateway", None):
        flags["gateway_mode"] = args.gateway
    if getattr(args, "record", None):
        flags["record_path"] = args.record
    if getattr(args, "pace", None):
        flags["pacing"] = args.pace
    return base.with_overrides(flags)


def _check_config(config: RunConfig) -> None:
    diagnostics = validate(config)
    if diagnostics:
        for line in diagnostics:
            print(f"config error: {line}", file=sys.stderr)
        raise SystemExit(2)


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario)
    config = _config_from_args(args, args.scenario)
    _check_config(config)
    sim = Simulation(scenario, config, record_path=args.record)
    pace = config.pacing == "real"
    for _ in range(config.ticks):
        started = time.monotonic()
        sim.step()
        if pace:
            # one real second per game minute
            time.sleep(max(0.0, 1.0 - (time.monotonic() - started)))
    sim.log.close()
    print(f"ran {sim.tick} ticks of '{scenario.name}' "
          f"({len(sim.log.events)} events)")
    if args.record:
        print(f"event log written to {args.record}")
    if args.save:
        sim.save(args.save)
        print(f"world state written to {args.save}")
    if args.schedules:
        write_schedules(sim, args.schedules)
        print(f"schedules written to {args.schedules}")
    return 0


def write_schedules(sim: Simulation, directory: str) -> list[Path]:
    """One readable schedule file per agent per day."""
    from .planning import schedule_text

    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for agent in sim.agents:
        slug = agent.name.lower().replace(" ", "_")
        for date, plan in sorted(agent.plans.items()):
            path = out_dir / f"{slug}_day{date}.txt"
            path.write_text(schedule_text(plan, sim.scenario.epoch_date),
                            encoding="utf-8")
            written.append(path)
    return written


def cmd_replay(args: argparse.Namespace) -> int:
    header, events = read_event_log(args.log)
    scenario = _resolve_scenario(args.scenario or header.get("scenario_name", ""))
    sim = replay(args.log, scenario, until=args.until)
    print(f"replayed {sim.tick} ticks from {args.log}; "
          f"clock {sim.clock} game minutes")
    if args.save:
        sim.save(args.save)
        print(f"replayed world state written to {args.save}")
    return 0


def _swap_to_scripted(sim: Simulation, scenario: Scenario) -> None:
    # post-hoc interviews need a real backend, not the exhausted replay log
    sim.gateway = Gateway(ScriptedBackend.from_records(scenario.script))


def cmd_interview(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario or "")
    sim = replay(args.log, scenario)
    _swap_to_scripted(sim, scenario)
    questions = harness.load_battery(args.questions) if args.questions \
        else harness.load_battery()
    answers = harness.run_battery(sim, args.agent, args.condition, questions)
    failed = [a for a in answers if a.failed]
    for answer in answers:
        print(f"[{answer.condition}] Q: {answer.question}")
        print(f"  A: {answer.text}")
    if args.out:
        Path(args.out).write_text(
            json.dumps([a.__dict__ for a in answers], ensure_ascii=False, indent=1),
            encoding="utf-8")
        print(f"answers written to {args.out}")
    if failed:
        print(f"{len(failed)} of {len(answers)} answers failed", file=sys.stderr)
        return 1
    return 0


def _load_measures(scenario: Scenario) -> dict[str, harness.ItemMatchers]:
    path = Path(__file__).parent / "data" / "measures.json"
    out = {}
    for rec in json.loads(path.read_text(encoding="utf-8")):
        out[rec["item"]] = harness.ItemMatchers(
            item=rec["item"],
            yes_patterns=tuple(rec["yes_patterns"]),
            no_patterns=tuple(rec["no_patterns"]),
            content_patterns=tuple(rec["content_patterns"]),
            question=rec["question"],
        )
    return out


def cmd_report(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario or "")
    sim = replay(args.log, scenario)
    _swap_to_scripted(sim, scenario)
    measures = _load_measures(scenario)
    overrides = harness.load_overrides(args.overrides)
    population = sum(1 for a in sim.agents if not a.embodied)

    if args.kind == "diffusion":
        documents = []
        rows = []
        for item, matchers in measures.items():
            report = harness.diffusion_report(sim, matchers, overrides)
            documents.append(report.to_json(population))
            rows.append((item, len(report.holders_start), len(report.holders_end),
                         f"{len(report.holders_end) / population:.0%}",
                         sum(report.hallucination_flags.values())))
        print(json.dumps(documents, ensure_ascii=False, indent=1))
        print()
        print(harness.render_table(
            rows, ("item", "holders_start", "holders_end", "end_share",
                   "hallucinations")))
    elif args.kind == "density":
        end_edges = harness.mutual_knowledge_graph(sim)
        start_sim = Simulation(scenario, sim.config)
        start_edges = harness.mutual_knowledge_graph(start_sim)
        document = {
            "population": population,
            "start_edges": len(start_edges),
            "end_edges": len(end_edges),
            "density_start": round(harness.network_density(population, start_edges), 3),
            "density_end": round(harness.network_density(population, end_edges), 3),
        }
        print(json.dumps(document, ensure_ascii=False, indent=1))
        print()
        print(harness.render_table(
            [(document["density_start"], document["density_end"],
              document["start_edges"], document["end_edges"])],
            ("density_start", "density_end", "edges_start", "edges_end")))
    elif args.kind == "coordination":
        from .data import valentine_builder as vb

        location = args.location or vb.PARTY_LOCATION
        window = (args.window_start if args.window_start is not None
                  else vb.PARTY_WINDOW[0],
                  args.window_end if args.window_end is not None
                  else vb.PARTY_WINDOW[1])
        invited = set(json.loads(Path(args.invited).read_text())) \
            if args.invited else set(vb.PARTY_INVITED)
        count = harness.coordination_count(sim.log.events, sim.tree, location,
                                           window, invited)
        document = {
            "location": location,
            "window": list(window),
            "invited": sorted(invited),
            "attended": count,
        }
        print(json.dumps(document, ensure_ascii=False, indent=1))
        print()
        print(harness.render_table([(count, len(invited))],
                                   ("attended", "invited")))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    scenario = _resolve_scenario(args.scenario)
    config = _config_from_args(args, args.scenario)
    _check_config(config)
    serve(scenario, config, port=args.port, host=args.host,
          tick_seconds=args.tick_seconds, static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="townsim",
        description="Deterministic generative-agent sandbox town",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a simulation")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--ticks", type=int, default=None)
    p_run.add_argument("--gateway", choices=["scripted", "live"], default=None)
    p_run.add_argument("--record", default=None, help="write NDJSON event log here")
    p_run.add_argument("--save", default=None, help="write final world state here")
    p_run.add_argument("--schedules", default=None,
                       help="directory for per-agent daily schedule text files")
    p_run.add_argument("--pace", choices=["unpaced", "real"], default=None)
    p_run.add_argument("--config", default=None, help="JSON config file")
    _add_override_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_replay = sub.add_parser("replay", help="reconstruct a run from its log")
    p_replay.add_argument("--log", required=True)
    p_replay.add_argument("--until", type=int, default=None)
    p_replay.add_argument("--scenario", default=None)
    p_replay.add_argument("--save", default=None)
    p_replay.set_defaults(func=cmd_replay)

    p_interview = sub.add_parser("interview", help="interview an agent post-run")
    p_interview.add_argument("--log", required=True)
    p_interview.add_argument("--agent", required=True)
    p_interview.add_argument("--questions", default=None)
    p_interview.add_argument(
        "--condition", default="full",
        choices=["full", "no_reflection", "no_reflection_no_planning",
                 "fully_ablated"])
    p_interview.add_argument("--scenario", default=None)
    p_interview.add_argument("--out", default=None)
    p_interview.set_defaults(func=cmd_interview)

    p_report = sub.add_parser("report", help="emergent-behavior measurements")
    p_report.add_argument("--log", required=True)
    p_report.add_argument("--kind", required=True,
                          choices=["diffusion", "density", "coordination"])
    p_report.add_argument("--scenario", default=None)
    p_report.add_argument("--overrides", default=None,
                          help="manual label override JSON")
    p_report.add_argument("--location", default=None)
    p_report.add_argument("--window-start", type=int, default=None)
    p_report.add_argument("--window-end", type=int, default=None)
    p_report.add_argument("--invited", default=None,
                          help="JSON list of invited agent names")
    p_report.set_defaults(func=cmd_report)

    p_serve = sub.add_parser("serve", help="run with the web UI attached")
    p_serve.add_argument("--scenario", required=True)
    p_serve.add_argument("--port", type=int, default=8421)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--seed", type=int, default=None)
    p_serve.add_argument("--ticks", type=int, default=None)
    p_serve.add_argument("--gateway", choices=["scripted", "live"], default=None)
    p_serve.add_argument("--tick-seconds", type=float, default=1.0,
                         help="real seconds per game minute (0 = flat out)")
    p_serve.add_argument("--static", default=None,
                         help="directory of UI assets to serve")
    p_serve.add_argument("--config", default=None)
    _add_override_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TownsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
