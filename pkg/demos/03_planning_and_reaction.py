"""Walkthrough: day plans, recursive decomposition, and reacting.

Plans a student's day in broad strokes, decomposes the afternoon block
down to 5-15 minute actions, then interrupts it with a reaction and shows
that the past stays untouched while the rest of the day re-plans.
"""

import datetime

from townsim.gateway import Gateway, ScriptedBackend
from townsim.planning import (
    AgentIdentity, AgentSummary, PlanEntry, decompose, plan_day,
    regenerate_plan_from, schedule_text,
)

EPOCH = datetime.date(2023, 2, 13)

gateway = Gateway(ScriptedBackend.from_records([
    {"template": "day_plan", "match": {"prior_day": "Replan the rest of today"},
     "reply": "continue with the rest of the planned schedule"},
    {"template": "day_plan", "match": {},
     "reply": "1) wake up and run through the morning routine at 7:00 am, "
              "2) attend morning classes at 10:00 am, "
              "3) have lunch at the dining hall at 12:00 pm, "
              "4) practice the new piece from 1:00 pm to 5:00 pm, "
              "5) have dinner at 5:30 pm, "
              "6) wind down and sleep by 10:00 pm"},
    {"template": "decompose_hour", "match": {},
     "reply": "1:00 pm: warm up with scales. 2:00 pm: work the hard passage "
              "bar by bar. 3:30 pm: run the full piece. 4:30 pm: cool down "
              "and note tomorrow's fixes."},
    {"template": "decompose_minute", "match": {},
     "reply": "1:00 pm: stretch hands and wrists. 1:10 pm: slow scales. "
              "1:25 pm: arpeggios. 1:40 pm: sight-read something fun. "
              "1:50 pm: water break."},
    {"template": "importance", "match": {}, "reply": "3"},
]))

student = AgentIdentity("Sam Tanaka", 20, "diligent, cheerful",
                        "Sam Tanaka is a music student")
summary = AgentSummary("Sam Tanaka is a music student preparing a recital.", 0)

plan = plan_day(student, summary, date=0, prior_day_summary="Rested on Sunday.",
                gateway=gateway, epoch_date=EPOCH, home="dorm")
print("broad strokes:")
for entry in plan.entries:
    print(f"  {entry.description}  [{entry.duration} min]")

afternoon = plan.entries[3]
hours = decompose(afternoon, student, summary, gateway, EPOCH)
minutes = decompose(hours[0], student, summary, gateway, EPOCH)
print(f"\nafternoon block split into {len(hours)} hour chunks; "
      f"first chunk into {len(minutes)} minute actions:")
for child in minutes:
    print(f"  {child.duration:>2} min: {child.description}")
print("  chunks always tile the parent exactly; 5-15 minutes each, "
      "a shorter remainder only at the end.")

reaction = PlanEntry("helping a friend carry an amp upstairs", "dorm",
                     14 * 60, 15, "day")
new_plan = regenerate_plan_from(plan, 14 * 60, reaction, student, summary,
                                gateway, EPOCH)
print("\nafter a 2:00 pm interruption:")
print(schedule_text(new_plan, EPOCH))
print("entries that already ended are byte-identical; only the future moved.")
