"""Walkthrough: reflection — from raw observations to cited insights.

Records a studious day, lets the importance accumulator cross its
threshold, and prints the resulting reflection tree: insights citing the
observation ids that served as evidence.
"""

from townsim.gateway import Gateway, ScriptedBackend
from townsim.memory import MemoryStream
from townsim.reflection import ReflectionTrigger, reflection_due, run_reflection

gateway = Gateway(ScriptedBackend.from_records([
    {"template": "importance", "match": {}, "reply": "6"},
    {"template": "reflection_questions", "match": {},
     "reply": "1. What topic is Klaus Mueller passionate about?\n"
              "2. Who does Klaus Mueller spend his days with?\n"
              "3. What is Klaus Mueller working toward?"},
    {"template": "reflection_insights", "match": {},
     "reply": "Klaus Mueller is dedicated to his research on gentrification "
              "(because of 1, 2, 3)"},
]))

stream = MemoryStream("Klaus Mueller")
trigger = ReflectionTrigger()
day = [
    "Klaus Mueller is reading a book on gentrification",
    "Klaus Mueller is conversing with a librarian about his research project",
    "Klaus Mueller is writing a research paper",
    "Klaus Mueller is making notes in the margins",
    "Klaus Mueller is checking a census table",
    "Klaus Mueller is drafting his conclusion",
] * 5

fired = 0
for i, text in enumerate(day):
    stream.record("observation", text, now=i * 25, gateway=gateway)
    if reflection_due(trigger, stream):
        print(f"accumulator crossed {trigger.threshold} after memory #{i}; reflecting…")
        for reflection in run_reflection(stream, i * 25, gateway):
            print(f"  stored reflection #{reflection.id}: {reflection.description}")
            print(f"    cites: {list(reflection.citations)}")
        fired += 1

print(f"\n{fired} reflection cycles over the day")
print("every citation points at an earlier id, so chains always bottom out "
      "in plain observations — trees, never cycles.")
