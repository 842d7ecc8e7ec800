"""Walkthrough: the memory stream and scored retrieval.

Builds a small stream for a cafe owner, then shows how recency,
importance, and relevance combine (after min-max scaling) to pick which
memories surface for a query.
"""

from townsim.gateway import Gateway, ScriptedBackend
from townsim.memory import MemoryStream, RetrievalConfig, RetrievalQuery, recency_score

gateway = Gateway(ScriptedBackend.from_records([
    {"template": "importance", "match": {"description": "party"}, "reply": "8"},
    {"template": "importance", "match": {"description": "refrigerator"}, "reply": "1"},
    {"template": "importance", "match": {}, "reply": "3"},
]))

stream = MemoryStream("Isabella Rodriguez")
HOUR = 60
events = [
    (7 * HOUR, "Isabella Rodriguez is setting out the pastries"),
    (8 * HOUR, "The refrigerator is empty"),
    (9 * HOUR, "Maria Lopez is studying for a chemistry test while drinking coffee"),
    (10 * HOUR, "Isabella Rodriguez is ordering decorations for the party"),
    (11 * HOUR, "Isabella Rodriguez is researching ideas for the party"),
    (12 * HOUR, "The cafe tables are wiped and shining"),
]
for now, text in events:
    memory = stream.record("observation", text, now, gateway)
    print(f"  recorded #{memory.id} (importance {memory.importance}): {text}")

print("\nrecency decays per game hour:",
      ", ".join(f"{h}h={recency_score(h * 60, 0, 0.995):.4f}" for h in (0, 10, 100)))

question = "What are you looking forward to the most right now?"
query = RetrievalQuery(question, gateway.embed(question), now=13 * HOUR, budget=40)
print(f"\nquery: {question}")
for memory in stream.retrieve(query, RetrievalConfig()):
    print(f"  -> {memory.description}")
print("\nparty planning outranks the idle refrigerator: relevance pulls the "
      "query's own words forward, importance lifts poignant records.")
