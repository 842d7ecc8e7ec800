"""A three-agent scenario small enough to reason about by hand.

Ann runs a tea shop, Ben visits it mid-morning (scripted dialogue beat),
Cal putters at home. The map is one row of buildings over a street.
"""

GRID = [
    "##############################",
    "#....#....#....#....#........#",
    "#....#....#....#....#........#",
    "#....#....#....#....#........#",
    "#..#.##.###..#.##.###........#",
    "#............................#",
    "#............................#",
    "##############################",
]

TREE = {
    "name": "Littleton", "kind": "world", "children": [
        {"name": "Ann's house", "kind": "area", "children": [
            {"name": "bedroom", "kind": "subarea", "rect": [1, 1, 3, 4],
             "children": [
                 {"name": "bed", "kind": "object", "status": "made", "tiles": [[1, 1]]},
                 {"name": "stove", "kind": "object", "status": "off", "tiles": [[1, 3]]},
             ]},
        ]},
        {"name": "Ben's house", "kind": "area", "children": [
            {"name": "bedroom", "kind": "subarea", "rect": [1, 6, 3, 9],
             "children": [
                 {"name": "bed", "kind": "object", "status": "made", "tiles": [[1, 6]]},
             ]},
        ]},
        {"name": "Cal's house", "kind": "area", "children": [
            {"name": "bedroom", "kind": "subarea", "rect": [1, 11, 3, 14],
             "children": [
                 {"name": "bed", "kind": "object", "status": "made", "tiles": [[1, 11]]},
             ]},
        ]},
        {"name": "Tea shop", "kind": "area", "children": [
            {"name": "counter", "kind": "subarea", "rect": [1, 16, 3, 19],
             "children": [
                 {"name": "kettle", "kind": "object", "status": "cold", "tiles": [[1, 16]]},
             ]},
        ]},
        {"name": "Green", "kind": "area", "children": [
            {"name": "lawn", "kind": "subarea", "rect": [1, 21, 3, 24],
             "children": [
                 {"name": "bench", "kind": "object", "status": "empty", "tiles": [[1, 21]]},
             ]},
        ]},
    ],
}

ANN_DAY = ("1) making breakfast at 6:30 am [Ann's house: bedroom], "
           "2) opening the tea shop at 7:30 am [Tea shop: counter], "
           "3) serving tea through the morning at 9:00 am [Tea shop: counter], "
           "4) sweeping the shop at 2:00 pm [Tea shop: counter], "
           "5) closing up and walking home at 6:00 pm [Ann's house: bedroom], "
           "6) going to bed at 9:00 pm [Ann's house: bedroom]")

BEN_DAY = ("1) stretching at home at 7:00 am [Ben's house: bedroom], "
           "2) reading the almanac at 8:00 am [Ben's house: bedroom], "
           "3) coming by for his morning cup of tea at 10:00 am [Tea shop: counter], "
           "4) sitting on the green with his thoughts at 11:30 am [Green: lawn], "
           "5) pottering at home all afternoon at 1:00 pm [Ben's house: bedroom], "
           "6) going to bed at 9:30 pm [Ben's house: bedroom]")

CAL_DAY = ("1) waking slowly at 7:30 am [Cal's house: bedroom], "
           "2) fixing the squeaky door at 9:00 am [Cal's house: bedroom], "
           "3) napping at 12:00 pm [Cal's house: bedroom], "
           "4) watering the window box at 3:00 pm [Cal's house: bedroom], "
           "5) going to bed at 8:30 pm [Cal's house: bedroom]")


def script():
    return [
        {"template": "should_react",
         "match": {"name": "Ann Porter",
                   "observation": "coming by for his morning cup of tea"},
         "reply": "Yes. greet Ben and ask about his week"},
        {"template": "should_react",
         "match": {"name": "Ann Porter", "observation": "stove is burning"},
         "reply": "Yes. turn off the stove before it spreads"},
        {"template": "should_react", "match": {}, "reply": "No."},
        {"template": "dialogue_first",
         "match": {"name": "Ann Porter", "intent": "greet Ben and ask about his week"},
         "reply": "Morning, Ben! The usual? How has the week treated you?"},
        {"template": "dialogue_next",
         "match": {"name": "Ben Reyes", "history": "How has the week treated you?"},
         "reply": "Kindly enough, Ann. The usual, please. [end]"},
        {"template": "day_plan", "match": {"prior_day": "Replan the rest of today"},
         "reply": "continue with the rest of the planned schedule"},
        {"template": "day_plan", "match": {"name": "Ann Porter"}, "reply": ANN_DAY},
        {"template": "day_plan", "match": {"name": "Ben Reyes"}, "reply": BEN_DAY},
        {"template": "day_plan", "match": {"name": "Cal Umber"}, "reply": CAL_DAY},
        {"template": "decompose_hour", "match": {}, "reply": ""},
        {"template": "decompose_minute", "match": {}, "reply": ""},
        {"template": "importance", "match": {"description": "inner voice says"},
         "reply": "9"},
        {"template": "importance", "match": {}, "reply": "3"},
        {"template": "summary_core", "match": {}, "reply": "A Littleton regular."},
        {"template": "summary_occupation", "match": {}, "reply": "Keeps busy."},
        {"template": "summary_feeling", "match": {}, "reply": "Feels fine."},
        {"template": "reflection_questions", "match": {},
         "reply": "1. What fills this person's days?\n2. Who do they see?\n"
                  "3. What do they want?"},
        {"template": "reflection_insights", "match": {},
         "reply": "A quiet, regular life (because of 1, 2)"},
        {"template": "context_relationship", "match": {},
         "reply": "They are friendly acquaintances around Littleton."},
        {"template": "object_state", "match": {"action": "making breakfast"},
         "reply": "warming a pan"},
        {"template": "object_state", "match": {}, "reply": "in use"},
        {"template": "emoji", "match": {"action": "tea"}, "reply": "🍵"},
        {"template": "emoji", "match": {}, "reply": "💭"},
        {"template": "interview_answer",
         "match": {"question": "Do you know of Ben Reyes?", "context": "Ben Reyes"},
         "reply": "Yes, I know of Ben Reyes."},
        {"template": "interview_answer",
         "match": {"question": "Do you know of Ann Porter?", "context": "Ann Porter"},
         "reply": "Yes, I know of Ann Porter."},
        {"template": "interview_answer",
         "match": {"question": "Do you know of Cal Umber?", "context": "Cal Umber"},
         "reply": "Yes, I know of Cal Umber."},
        {"template": "interview_answer", "match": {"question": "Do you know of"},
         "reply": "No, I don't believe I know them."},
        {"template": "interview_answer", "match": {},
         "reply": "I'm not quite sure what to say to that."},
    ]


def scenario_dict():
    import copy

    return {
        "schema_version": 1,
        "name": "smalltown",
        "epoch_date": "2023-02-13",
        "grid": list(GRID),
        "tree": copy.deepcopy(TREE),
        "agents": [
            {"name": "Ann Porter", "age": 41, "traits": "brisk, kindly",
             "seed": "Ann Porter runs the Littleton tea shop; "
                     "Ann Porter is friends with Ben Reyes",
             "home": "Ann's house: bedroom",
             "bed": "Ann's house: bedroom: bed",
             "known_areas": ["Ann's house", "Tea shop", "Green"]},
            {"name": "Ben Reyes", "age": 67, "traits": "slow, cheerful",
             "seed": "Ben Reyes is retired and visits the tea shop daily; "
                     "Ben Reyes is friends with Ann Porter",
             "home": "Ben's house: bedroom",
             "bed": "Ben's house: bedroom: bed",
             "known_areas": ["Ben's house", "Tea shop", "Green"]},
            {"name": "Cal Umber", "age": 35, "traits": "private, tidy",
             "seed": "Cal Umber keeps to himself and fixes things",
             "home": "Cal's house: bedroom",
             "bed": "Cal's house: bedroom: bed",
             "known_areas": ["Cal's house", "Green"]},
        ],
        "script": script(),
        "config": {},
    }
