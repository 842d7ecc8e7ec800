"""Builder for the bundled 25-agent Valentine scenario.

Everything here is authored content: the town raster, the environment
tree, the agent roster with seed relationships, two days of schedules,
and the deterministic gateway script (storyline dialogues plus generic
fallbacks). The scenario is engineered so its emergent measurements land
on fixed targets: the party item diffuses from 1 holder to 13 of 25, the
candidacy item from 1 to 8, five of the twelve invited agents reach the
party, and the mutual-knowledge network densifies from 0.167 to 0.74.

Run ``python -m townsim.data.valentine_builder`` to regenerate
``valentine.json``; a test pins the bundled file to this builder's output.
"""

from __future__ import annotations

import json
from pathlib import Path

GRID_H, GRID_W = 40, 100

PARTY_PHRASE = "Valentine's Day party"
CANDIDACY_PHRASE = "running for mayor"
PARTY_QUESTION = "Did you know there is a Valentine's Day party?"
CANDIDACY_QUESTION = "Do you know who is running for mayor?"
RESUME = "continue with the rest of the planned schedule"

PARTY_INVITED = [
    "Maria Lopez", "Tom Moreno", "Sam Moore", "John Lin", "Mei Lin",
    "Jennifer Moore", "Abigail Chen", "Latoya Williams", "Klaus Mueller",
    "Priya Desai", "Eddy Lin", "Wolfgang Schulz",
]
PARTY_ATTENDEES = ["Klaus Mueller", "Maria Lopez", "Tom Moreno",
                   "Jennifer Moore", "Abigail Chen"]
PARTY_LOCATION = "Hobbs Cafe: seating area"
PARTY_WINDOW = (1440 + 17 * 60, 1440 + 19 * 60)


# --- town geometry ----------------------------------------------------------
#
# Rooms are free-standing boxes (6 rows tall, 6 cols wide, 4x4 interiors)
# with one door onto a street. A 4x4 interior keeps any two occupants
# within the Chebyshev vision radius of 4.

BOX_H, BOX_W = 6, 6


class TownBuilder:
    def __init__(self):
        self.grid = [["."] * GRID_W for _ in range(GRID_H)]
        for c in range(GRID_W):
            self.grid[0][c] = "#"
            self.grid[GRID_H - 1][c] = "#"
        for r in range(GRID_H):
            self.grid[r][0] = "#"
            self.grid[r][GRID_W - 1] = "#"
        self.areas: list[dict] = []

    def box(self, r0: int, c0: int, door: str) -> dict:
        """Stamp one 6x6 walled room; returns its interior rect."""
        for c in range(c0, c0 + BOX_W):
            self.grid[r0][c] = "#"
            self.grid[r0 + BOX_H - 1][c] = "#"
        for r in range(r0, r0 + BOX_H):
            self.grid[r][c0] = "#"
            self.grid[r][c0 + BOX_W - 1] = "#"
        mid = c0 + BOX_W // 2
        if door == "S":
            self.grid[r0 + BOX_H - 1][mid] = "."
        else:
            self.grid[r0][mid] = "."
        return {"rect": [r0 + 1, c0 + 1, r0 + BOX_H - 2, c0 + BOX_W - 2]}

    def patch(self, r0: int, c0: int, h: int = 4, w: int = 4) -> dict:
        """Open, unwalled ground (gardens, park lawns)."""
        return {"rect": [r0, c0, r0 + h - 1, c0 + w - 1]}


def interior_tile(rect: list[int], index: int) -> list[int]:
    r0, c0, r1, c1 = rect
    width = c1 - c0 + 1
    return [r0 + index // width, c0 + index % width]


def build_world() -> tuple[list[str], dict]:
    t = TownBuilder()
    areas: list[dict] = []

    def area(name: str, subareas: list[tuple[str, dict, list[tuple[str, str, int]]]]):
        children = []
        for sub_name, rect, objects in subareas:
            obj_children = [
                {"name": obj_name, "kind": "object", "status": status,
                 "tiles": [interior_tile(rect["rect"], tile_index)]}
                for obj_name, status, tile_index in objects
            ]
            children.append({"name": sub_name, "kind": "subarea",
                             "rect": rect["rect"], "children": obj_children})
        areas.append({"name": name, "kind": "area", "children": children})

    # Band A (rows 2-7): north residential, doors south onto street rows 8-10
    area("Yuriko Yamamoto's house", [
        ("main room", t.box(2, 2, "S"), [("bed", "made", 3), ("workbench", "tidy", 0)]),
    ])
    area("The Lin family's house", [
        ("kitchen", t.box(2, 10, "S"), [("stove", "off", 0), ("refrigerator", "stocked", 3)]),
        ("common room", t.box(2, 16, "S"), [("dining table", "clear", 5)]),
        ("Eddy Lin's bedroom", t.box(2, 22, "S"), [("bed", "made", 3), ("desk", "tidy", 0)]),
        ("Mei and John Lin's bedroom", t.box(2, 28, "S"), [("bed", "made", 3)]),
        ("bathroom", t.box(2, 34, "S"), [("shower", "off", 0)]),
        ("garden", t.patch(3, 41, 4, 4), [("house garden", "dormant for winter", 5)]),
    ])
    area("The Moore family's house", [
        ("common room", t.box(2, 47, "S"), [("armchair", "worn", 5)]),
        ("bedroom", t.box(2, 53, "S"), [("bed", "made", 3)]),
        ("garden", t.patch(3, 60, 4, 4), [("rose trellis", "bare", 5)]),
    ])
    area("The Moreno family's house", [
        ("common room", t.box(2, 66, "S"), [("radio", "off", 5)]),
        ("bedroom", t.box(2, 72, "S"), [("bed", "made", 3)]),
    ])
    area("Adam Smith's house", [
        ("study", t.box(2, 78, "S"), [("bed", "made", 3), ("bookshelf", "overflowing", 0)]),
    ])
    area("Tamara and Carmen's house", [
        ("Tamara Taylor's room", t.box(2, 84, "S"), [("bed", "made", 3), ("writing desk", "cluttered", 0)]),
        ("Carmen Ortiz's room", t.box(2, 90, "S"), [("bed", "made", 3)]),
    ])

    # Band B (rows 11-16): college, dorm, artists, Isabella; doors north
    area("Oak Hill College", [
        ("classroom", t.box(11, 2, "N"), [("blackboard", "clean", 1)]),
        ("library", t.box(11, 8, "N"), [("library desk", "unoccupied", 5),
                                        ("bookcase", "organized", 0)]),
    ])
    area("Oak Hill College Dorm", [
        ("Klaus Mueller's room", t.box(11, 16, "N"), [("bed", "made", 3), ("desk", "stacked with papers", 0)]),
        ("Maria Lopez's room", t.box(11, 22, "N"), [("bed", "made", 3)]),
        ("Wolfgang Schulz's room", t.box(11, 28, "N"), [("bed", "made", 3)]),
        ("Ayesha Khan's room", t.box(11, 34, "N"), [("bed", "made", 3)]),
        ("dorm bathroom", t.box(11, 40, "N"), [("sink", "dripping", 0)]),
    ])
    area("The artist co-living space", [
        ("Abigail Chen's room", t.box(11, 48, "N"), [("bed", "made", 3), ("drawing tablet", "charging", 0)]),
        ("Rajiv Patel's room", t.box(11, 54, "N"), [("bed", "made", 3)]),
        ("Latoya Williams's room", t.box(11, 60, "N"), [("bed", "made", 3)]),
        ("studio", t.box(11, 66, "N"), [("easel", "idle", 5), ("darkroom bench", "idle", 0)]),
    ])
    area("Isabella's apartment", [
        ("main room", t.box(11, 74, "N"), [("bed", "made", 7)]),
        ("kitchen", t.box(11, 80, "N"), [("stove", "off", 4)]),
    ])
    area("The town apartments", [
        ("Priya Desai's room", t.box(11, 88, "N"), [("bed", "made", 3)]),
    ])

    # Band C (rows 20-25): commerce; doors north onto street rows 17-19
    areas_c = [
        ("Hobbs Cafe", [
            ("counter", t.box(20, 2, "N"), [("coffee machine", "off", 1),
                                            ("pastry display", "stocked", 3)]),
            ("seating area", t.box(20, 8, "N"), [("cafe tables", "wiped", 5)]),
        ]),
        ("The Willows Market and Pharmacy", [
            ("pharmacy counter", t.box(20, 16, "N"), [("medicine cabinet", "locked", 1)]),
            ("grocery aisles", t.box(20, 22, "N"), [("shelves", "stocked", 5)]),
        ]),
        ("Harvey Oak Supply Store", [
            ("storefront", t.box(20, 30, "N"), [("hardware counter", "tidy", 1)]),
        ]),
        ("The Rose and Crown Pub", [
            ("bar", t.box(20, 38, "N"), [("beer taps", "polished", 1)]),
            ("pub tables", t.box(20, 44, "N"), [("dartboard", "idle", 3)]),
        ]),
    ]
    for name, subs in areas_c:
        area(name, subs)

    # remaining town apartment rooms share band C's east end
    apartments = areas[next(i for i, a in enumerate(areas)
                            if a["name"] == "The town apartments")]
    for i, resident in enumerate(["Marcus Webb", "Elena Sokolova", "Omar Haddad",
                                  "Grace Kim", "Diego Alvarez"]):
        rect = t.box(20, 52 + i * 6, "N")
        apartments["children"].append({
            "name": f"{resident}'s room", "kind": "subarea", "rect": rect["rect"],
            "children": [{"name": "bed", "kind": "object", "status": "made",
                          "tiles": [interior_tile(rect["rect"], 3)]}],
        })

    # Band D (rows 29-37): Johnson Park, open lawns around a blocked pond
    pond_rect = [31, 30, 33, 33]
    for r in range(pond_rect[0], pond_rect[2] + 1):
        for c in range(pond_rect[1], pond_rect[3] + 1):
            t.grid[r][c] = "#"
    area("Johnson Park", [
        ("lawn", t.patch(29, 6, 4, 4), [("picnic bench", "empty", 5)]),
        ("pond side", t.patch(30, 35, 4, 4), [("park bench", "empty", 5),
                                              ("duck pond", "frozen over", 0)]),
        ("bandstand", t.patch(29, 48, 4, 4), [("bandstand steps", "swept", 5)]),
        ("trailhead", t.patch(29, 60, 4, 4), [("notice board", "faded", 5)]),
    ])

    grid = ["".join(row) for row in t.grid]
    tree = {"name": "Smallville", "kind": "world", "children": areas}
    return grid, tree


# --- roster -------------------------------------------------------------------

L = {
    "yuriko_home": "Yuriko Yamamoto's house: main room",
    "lin_kitchen": "The Lin family's house: kitchen",
    "lin_common": "The Lin family's house: common room",
    "eddy_room": "The Lin family's house: Eddy Lin's bedroom",
    "lin_bedroom": "The Lin family's house: Mei and John Lin's bedroom",
    "lin_garden": "The Lin family's house: garden",
    "moore_common": "The Moore family's house: common room",
    "moore_bedroom": "The Moore family's house: bedroom",
    "moore_garden": "The Moore family's house: garden",
    "moreno_common": "The Moreno family's house: common room",
    "moreno_bedroom": "The Moreno family's house: bedroom",
    "adam_study": "Adam Smith's house: study",
    "tamara_room": "Tamara and Carmen's house: Tamara Taylor's room",
    "carmen_room": "Tamara and Carmen's house: Carmen Ortiz's room",
    "classroom": "Oak Hill College: classroom",
    "library": "Oak Hill College: library",
    "klaus_room": "Oak Hill College Dorm: Klaus Mueller's room",
    "maria_room": "Oak Hill College Dorm: Maria Lopez's room",
    "wolfgang_room": "Oak Hill College Dorm: Wolfgang Schulz's room",
    "ayesha_room": "Oak Hill College Dorm: Ayesha Khan's room",
    "abigail_room": "The artist co-living space: Abigail Chen's room",
    "rajiv_room": "The artist co-living space: Rajiv Patel's room",
    "latoya_room": "The artist co-living space: Latoya Williams's room",
    "studio": "The artist co-living space: studio",
    "isabella_room": "Isabella's apartment: main room",
    "isabella_kitchen": "Isabella's apartment: kitchen",
    "cafe_counter": "Hobbs Cafe: counter",
    "cafe_seating": "Hobbs Cafe: seating area",
    "pharmacy": "The Willows Market and Pharmacy: pharmacy counter",
    "grocery": "The Willows Market and Pharmacy: grocery aisles",
    "supply": "Harvey Oak Supply Store: storefront",
    "bar": "The Rose and Crown Pub: bar",
    "pub_tables": "The Rose and Crown Pub: pub tables",
    "priya_room": "The town apartments: Priya Desai's room",
    "marcus_room": "The town apartments: Marcus Webb's room",
    "elena_room": "The town apartments: Elena Sokolova's room",
    "omar_room": "The town apartments: Omar Haddad's room",
    "grace_room": "The town apartments: Grace Kim's room",
    "diego_room": "The town apartments: Diego Alvarez's room",
    "lawn": "Johnson Park: lawn",
    "pond": "Johnson Park: pond side",
    "bandstand": "Johnson Park: bandstand",
    "trailhead": "Johnson Park: trailhead",
}

# (name, age, traits, occupation phrases, home area key, bed room key)
ROSTER = [
    ("Isabella Rodriguez", 34, "warm, welcoming, organized",
     ["Isabella Rodriguez owns Hobbs Cafe and runs it every day from morning to evening",
      "Isabella Rodriguez is planning a Valentine's Day party at Hobbs Cafe on "
      "February 14th from 5 to 7 pm and wants to invite her friends and customers"],
     "isabella_room", "isabella_room"),
    ("Maria Lopez", 21, "energetic, kind, a little shy",
     ["Maria Lopez is a student at Oak Hill College studying physics and working "
      "part time on problem sets",
      "Maria Lopez has a secret crush on Klaus Mueller"],
     "maria_room", "maria_room"),
    ("Klaus Mueller", 20, "earnest, studious, idealistic",
     ["Klaus Mueller is a student at Oak Hill College studying sociology",
      "Klaus Mueller is writing a research paper on the effects of gentrification "
      "in low-income communities"],
     "klaus_room", "klaus_room"),
    ("Sam Moore", 68, "steady, civic-minded, talkative",
     ["Sam Moore is a retired carpenter who has lived in Smallville his whole life",
      "Sam Moore has decided he is running for mayor in the upcoming local election"],
     "moore_bedroom", "moore_bedroom"),
    ("Jennifer Moore", 65, "gentle, observant, patient",
     ["Jennifer Moore is a watercolor painter who paints the park in every season"],
     "moore_bedroom", "moore_bedroom"),
    ("John Lin", 45, "patient, kind, helpful",
     ["John Lin is a pharmacy shopkeeper at the Willows Market and Pharmacy who "
      "loves to help people"],
     "lin_bedroom", "lin_bedroom"),
    ("Mei Lin", 44, "thoughtful, curious, warm",
     ["Mei Lin is a college professor who teaches the morning seminar at Oak Hill College"],
     "lin_bedroom", "lin_bedroom"),
    ("Eddy Lin", 19, "friendly, outgoing, hospitable",
     ["Eddy Lin is a student at Oak Hill College studying music theory and composition",
      "Eddy Lin is working on a new composition for his college class"],
     "eddy_room", "eddy_room"),
    ("Tom Moreno", 52, "plainspoken, loyal, wry",
     ["Tom Moreno co-owns the Willows Market and Pharmacy and manages the grocery side"],
     "moreno_bedroom", "moreno_bedroom"),
    ("Jane Moreno", 50, "practical, green-thumbed, cheerful",
     ["Jane Moreno is a gardener who keeps half the window boxes in town alive"],
     "moreno_bedroom", "moreno_bedroom"),
    ("Yuriko Yamamoto", 28, "precise, dry-humored, generous",
     ["Yuriko Yamamoto is a software engineer who works from her home workbench"],
     "yuriko_home", "yuriko_home"),
    ("Tamara Taylor", 30, "imaginative, private, wry",
     ["Tamara Taylor writes children's books at the writing desk in her room"],
     "tamara_room", "tamara_room"),
    ("Carmen Ortiz", 40, "brisk, dependable, sharp-eyed",
     ["Carmen Ortiz runs the Harvey Oak Supply Store"],
     "carmen_room", "carmen_room"),
    ("Wolfgang Schulz", 21, "wry, analytical, night-owl",
     ["Wolfgang Schulz is a mathematics student at Oak Hill College who lives in the dorm"],
     "wolfgang_room", "wolfgang_room"),
    ("Ayesha Khan", 20, "articulate, driven, warm",
     ["Ayesha Khan is a literature student at Oak Hill College writing a senior "
      "thesis on the use of language in Shakespeare's plays"],
     "ayesha_room", "ayesha_room"),
    ("Abigail Chen", 25, "playful, inventive, focused",
     ["Abigail Chen is an animator who storyboards in the artist co-living space"],
     "abigail_room", "abigail_room"),
    ("Rajiv Patel", 32, "quiet, disciplined, poetic",
     ["Rajiv Patel is a painter preparing canvases for his upcoming show"],
     "rajiv_room", "rajiv_room"),
    ("Latoya Williams", 29, "candid, adventurous, meticulous",
     ["Latoya Williams is a photographer shooting a winter series of Smallville"],
     "latoya_room", "latoya_room"),
    ("Adam Smith", 70, "wry, bookish, sociable",
     ["Adam Smith is a retired economics lecturer who writes book reviews"],
     "adam_study", "adam_study"),
    ("Priya Desai", 38, "quick, warm, unflappable",
     ["Priya Desai tends bar at the Rose and Crown Pub most evenings"],
     "priya_room", "priya_room"),
    ("Marcus Webb", 47, "genial, punctual, booming-voiced",
     ["Marcus Webb teaches history at Oak Hill College"],
     "marcus_room", "marcus_room"),
    ("Elena Sokolova", 55, "soft-spoken, exacting, kind",
     ["Elena Sokolova is the librarian at the Oak Hill College library"],
     "elena_room", "elena_room"),
    ("Omar Haddad", 42, "easygoing, sturdy, early-riser",
     ["Omar Haddad works the grocery aisles at the Willows Market and Pharmacy"],
     "omar_room", "omar_room"),
    ("Grace Kim", 26, "attentive, upbeat, organized",
     ["Grace Kim is the pharmacy assistant at the Willows Market and Pharmacy"],
     "grace_room", "grace_room"),
    ("Diego Alvarez", 33, "outdoorsy, calm, handy",
     ["Diego Alvarez is the groundskeeper for Johnson Park"],
     "diego_room", "diego_room"),
]

# mutual seed relationships: both sides mention the other by full name.
# these pairs define the starting mutual-knowledge graph (50 edges).
MUTUAL = [
    ("John Lin", "Mei Lin", "is married to"),
    ("John Lin", "Eddy Lin", "is the parent of"),
    ("Mei Lin", "Eddy Lin", "is the parent of"),
    ("Sam Moore", "Jennifer Moore", "is married to"),
    ("Tom Moreno", "Jane Moreno", "is married to"),
    ("Tamara Taylor", "Carmen Ortiz", "shares a house with"),
    ("Abigail Chen", "Rajiv Patel", "shares the studio with"),
    ("Abigail Chen", "Latoya Williams", "shares the studio with"),
    ("Rajiv Patel", "Latoya Williams", "shares the studio with"),
    ("Klaus Mueller", "Wolfgang Schulz", "lives down the dorm hall from"),
    ("Klaus Mueller", "Maria Lopez", "studies alongside"),
    ("Maria Lopez", "Wolfgang Schulz", "studies alongside"),
    ("Ayesha Khan", "Klaus Mueller", "studies alongside"),
    ("Ayesha Khan", "Maria Lopez", "studies alongside"),
    ("Ayesha Khan", "Wolfgang Schulz", "studies alongside"),
    ("John Lin", "Sam Moore", "has known the next-door neighbor"),
    ("John Lin", "Jennifer Moore", "has known the next-door neighbor"),
    ("John Lin", "Yuriko Yamamoto", "knows the neighbor"),
    ("Mei Lin", "Jennifer Moore", "trades recipes with"),
    ("John Lin", "Tom Moreno", "works alongside"),
    ("John Lin", "Grace Kim", "works alongside"),
    ("Tom Moreno", "Omar Haddad", "works alongside"),
    ("Omar Haddad", "Grace Kim", "works alongside"),
    ("Isabella Rodriguez", "Maria Lopez", "is close friends with"),
    ("Isabella Rodriguez", "Tom Moreno", "serves a daily espresso to"),
    ("Isabella Rodriguez", "Sam Moore", "serves morning decaf to"),
    ("Isabella Rodriguez", "John Lin", "is friends with"),
    ("Isabella Rodriguez", "Abigail Chen", "saves the window table for"),
    ("Mei Lin", "Klaus Mueller", "supervises the coursework of"),
    ("Mei Lin", "Marcus Webb", "teaches alongside"),
    ("Marcus Webb", "Elena Sokolova", "has worked for years with"),
    ("Elena Sokolova", "Klaus Mueller", "sets aside research books for"),
    ("Elena Sokolova", "Ayesha Khan", "sets aside folios for"),
    ("Priya Desai", "Tom Moreno", "pours the usual for"),
    ("Priya Desai", "Diego Alvarez", "is friends with"),
    ("Priya Desai", "Marcus Webb", "hosts the quiz night of"),
    ("Diego Alvarez", "Latoya Williams", "swaps park stories with"),
    ("Adam Smith", "Sam Moore", "is an old friend of"),
    ("Adam Smith", "Jennifer Moore", "is an old friend of"),
    ("Adam Smith", "Elena Sokolova", "plays chess with"),
    ("Tamara Taylor", "Jane Moreno", "is in the garden club with"),
    ("Carmen Ortiz", "Jane Moreno", "is in the garden club with"),
    ("Yuriko Yamamoto", "Mei Lin", "is friends with"),
    ("Jennifer Moore", "Jane Moreno", "is in the garden club with"),
    ("Eddy Lin", "Wolfgang Schulz", "trades study snacks with"),
    ("Eddy Lin", "Klaus Mueller", "knows from the dorm common hours"),
    ("Marcus Webb", "Diego Alvarez", "hikes on weekends with"),
    ("Omar Haddad", "Diego Alvarez", "plays darts with"),
    ("Grace Kim", "Priya Desai", "is friends with"),
    ("Latoya Williams", "Priya Desai", "photographed the pub for"),
]

# one-directional: the first knows OF the second; not reciprocated.
ONE_WAY = [
    ("John Lin", "Tamara Taylor", "knows of the neighbor"),
    ("John Lin", "Carmen Ortiz", "knows of the neighbor"),
]


# --- two-day schedules --------------------------------------------------------
#
# Entries are (start clock, description, location key). Descriptions double
# as action texts ("<name> is <description>"), so storyline beat targets get
# unique wording, and every description carries its weekday so re-encounters
# on day two still register as fresh percepts.

def _sched() -> dict[str, tuple[list, list]]:
    s: dict[str, tuple[list, list]] = {}

    s["Isabella Rodriguez"] = (
        [
            ("6:00 am", "making her Monday breakfast at the stove", "isabella_kitchen"),
            ("6:40 am", "opening the cafe and warming the ovens at the counter", "cafe_counter"),
            ("8:25 am", "making espresso for a customer @ Hobbs Cafe: counter: coffee machine", "cafe_counter"),
            ("8:45 am", "serving the Monday morning crowd at the counter", "cafe_counter"),
            ("12:00 pm", "running the Monday lunch counter", "cafe_counter"),
            ("2:30 pm", "baking tarts for tomorrow at the counter", "cafe_counter"),
            ("6:00 pm", "closing out the register on Monday evening", "cafe_counter"),
            ("9:00 pm", "getting ready for bed in her Monday apartment quiet", "isabella_room"),
        ],
        [
            ("6:00 am", "making her Tuesday breakfast at the stove", "isabella_kitchen"),
            ("6:40 am", "opening the cafe on Valentine's morning at the counter", "cafe_counter"),
            ("12:00 pm", "running the Tuesday lunch counter", "cafe_counter"),
            ("1:30 pm", "decorating the cafe for the occasion", "cafe_seating"),
            ("4:30 pm", "setting out cider and sweets for the evening", "cafe_seating"),
            ("5:00 pm", "hosting her guests at the cafe celebration", "cafe_seating"),
            ("7:00 pm", "tidying the cafe after the celebration", "cafe_seating"),
            ("9:30 pm", "getting ready for bed after a long Tuesday", "isabella_room"),
        ],
    )

    s["Maria Lopez"] = (
        [
            ("6:50 am", "getting ready for Monday classes in her dorm room", "maria_room"),
            ("7:15 am", "ordering a morning coffee before class at the counter", "cafe_counter"),
            ("8:10 am", "reviewing problem sets in her dorm room", "maria_room"),
            ("9:40 am", "attending the Monday morning seminar", "classroom"),
            ("12:10 pm", "eating a packed Monday lunch in her dorm room", "maria_room"),
            ("2:00 pm", "working through physics drills in her room", "maria_room"),
            ("7:20 pm", "walking over to the library before it closes", "library"),
            ("9:30 pm", "winding down for the night in the dorm", "maria_room"),
        ],
        [
            ("7:00 am", "getting ready on Valentine's morning in her dorm", "maria_room"),
            ("9:40 am", "attending the Tuesday morning seminar", "classroom"),
            ("12:10 pm", "eating lunch with her notes on Tuesday", "maria_room"),
            ("1:40 pm", "helping hang garlands in the seating area", "cafe_seating"),
            ("4:40 pm", "arriving early to help greet party guests", "cafe_seating"),
            ("7:10 pm", "walking Klaus back toward the dorm", "maria_room"),
            ("9:30 pm", "falling asleep happy on Tuesday night", "maria_room"),
        ],
    )

    s["Klaus Mueller"] = (
        [
            ("7:10 am", "starting Monday with notes at his dorm desk", "klaus_room"),
            ("9:40 am", "attending the Monday morning seminar", "classroom"),
            ("12:10 pm", "eating a quiet Monday lunch in his room", "klaus_room"),
            ("1:05 pm", "reading a book on urban housing at the library desk", "library"),
            ("4:30 pm", "drafting his paper at his dorm desk", "klaus_room"),
            ("7:10 pm", "reading at the library desk in the evening", "library"),
            ("9:40 pm", "turning in for the night in the dorm", "klaus_room"),
        ],
        [
            ("7:20 am", "rereading his draft on Tuesday morning", "klaus_room"),
            ("9:40 am", "attending the Tuesday morning seminar", "classroom"),
            ("12:10 pm", "having a Tuesday lunch over his notes", "klaus_room"),
            ("2:00 pm", "pressing his good shirt before the evening", "klaus_room"),
            ("4:35 pm", "walking with Maria to the cafe celebration", "cafe_seating"),
            ("7:10 pm", "saying goodnight after the celebration", "klaus_room"),
            ("10:00 pm", "turning in late on Tuesday night", "klaus_room"),
        ],
    )

    s["Sam Moore"] = (
        [
            ("6:30 am", "reading the Monday paper in his armchair", "moore_common"),
            ("8:50 am", "coming by the cafe for a cup of decaf", "cafe_counter"),
            ("10:20 am", "picking up Monday groceries at the market", "grocery"),
            ("11:20 am", "picking up his blood pressure prescription at the pharmacy counter", "pharmacy"),
            ("12:30 pm", "having soup with Jennifer at home on Monday", "moore_common"),
            ("2:45 pm", "resting on the park bench by the pond", "pond"),
            ("5:30 pm", "drafting campaign notes in his armchair", "moore_common"),
            ("9:30 pm", "turning in early on Monday night", "moore_bedroom"),
        ],
        [
            ("6:30 am", "going over his campaign notes on Tuesday morning", "moore_common"),
            ("10:50 am", "taking his morning constitutional around the pond", "pond"),
            ("12:20 pm", "sharing a Valentine's lunch with Jennifer at home", "moore_common"),
            ("2:50 pm", "joining the garden-club stroll on the lawn", "lawn"),
            ("5:00 pm", "hosting a campaign supper for two at home", "moore_common"),
            ("9:30 pm", "turning in on Tuesday night", "moore_bedroom"),
        ],
    )

    s["Jennifer Moore"] = (
        [
            ("7:00 am", "sketching the Monday light from the common room", "moore_common"),
            ("10:30 am", "browsing preserves in the grocery aisles", "grocery"),
            ("12:30 pm", "sharing Monday soup with Sam at home", "moore_common"),
            ("1:30 pm", "sitting down for afternoon tea at the cafe", "cafe_counter"),
            ("2:40 pm", "painting the frozen pond from her easel stool", "pond"),
            ("5:30 pm", "cleaning her brushes before Monday supper", "moore_common"),
            ("9:30 pm", "going to bed with a mystery novel", "moore_bedroom"),
        ],
        [
            ("7:00 am", "framing a small painting as a Valentine's gift", "moore_common"),
            ("10:00 am", "attending the public history lecture at the college", "classroom"),
            ("12:20 pm", "having a Valentine's lunch with Sam at home", "moore_common"),
            ("2:50 pm", "trading cuttings at the garden-club stroll", "lawn"),
            ("4:45 pm", "walking over for the evening at the cafe", "cafe_seating"),
            ("7:15 pm", "telling Sam about the evening at home", "moore_common"),
            ("9:30 pm", "going to bed on Tuesday night", "moore_bedroom"),
        ],
    )

    s["John Lin"] = (
        [
            ("6:40 am", "making Monday breakfast for the family", "lin_kitchen"),
            ("8:10 am", "opening the pharmacy counter for the week", "pharmacy"),
            ("12:05 pm", "having a quick lunch at the cafe between pharmacy shifts", "cafe_counter"),
            ("12:35 pm", "eating his sandwich in the cafe seating area", "cafe_seating"),
            ("1:10 pm", "working the Monday afternoon pharmacy shift", "pharmacy"),
            ("4:30 pm", "reading the newspaper in the garden", "lin_garden"),
            ("6:20 pm", "meeting Tom for an after-work pint at the bar", "bar"),
            ("9:45 pm", "getting ready for bed on Monday night", "lin_bedroom"),
        ],
        [
            ("6:40 am", "making Tuesday breakfast for the family", "lin_kitchen"),
            ("8:10 am", "restocking prescriptions on Tuesday morning", "pharmacy"),
            ("12:15 pm", "eating a packed lunch behind the pharmacy counter", "pharmacy"),
            ("1:10 pm", "working the Tuesday afternoon pharmacy shift", "pharmacy"),
            ("5:10 pm", "finishing the Valentine's day inventory at the pharmacy", "pharmacy"),
            ("8:00 pm", "having a late supper with Mei at home", "lin_common"),
            ("10:00 pm", "getting ready for bed on Tuesday night", "lin_bedroom"),
        ],
    )

    s["Mei Lin"] = (
        [
            ("6:40 am", "having Monday breakfast with the family", "lin_kitchen"),
            ("9:30 am", "teaching the Monday morning seminar", "classroom"),
            ("12:30 pm", "taking her lunch break at the cafe with a book", "cafe_counter"),
            ("1:05 pm", "reading over coffee in the cafe seating area", "cafe_seating"),
            ("2:10 pm", "holding Monday office hours in the classroom", "classroom"),
            ("5:20 pm", "grading papers in the common room", "lin_common"),
            ("9:45 pm", "getting ready for bed on Monday", "lin_bedroom"),
        ],
        [
            ("6:40 am", "having Tuesday breakfast with the family", "lin_kitchen"),
            ("9:30 am", "teaching the Tuesday morning seminar", "classroom"),
            ("12:10 pm", "trying the Tuesday lunch special at the cafe", "cafe_counter"),
            ("12:50 pm", "lingering over tea in the cafe seating area", "cafe_seating"),
            ("2:10 pm", "preparing Wednesday's lecture in the classroom", "classroom"),
            ("5:30 pm", "grading the Tuesday quizzes at home", "lin_common"),
            ("8:00 pm", "having a late supper with John at home", "lin_common"),
            ("10:00 pm", "getting ready for bed on Tuesday", "lin_bedroom"),
        ],
    )

    s["Eddy Lin"] = (
        [
            ("7:20 am", "eating Monday breakfast with his parents", "lin_kitchen"),
            ("9:40 am", "attending the Monday morning seminar", "classroom"),
            ("12:15 pm", "having Monday lunch at home with his notes", "lin_common"),
            ("1:00 pm", "working on his new composition at his desk", "eddy_room"),
            ("4:45 pm", "taking a short walk around the garden to clear his head", "lin_garden"),
            ("5:30 pm", "playing back his draft melody at his desk", "eddy_room"),
            ("8:30 pm", "listening to records before bed", "eddy_room"),
            ("10:15 pm", "going to sleep on Monday night", "eddy_room"),
        ],
        [
            ("7:10 am", "getting ready quickly on Tuesday morning", "eddy_room"),
            ("8:05 am", "grabbing a pastry before heading to class", "cafe_counter"),
            ("9:40 am", "attending the Tuesday morning seminar", "classroom"),
            ("12:15 pm", "eating Tuesday lunch at home", "lin_common"),
            ("1:30 pm", "recording a rough cut of his composition", "eddy_room"),
            ("6:40 pm", "celebrating his finished draft with a soda at the bar", "bar"),
            ("9:00 pm", "walking home humming his melody", "eddy_room"),
            ("10:15 pm", "going to sleep on Tuesday night", "eddy_room"),
        ],
    )

    s["Tom Moreno"] = (
        [
            ("6:20 am", "eating an early Monday breakfast at home", "moreno_common"),
            ("7:00 am", "unlocking the market for the Monday delivery", "grocery"),
            ("8:20 am", "stopping in for his morning espresso at the counter", "cafe_counter"),
            ("8:50 am", "restocking the Monday shelves at the market", "grocery"),
            ("12:40 pm", "eating lunch on a crate in the stockroom", "grocery"),
            ("3:00 pm", "tallying Monday invoices at the market", "grocery"),
            ("6:10 pm", "settling onto his usual stool at the bar", "bar"),
            ("9:50 pm", "heading to bed after the Monday shift", "moreno_bedroom"),
        ],
        [
            ("6:20 am", "eating an early Tuesday breakfast at home", "moreno_common"),
            ("7:00 am", "signing for the Valentine's flower delivery at the market", "grocery"),
            ("9:00 am", "arranging the Tuesday produce displays", "grocery"),
            ("12:40 pm", "eating a quick Tuesday lunch in the stockroom", "grocery"),
            ("2:30 pm", "closing the market early for the holiday", "grocery"),
            ("4:45 pm", "heading over to the cafe for the evening", "cafe_seating"),
            ("7:20 pm", "walking Jane home from the evening out", "moreno_common"),
            ("10:00 pm", "heading to bed on Tuesday night", "moreno_bedroom"),
        ],
    )

    s["Jane Moreno"] = (
        [
            ("6:50 am", "watering the window boxes on Monday morning", "moreno_common"),
            ("9:30 am", "pruning the planters along her front wall", "moreno_common"),
            ("12:20 pm", "having a Monday lunch at home", "moreno_common"),
            ("2:00 pm", "repotting herbs through the afternoon", "moreno_common"),
            ("5:10 pm", "joining the lantern walk at the bandstand", "bandstand"),
            ("7:40 pm", "making a late supper at home on Monday", "moreno_common"),
            ("9:50 pm", "going to bed on Monday night", "moreno_bedroom"),
        ],
        [
            ("6:50 am", "sorting seed packets on Tuesday morning", "moreno_common"),
            ("8:55 am", "picking out flower bulbs at the market shelves", "grocery"),
            ("10:30 am", "planting the bulbs in her window boxes", "moreno_common"),
            ("12:20 pm", "having a Tuesday lunch at home", "moreno_common"),
            ("2:50 pm", "leading the garden-club stroll on the lawn", "lawn"),
            ("5:30 pm", "setting out a Valentine's supper for Tom", "moreno_common"),
            ("7:30 pm", "welcoming Tom home from the party", "moreno_common"),
            ("9:50 pm", "going to bed on Tuesday night", "moreno_bedroom"),
        ],
    )

    s["Yuriko Yamamoto"] = (
        [
            ("7:30 am", "standing up her Monday build at the workbench", "yuriko_home"),
            ("12:00 pm", "eating a Monday desk lunch at home", "yuriko_home"),
            ("1:00 pm", "debugging through the Monday afternoon", "yuriko_home"),
            ("4:45 pm", "dropping off a jar of plum jam for the Lins in the garden", "lin_garden"),
            ("5:50 pm", "stretching her legs at the lantern walk", "bandstand"),
            ("7:10 pm", "cooking a quiet Monday dinner at home", "yuriko_home"),
            ("10:30 pm", "going to bed after the Monday push", "yuriko_home"),
        ],
        [
            ("7:30 am", "reviewing overnight test runs at the workbench", "yuriko_home"),
            ("9:15 am", "buying coffee beans at the market shelves", "grocery"),
            ("10:00 am", "attending the public history lecture at the college", "classroom"),
            ("12:20 pm", "trying the lunch special at the cafe counter", "cafe_counter"),
            ("12:50 pm", "eating with colleagues in the cafe seating area", "cafe_seating"),
            ("2:50 pm", "walking the garden-club route on the lawn", "lawn"),
            ("6:00 pm", "shipping her Tuesday patch from the workbench", "yuriko_home"),
            ("10:30 pm", "going to bed on Tuesday night", "yuriko_home"),
        ],
    )

    s["Tamara Taylor"] = (
        [
            ("7:40 am", "drafting a picture-book page on Monday morning", "tamara_room"),
            ("11:30 am", "reading her draft aloud to the empty room", "tamara_room"),
            ("1:40 pm", "writing on a blanket on the park lawn", "lawn"),
            ("5:05 pm", "browsing the lantern walk at the bandstand", "bandstand"),
            ("7:20 pm", "making Monday supper with Carmen at home", "carmen_room"),
            ("9:40 pm", "reading in bed on Monday night", "tamara_room"),
        ],
        [
            ("7:40 am", "inking Tuesday's illustrations at her desk", "tamara_room"),
            ("9:25 am", "picking up butcher paper at the market shelves", "grocery"),
            ("10:00 am", "attending the public history lecture at the college", "classroom"),
            ("12:30 pm", "eating a Tuesday sandwich at her desk", "tamara_room"),
            ("2:50 pm", "sketching dogs at the garden-club stroll", "lawn"),
            ("6:30 pm", "making a Valentine's supper with Carmen", "carmen_room"),
            ("9:40 pm", "reading in bed on Tuesday night", "tamara_room"),
        ],
    )

    s["Carmen Ortiz"] = (
        [
            ("7:00 am", "walking down to open the supply store on Monday", "supply"),
            ("12:10 pm", "eating lunch behind the hardware counter", "supply"),
            ("1:00 pm", "serving the Monday afternoon trade", "supply"),
            ("5:05 pm", "closing up and joining the lantern walk", "bandstand"),
            ("7:20 pm", "sharing Monday supper with Tamara at home", "carmen_room"),
            ("10:00 pm", "turning in after the Monday shift", "carmen_room"),
        ],
        [
            ("7:00 am", "opening the supply store on Tuesday", "supply"),
            ("11:50 am", "walking up for the cafe lunch special", "cafe_counter"),
            ("12:30 pm", "eating her special in the cafe seating area", "cafe_seating"),
            ("1:40 pm", "minding the Tuesday counter at the store", "supply"),
            ("2:50 pm", "reorganizing the paint shelf at the store", "supply"),
            ("4:00 pm", "finishing the Tuesday ledger at the store", "supply"),
            ("7:20 pm", "sharing a Valentine's supper with Tamara", "carmen_room"),
            ("10:00 pm", "turning in on Tuesday night", "carmen_room"),
        ],
    )

    s["Wolfgang Schulz"] = (
        [
            ("7:30 am", "chipping at a proof over Monday breakfast in his room", "wolfgang_room"),
            ("9:40 am", "attending the Monday morning seminar", "classroom"),
            ("12:10 pm", "eating instant noodles over his problem set", "wolfgang_room"),
            ("2:00 pm", "grinding through the Monday problem set", "wolfgang_room"),
            ("6:30 pm", "playing cards with the dorm hall on Monday", "wolfgang_room"),
            ("11:00 pm", "sleeping late on Monday night", "wolfgang_room"),
        ],
        [
            ("7:40 am", "waking slowly on Tuesday morning", "wolfgang_room"),
            ("9:40 am", "attending the Tuesday morning seminar", "classroom"),
            ("12:10 pm", "eating a Tuesday lunch at his desk", "wolfgang_room"),
            ("12:15 pm", "picking up a double espresso to fuel his problem sets", "cafe_counter"),
            ("1:20 pm", "working the problem set due Wednesday", "wolfgang_room"),
            ("7:30 pm", "pushing through the problem set after supper", "wolfgang_room"),
            ("9:20 pm", "finishing the problem set late", "wolfgang_room"),
            ("11:30 pm", "sleeping very late on Tuesday", "wolfgang_room"),
        ],
    )

    s["Ayesha Khan"] = (
        [
            ("7:00 am", "annotating sonnets over Monday breakfast", "ayesha_room"),
            ("9:40 am", "attending the Monday morning seminar", "classroom"),
            ("12:10 pm", "eating Monday lunch in her dorm room", "ayesha_room"),
            ("12:55 pm", "outlining her senior thesis at the library", "library"),
            ("4:40 pm", "transcribing quotations in her room", "ayesha_room"),
            ("8:00 pm", "reading plays aloud before bed", "ayesha_room"),
            ("10:20 pm", "going to sleep on Monday night", "ayesha_room"),
        ],
        [
            ("7:00 am", "revising her thesis outline on Tuesday morning", "ayesha_room"),
            ("9:40 am", "attending the Tuesday morning seminar", "classroom"),
            ("12:10 pm", "eating Tuesday lunch in her dorm room", "ayesha_room"),
            ("1:00 pm", "collating sources at the library on Tuesday", "library"),
            ("5:00 pm", "drafting her thesis introduction in her room", "ayesha_room"),
            ("8:30 pm", "calling home before bed on Tuesday", "ayesha_room"),
            ("10:20 pm", "going to sleep on Tuesday night", "ayesha_room"),
        ],
    )

    s["Abigail Chen"] = (
        [
            ("7:50 am", "roughing out Monday's storyboards in her room", "abigail_room"),
            ("10:30 am", "cleaning up frames at the studio easel", "studio"),
            ("2:00 pm", "sketching animation frames over a coffee", "cafe_counter"),
            ("3:40 pm", "inking at a corner table in the seating area", "cafe_seating"),
            ("5:05 pm", "sketching faces at the lantern walk", "bandstand"),
            ("7:30 pm", "rendering a night pass in the studio", "studio"),
            ("11:00 pm", "going to bed after a long Monday", "abigail_room"),
        ],
        [
            ("7:50 am", "reviewing Monday's frames on Tuesday morning", "abigail_room"),
            ("10:30 am", "blocking a new scene at the studio", "studio"),
            ("12:40 pm", "eating a quick Tuesday lunch in the studio", "studio"),
            ("2:00 pm", "cutting paper hearts for the cafe in the studio", "studio"),
            ("4:50 pm", "bringing paper hearts over for the evening", "cafe_seating"),
            ("7:20 pm", "sketching the evening from memory in the studio", "studio"),
            ("11:00 pm", "going to bed on Tuesday night", "abigail_room"),
        ],
    )

    s["Rajiv Patel"] = (
        [
            ("6:30 am", "stretching canvases before Monday sunrise", "studio"),
            ("9:00 am", "painting the large panel for his show", "studio"),
            ("12:30 pm", "eating a studio lunch among the canvases", "studio"),
            ("1:10 pm", "painting through the Monday afternoon", "studio"),
            ("5:10 pm", "walking the lantern route for color studies", "bandstand"),
            ("6:40 pm", "mixing pigments for tomorrow", "studio"),
            ("10:40 pm", "sleeping among turpentine fumes", "rajiv_room"),
        ],
        [
            ("6:30 am", "priming the last canvas on Tuesday", "studio"),
            ("10:00 am", "attending the public history lecture at the college", "classroom"),
            ("12:30 pm", "eating a Tuesday studio lunch", "studio"),
            ("1:10 pm", "varnishing finished panels for the show", "studio"),
            ("6:00 pm", "cataloguing the show pieces on Tuesday evening", "studio"),
            ("10:40 pm", "sleeping before the hanging day", "rajiv_room"),
        ],
    )

    s["Latoya Williams"] = (
        [
            ("6:45 am", "loading film rolls on Monday morning", "latoya_room"),
            ("8:30 am", "shooting storefronts along the morning street", "supply"),
            ("11:45 am", "developing contact sheets at the darkroom bench", "studio"),
            ("3:20 pm", "reviewing her photographs over a latte", "cafe_counter"),
            ("5:05 pm", "photographing the lantern walk at the bandstand", "bandstand"),
            ("8:00 pm", "tagging negatives in her room on Monday", "latoya_room"),
            ("10:50 pm", "going to bed on Monday night", "latoya_room"),
        ],
        [
            ("6:45 am", "packing her camera bag on Tuesday", "latoya_room"),
            ("10:35 am", "framing photographs of the frozen pond for her project", "pond"),
            ("12:45 pm", "warming up with soup in the cafe seating area", "cafe_seating"),
            ("2:10 pm", "printing the pond series at the darkroom bench", "studio"),
            ("6:30 pm", "archiving the Valentine's series in her room", "latoya_room"),
            ("10:50 pm", "going to bed on Tuesday night", "latoya_room"),
        ],
    )

    s["Adam Smith"] = (
        [
            ("6:15 am", "reading by the window on Monday morning", "adam_study"),
            ("9:30 am", "drafting a book review at his desk", "adam_study"),
            ("12:05 pm", "taking the Monday lunch special at the cafe counter", "cafe_counter"),
            ("12:40 pm", "reading journals in the cafe seating area", "cafe_seating"),
            ("1:35 pm", "returning a stack of books at the library", "library"),
            ("2:40 pm", "feeding the ducks by the frozen pond", "pond"),
            ("5:45 pm", "cooking a simple Monday supper", "adam_study"),
            ("9:15 pm", "reading himself to sleep on Monday", "adam_study"),
        ],
        [
            ("6:15 am", "annotating a new economics volume on Tuesday", "adam_study"),
            ("10:00 am", "attending the public history lecture at the college", "classroom"),
            ("12:05 pm", "taking the Tuesday soup at the cafe counter", "cafe_counter"),
            ("12:40 pm", "arguing footnotes over tea in the seating area", "cafe_seating"),
            ("2:50 pm", "joining the garden-club stroll for the company", "lawn"),
            ("5:45 pm", "cooking his Tuesday supper", "adam_study"),
            ("9:15 pm", "reading himself to sleep on Tuesday", "adam_study"),
        ],
    )

    s["Priya Desai"] = (
        [
            ("8:30 am", "sleeping in after the weekend shifts", "priya_room"),
            ("10:45 am", "prepping garnishes at home before the Monday shift", "priya_room"),
            ("2:00 pm", "doing the Monday cellar count at the pub", "bar"),
            ("5:00 pm", "pouring drinks behind the bar for the evening crowd", "bar"),
            ("11:00 pm", "walking home after the Monday close", "priya_room"),
        ],
        [
            ("8:30 am", "sleeping in on Tuesday morning", "priya_room"),
            ("11:00 am", "stocking Valentine's specials at the bar", "bar"),
            ("2:00 pm", "polishing glasses before the Tuesday rush", "bar"),
            ("5:00 pm", "running the Valentine's evening bar", "bar"),
            ("11:15 pm", "walking home after the Tuesday close", "priya_room"),
        ],
    )

    s["Marcus Webb"] = (
        [
            ("6:50 am", "marking essays over Monday breakfast", "marcus_room"),
            ("9:30 am", "co-teaching the Monday morning seminar", "classroom"),
            ("12:30 pm", "eating in the empty classroom between sessions", "classroom"),
            ("2:15 pm", "preparing Tuesday's public lecture at his desk", "marcus_room"),
            ("6:40 pm", "arriving early for quiz night at the bar", "bar"),
            ("10:10 pm", "walking home from quiz night", "marcus_room"),
        ],
        [
            ("6:50 am", "rehearsing his lecture over Tuesday breakfast", "marcus_room"),
            ("9:20 am", "setting up the public history lecture at the college", "classroom"),
            ("12:20 pm", "taking the Tuesday special at the cafe counter", "cafe_counter"),
            ("12:55 pm", "holding court in the cafe seating area", "cafe_seating"),
            ("2:30 pm", "filing lecture notes in the classroom", "classroom"),
            ("7:00 pm", "running the Tuesday quiz at the bar", "bar"),
            ("10:10 pm", "walking home on Tuesday night", "marcus_room"),
        ],
    )

    s["Elena Sokolova"] = (
        [
            ("7:20 am", "tea and toast before the Monday shelving", "elena_room"),
            ("8:30 am", "opening the library for the week", "library"),
            ("12:20 pm", "eating a quiet lunch at the library desk", "library"),
            ("1:00 pm", "reshelving the Monday returns", "library"),
            ("5:05 pm", "strolling the lantern walk after closing", "bandstand"),
            ("7:00 pm", "reading at home on Monday evening", "elena_room"),
            ("10:00 pm", "going to bed on Monday night", "elena_room"),
        ],
        [
            ("7:20 am", "tea and toast on Tuesday morning", "elena_room"),
            ("8:30 am", "setting out the Valentine's display at the library", "library"),
            ("9:55 am", "slipping into the public lecture next door", "classroom"),
            ("12:00 pm", "minding the Tuesday reading room", "library"),
            ("2:50 pm", "joining the garden-club stroll after her break", "lawn"),
            ("4:10 pm", "closing the library early for the holiday", "library"),
            ("7:00 pm", "reading at home on Tuesday evening", "elena_room"),
            ("10:00 pm", "going to bed on Tuesday night", "elena_room"),
        ],
    )

    s["Omar Haddad"] = (
        [
            ("5:50 am", "hauling the Monday delivery crates at the market", "grocery"),
            ("9:00 am", "stacking the winter squash display", "grocery"),
            ("12:35 pm", "walking up for the cafe lunch special", "cafe_counter"),
            ("1:05 pm", "eating his special in the cafe seating area", "cafe_seating"),
            ("2:00 pm", "working the Monday till at the market", "grocery"),
            ("6:50 pm", "throwing darts at the pub after the shift", "bar"),
            ("10:20 pm", "turning in after the Monday darts", "omar_room"),
        ],
        [
            ("5:50 am", "unloading the Valentine's flower crates", "grocery"),
            ("9:00 am", "bagging bulbs and blooms all Tuesday morning", "grocery"),
            ("12:35 pm", "eating a stockroom lunch on Tuesday", "grocery"),
            ("2:00 pm", "sweeping up after the early close", "grocery"),
            ("2:50 pm", "doing the Tuesday cellar inventory at the market", "grocery"),
            ("6:50 pm", "defending his darts title at the pub", "bar"),
            ("10:20 pm", "turning in on Tuesday night", "omar_room"),
        ],
    )

    s["Grace Kim"] = (
        [
            ("7:10 am", "jogging the park loop before the Monday shift", "trailhead"),
            ("8:20 am", "sorting prescriptions behind the pharmacy counter", "pharmacy"),
            ("12:10 pm", "splitting a Monday salad at the cafe counter", "cafe_counter"),
            ("12:40 pm", "chatting over lunch in the cafe seating area", "cafe_seating"),
            ("1:15 pm", "counting pills through the Monday afternoon", "pharmacy"),
            ("6:30 pm", "cheering the quiz team at the bar", "bar"),
            ("10:00 pm", "winding down after quiz night", "grace_room"),
        ],
        [
            ("7:10 am", "jogging the trail loop on Tuesday morning", "trailhead"),
            ("8:20 am", "labeling the Tuesday prescriptions", "pharmacy"),
            ("12:30 pm", "eating her packed lunch at the pharmacy", "pharmacy"),
            ("1:15 pm", "restocking vitamins through Tuesday afternoon", "pharmacy"),
            ("5:30 pm", "helping John box the Valentine's inventory", "pharmacy"),
            ("8:00 pm", "making a quiet Tuesday dinner at home", "grace_room"),
            ("10:00 pm", "winding down on Tuesday night", "grace_room"),
        ],
    )

    s["Diego Alvarez"] = (
        [
            ("6:00 am", "walking the park fence line on Monday", "trailhead"),
            ("9:00 am", "clearing ice from the pond path", "pond"),
            ("12:10 pm", "warming up with the cafe lunch special", "cafe_counter"),
            ("12:40 pm", "trading park stories in the cafe seating area", "cafe_seating"),
            ("1:30 pm", "repairing the bandstand rail", "bandstand"),
            ("5:05 pm", "lighting the lanterns for the evening walk", "bandstand"),
            ("7:10 pm", "having a pint after the lantern walk", "bar"),
            ("10:30 pm", "turning in after the Monday rounds", "diego_room"),
        ],
        [
            ("6:00 am", "checking the trail markers on Tuesday", "trailhead"),
            ("9:30 am", "sanding the icy path by the pond", "pond"),
            ("12:00 pm", "eating his thermos lunch at the trailhead", "trailhead"),
            ("1:30 pm", "hanging holiday bunting on the bandstand", "bandstand"),
            ("2:50 pm", "walking sweep for the garden-club stroll", "lawn"),
            ("6:30 pm", "oiling the park gate hinges at the trailhead", "trailhead"),
            ("10:30 pm", "turning in on Tuesday night", "diego_room"),
        ],
    )

    return s


SCHEDULES = _sched()


# --- storyline beats ------------------------------------------------------------
#
# A beat: the reactor notices the target's (unique) action, a scripted
# should-react entry fires, and the scripted dialogue carries information
# between the two memory streams. Reaction texts use first names so the
# reactor's own decision memory never smuggles a full name anywhere.

def beat(day, reactor, target, target_action, reaction, turns):
    return {
        "day": day, "reactor": reactor, "target": target,
        "target_action": target_action, "reaction": reaction, "turns": turns,
    }


BEATS = [
    # --- party invitations (12 hearers) --------------------------------
    beat(0, "Isabella Rodriguez", "Maria Lopez",
         "ordering a morning coffee before class at the counter",
         "invite Maria to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Good morning, Maria! Before you run to class — I'm throwing a "
           "Valentine's Day party at Hobbs Cafe tomorrow, February 14th, "
           "from 5 to 7 pm. Say you'll come!"),
          ("Maria Lopez",
           "A Valentine's Day party at Hobbs Cafe! I wouldn't miss it, Isabella."),
          ("Isabella Rodriguez", "Wonderful. Bring anyone you like!")]),
    beat(0, "Isabella Rodriguez", "Tom Moreno",
         "stopping in for his morning espresso at the counter",
         "invite Tom to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Your espresso's on, Tom. And mark your calendar — I'm having a "
           "Valentine's Day party at Hobbs Cafe tomorrow from 5 to 7 pm."),
          ("Tom Moreno",
           "A Valentine's Day party, here? Count me in, Isabella. I'll close "
           "the market early."),
          ("Isabella Rodriguez", "That's the spirit!")]),
    beat(0, "Isabella Rodriguez", "Sam Moore",
         "coming by the cafe for a cup of decaf",
         "invite Sam and his wife to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Here's your decaf, Sam. Tomorrow evening I'm throwing a "
           "Valentine's Day party at Hobbs Cafe, 5 to 7 pm — you and "
           "Jennifer should come."),
          ("Sam Moore",
           "A Valentine's Day party sounds like a fine time. And some news "
           "of my own: I'm running for mayor in the upcoming local election."),
          ("Isabella Rodriguez",
           "Running for mayor! Well, you'll have my vote if you keep "
           "drinking my coffee.")]),
    beat(0, "Isabella Rodriguez", "John Lin",
         "having a quick lunch at the cafe between pharmacy shifts",
         "invite John and his family to tomorrow's celebration",
         [("Isabella Rodriguez",
           "The usual sandwich, John. Also — Valentine's Day party at Hobbs "
           "Cafe tomorrow, 5 to 7 pm. Bring the family!"),
          ("John Lin",
           "A Valentine's Day party — Mei will love hearing that. Thanks, "
           "Isabella.")]),
    beat(0, "Isabella Rodriguez", "Mei Lin",
         "taking her lunch break at the cafe with a book",
         "invite Mei to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Mei, your table's free. Don't forget — I'm hosting a Valentine's "
           "Day party at Hobbs Cafe tomorrow from 5 to 7 pm."),
          ("Mei Lin",
           "A Valentine's Day party! What a lovely idea, Isabella. I'll see "
           "if John and I can slip away.")]),
    beat(0, "Isabella Rodriguez", "Jennifer Moore",
         "sitting down for afternoon tea at the cafe",
         "invite Jennifer to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Your tea, Jennifer. And an invitation — a Valentine's Day party "
           "at Hobbs Cafe tomorrow evening, 5 to 7 pm."),
          ("Jennifer Moore",
           "A Valentine's Day party! I'll bring a small painting for the "
           "wall, Isabella.")]),
    beat(0, "Isabella Rodriguez", "Abigail Chen",
         "sketching animation frames over a coffee",
         "invite Abigail to tomorrow's celebration",
         [("Isabella Rodriguez",
           "More coffee, Abigail? Come to my Valentine's Day party at Hobbs "
           "Cafe tomorrow, 5 to 7 pm — bring your sketchbook."),
          ("Abigail Chen",
           "A Valentine's Day party at the cafe! I'll cut some paper hearts "
           "for it.")]),
    beat(0, "Isabella Rodriguez", "Latoya Williams",
         "reviewing her photographs over a latte",
         "invite Latoya to tomorrow's celebration",
         [("Isabella Rodriguez",
           "Latoya, you should photograph my Valentine's Day party at Hobbs "
           "Cafe tomorrow — 5 to 7 pm, everyone's invited."),
          ("Latoya Williams",
           "A Valentine's Day party! If the darkroom lets me go, I'll bring "
           "the camera.")]),
    beat(0, "Maria Lopez", "Klaus Mueller",
         "reading at the library desk in the evening",
         "ask Klaus to come to the celebration with her, as her date",
         [("Maria Lopez",
           "Klaus — Isabella's throwing a Valentine's Day party at Hobbs "
           "Cafe tomorrow, 5 to 7. Would you come with me? As my date, I mean."),
          ("Klaus Mueller",
           "A Valentine's Day party, with you? I'd like nothing better, Maria."),
          ("Maria Lopez",
           "Then it's settled. Meet me at the dorm at half past four.")]),
    beat(0, "Tom Moreno", "Priya Desai",
         "pouring drinks behind the bar for the evening crowd",
         "tell Priya about tomorrow's celebration at the cafe",
         [("Tom Moreno",
           "Busy night, Priya. Listen — Isabella's putting on a Valentine's "
           "Day party at Hobbs Cafe tomorrow, 5 to 7. Drop in if the taps allow."),
          ("Priya Desai",
           "A Valentine's Day party right across the street! I'll try to "
           "duck out after setup.")]),
    beat(1, "Isabella Rodriguez", "Eddy Lin",
         "grabbing a pastry before heading to class",
         "invite Eddy to tonight's celebration",
         [("Isabella Rodriguez",
           "Morning, Eddy! Tell your folks I said hi — and come by tonight, "
           "I'm hosting a Valentine's Day party at Hobbs Cafe from 5 to 7 pm."),
          ("Eddy Lin",
           "A Valentine's Day party! I've got rehearsal, but I'll try to "
           "swing past, Isabella.")]),
    beat(1, "Isabella Rodriguez", "Wolfgang Schulz",
         "picking up a double espresso to fuel his problem sets",
         "invite Wolfgang to tonight's celebration",
         [("Isabella Rodriguez",
           "There's your double, Wolfgang. And fair warning — tonight there's a "
           "Valentine's Day party at Hobbs Cafe, 5 to 7 pm."),
          ("Wolfgang Schulz",
           "A Valentine's Day party... tempting, but my problem set is due "
           "at dawn, Isabella.")]),
    # --- candidacy spread (7 hearers) ------------------------------------
    beat(0, "Sam Moore", "Tom Moreno",
         "restocking the Monday shelves at the market",
         "tell Tom about his decision to stand in the election",
         [("Sam Moore", "Tom, got a minute between crates?"),
          ("Tom Moreno", "For you, Sam, always. What's the news?"),
          ("Sam Moore",
           "Big news, actually. I've decided I'm running for mayor in the "
           "upcoming local election."),
          ("Tom Moreno",
           "Well I'll be! You've got my ear — what put you up to it?"),
          ("Sam Moore",
           "Forty years of town meetings. Time to do more than grumble from "
           "the back row.")]),
    beat(0, "John Lin", "Sam Moore",
         "picking up his blood pressure prescription at the pharmacy counter",
         "greet Sam and ask how he has been",
         [("John Lin", "Here's your refill, Sam. How's the week treating you?"),
          ("Sam Moore",
           "Can't complain, John. Actually — you'll hear it soon enough — "
           "I'm running for mayor in the upcoming local election."),
          ("John Lin",
           "Running for mayor! Then I'd better keep your blood pressure "
           "steady, neighbor.")]),
    beat(0, "Sam Moore", "Adam Smith",
         "feeding the ducks by the frozen pond",
         "sit with Adam and tell him his news",
         [("Sam Moore", "Adam! Saving bread for the ducks or for yourself?"),
          ("Adam Smith",
           "Whichever of us looks hungrier, Sam. Sit — the bench is warmer "
           "than it looks."),
          ("Sam Moore",
           "I'll share some news then: I'm running for mayor in the "
           "upcoming local election."),
          ("Adam Smith",
           "Ha! At last. You've been rehearsing that speech for twenty years.")]),
    beat(0, "John Lin", "Yuriko Yamamoto",
         "dropping off a jar of plum jam for the Lins in the garden",
         "thank Yuriko for the jam and catch up",
         [("John Lin", "Yuriko! What brings you over the hedge?"),
          ("Yuriko Yamamoto",
           "Plum jam — my mother's recipe. One jar for the Lins, before I "
           "eat them all."),
          ("John Lin",
           "You're a saint. Oh — did you hear? Sam Moore is running for "
           "mayor in the upcoming local election."),
          ("Yuriko Yamamoto",
           "Sam, running for mayor? He fixed my porch for free once — he'd "
           "do the town proud.")]),
    beat(1, "Tom Moreno", "Jane Moreno",
         "picking out flower bulbs at the market shelves",
         "tell Jane the news about Sam",
         [("Tom Moreno", "Those the tulips, Jane? Put them on the house account."),
          ("Jane Moreno",
           "Our house IS the account, Tom. What's made you grin all morning?"),
          ("Tom Moreno",
           "Sam Moore told me himself — he's running for mayor in the "
           "upcoming local election."),
          ("Jane Moreno",
           "Running for mayor! Then the debates will finally be worth "
           "attending.")]),
    beat(1, "Yuriko Yamamoto", "Mei Lin",
         "lingering over tea in the cafe seating area",
         "join Mei for lunch and tell her the town news",
         [("Yuriko Yamamoto", "Mei! Taking a real lunch for once?"),
          ("Mei Lin",
           "Twenty whole minutes of it, Yuriko. Join me — the tea's still hot."),
          ("Yuriko Yamamoto",
           "Gladly. Did the news reach the college yet? Sam Moore is "
           "running for mayor in the upcoming local election."),
          ("Mei Lin",
           "Running for mayor! Between that and tonight, this town has "
           "never been busier.")]),
    # --- texture ------------------------------------------------------------
    beat(0, "John Lin", "Eddy Lin",
         "taking a short walk around the garden to clear his head",
         "ask Eddy how the class composition is coming along",
         [("John Lin",
           "Clearing your head, Eddy? How's that class composition coming along?"),
          ("Eddy Lin",
           "Slow but getting there, Dad. Walking helps me hear where the "
           "melody wants to go."),
          ("John Lin",
           "Then I'll leave you to your walking. Play it for me after dinner.")]),
    beat(1, "Sam Moore", "Latoya Williams",
         "framing photographs of the frozen pond for her project",
         "ask the photographer what she is shooting",
         [("Sam Moore",
           "That's a serious camera. What are you shooting out here in the cold?"),
          ("Latoya Williams",
           "A winter series of the park — it's for a gallery project I'm "
           "working on. I'm Latoya, by the way."),
          ("Sam Moore", "Sam Moore. Mind the ice by the reeds — it bites.")]),
    beat(0, "Ayesha Khan", "Klaus Mueller",
         "reading a book on urban housing at the library desk",
         "ask Klaus how the research pile is treating him",
         [("Ayesha Khan",
           "Housing again, Klaus? Your paper will outweigh the shelf soon."),
          ("Klaus Mueller",
           "Almost done, Ayesha. How goes the thesis — has Shakespeare "
           "surrendered yet?"),
          ("Ayesha Khan",
           "He's negotiating. Lunch on Thursday to compare notes?")]),
    beat(1, "Isabella Rodriguez", "Maria Lopez",
         "helping hang garlands in the seating area",
         "thank Maria for helping decorate",
         [("Isabella Rodriguez", "Careful on the chair! You're a lifesaver, Maria."),
          ("Maria Lopez",
           "Anything for the best cafe in town. Klaus said yes, by the way "
           "— we're coming together."),
          ("Isabella Rodriguez", "I knew it! Then tonight has to be perfect.")]),
    beat(0, "Tom Moreno", "John Lin",
         "meeting Tom for an after-work pint at the bar",
         "wave John over and talk over the day",
         [("Tom Moreno",
           "John! Pull up the good stool. You've heard about Sam, I take it?"),
          ("John Lin",
           "Running for mayor — he told me over his prescription this "
           "morning. Think he has a chance?"),
          ("Tom Moreno",
           "If hard work counts for anything, he does. The town could do "
           "far worse.")]),
]


# --- script assembly ----------------------------------------------------------


def entry(template: str, match: dict, reply: str) -> dict:
    return {"template": template, "match": match, "reply": reply}


def _beat_entries() -> list[dict]:
    out = []
    for b in BEATS:
        out.append(entry("should_react",
                         {"name": b["reactor"], "observation": b["target_action"]},
                         f"Yes. {b['reaction']}"))
        turns = b["turns"]
        out.append(entry("dialogue_first",
                         {"name": turns[0][0], "intent": b["reaction"]},
                         turns[0][1]))
        # later turns first: the dialogue history accumulates, so matching
        # newest-first keeps an early entry from shadowing a later one
        next_entries = []
        for i, (speaker, text) in enumerate(turns[1:], start=1):
            reply = text + (" [end]" if i == len(turns) - 1 else "")
            next_entries.append(entry("dialogue_next",
                                      {"name": speaker, "history": turns[i - 1][1]},
                                      reply))
        out.extend(reversed(next_entries))
    return out


def _plan_entries() -> list[dict]:
    out = [entry("day_plan", {"prior_day": "Replan the rest of today"}, RESUME)]
    for name, (day0, day1) in SCHEDULES.items():
        for day_index, day_sched in ((0, day0), (1, day1)):
            parts = []
            for i, (start, desc, loc_key) in enumerate(day_sched, start=1):
                parts.append(f"{i}) {desc} at {start} [{L[loc_key]}]")
            date_word = "February 13" if day_index == 0 else "February 14"
            out.append(entry("day_plan", {"name": name, "date": date_word},
                             ", ".join(parts)))
    # decomposition inherits the parent activity: empty replies mean
    # the engine fills chunks with the entry's own description
    out.append(entry("decompose_hour", {}, ""))
    out.append(entry("decompose_minute", {}, ""))
    return out


def _importance_entries() -> list[dict]:
    return [
        entry("importance", {"description": "planning a Valentine's Day party"}, "9"),
        entry("importance", {"description": "running for mayor"}, "8"),
        entry("importance", {"description": PARTY_PHRASE}, "8"),
        entry("importance", {"description": "as my date"}, "8"),
        entry("importance", {"description": "secret crush"}, "8"),
        entry("importance", {"description": "inner voice says"}, "9"),
        entry("importance", {"description": ' says "'}, "4"),
        entry("importance", {"description": "decided to"}, "4"),
        entry("importance", {"description": "is sleeping"}, "1"),
        entry("importance", {"description": "minutes from"}, "2"),
        entry("importance", {}, "3"),
    ]


def _summary_entries() -> list[dict]:
    out = []
    for name, _age, traits, phrases, _home, _bed in ROSTER:
        first = name.split()[0]
        out.append(entry("summary_core", {"name": name},
                         f"{phrases[0]}. {first} is {traits}."))
        out.append(entry("summary_occupation", {"name": name}, f"{phrases[0]}."))
        out.append(entry("summary_feeling", {"name": name},
                         f"{first} feels steady about how life in Smallville "
                         "is going."))
        out.append(entry("reflection_insights", {"subject": name},
                         f"{name} keeps a steady daily rhythm in Smallville "
                         "(because of 1, 2)\n"
                         f"{name} cares about doing their own work well "
                         "(because of 1, 3)"))
    out.append(entry("summary_core", {}, "A Smallville resident."))
    out.append(entry("summary_occupation", {}, "Keeps busy around town."))
    out.append(entry("summary_feeling", {}, "Feels settled."))
    out.append(entry("reflection_questions", {},
                     "1. What matters most to this person right now?\n"
                     "2. Who has this person been spending time with?\n"
                     "3. How is this person's main project going?"))
    out.append(entry("reflection_insights", {},
                     "The days here follow a steady rhythm (because of 1, 2)"))
    out.append(entry("context_relationship", {},
                     "They know each other from around town, and the other "
                     "is going about their day nearby."))
    return out


def _world_entries() -> list[dict]:
    return [
        entry("object_state", {"action": "making espresso"}, "brewing coffee"),
        entry("object_state", {}, "in use"),
        entry("should_react",
              {"name": "Isabella Rodriguez", "observation": "stove is burning"},
              "Yes. turn off the stove and remake her breakfast"),
        entry("should_react", {}, "No."),
        entry("emoji", {"action": "is sleeping"}, "😴"),
        entry("emoji", {"action": "breakfast"}, "🍳"),
        entry("emoji", {"action": "espresso"}, "☕"),
        entry("emoji", {"action": "coffee"}, "☕"),
        entry("emoji", {"action": "seminar"}, "📚"),
        entry("emoji", {"action": "lecture"}, "📚"),
        entry("emoji", {"action": "teaching"}, "📚"),
        entry("emoji", {"action": "library"}, "📖"),
        entry("emoji", {"action": "reading"}, "📖"),
        entry("emoji", {"action": "tea"}, "🍵"),
        entry("emoji", {"action": "lunch"}, "🥪"),
        entry("emoji", {"action": "supper"}, "🍲"),
        entry("emoji", {"action": "dinner"}, "🍲"),
        entry("emoji", {"action": "walk"}, "🚶"),
        entry("emoji", {"action": "jogging"}, "🏃"),
        entry("emoji", {"action": "painting"}, "🎨"),
        entry("emoji", {"action": "sketch"}, "🎨"),
        entry("emoji", {"action": "photograph"}, "📷"),
        entry("emoji", {"action": "camera"}, "📷"),
        entry("emoji", {"action": "composition"}, "🎵"),
        entry("emoji", {"action": "pharmacy"}, "💊"),
        entry("emoji", {"action": "market"}, "🧺"),
        entry("emoji", {"action": "shelves"}, "🧺"),
        entry("emoji", {"action": "bar"}, "🍺"),
        entry("emoji", {"action": "pub"}, "🍺"),
        entry("emoji", {"action": "garden"}, "🌱"),
        entry("emoji", {"action": "stove"}, "🍳"),
        entry("emoji", {"action": "decorating"}, "🎀"),
        entry("emoji", {"action": "party"}, "🎉"),
        entry("emoji", {"action": "celebration"}, "🎉"),
        entry("emoji", {"action": "conversing"}, "💬"),
        entry("emoji", {"action": "bed"}, "🛏"),
        entry("emoji", {}, "💭"),
    ]


def _interview_entries() -> list[dict]:
    out = [
        entry("interview_answer",
              {"name": "Isabella Rodriguez", "question": PARTY_QUESTION},
              "Yes — I'm the one throwing it! A Valentine's Day party at "
              "Hobbs Cafe on February 14th from 5 to 7 pm."),
        entry("interview_answer",
              {"question": PARTY_QUESTION, "context": PARTY_PHRASE},
              "Yes, Isabella Rodriguez invited me to a Valentine's Day "
              "party at Hobbs Cafe on February 14th."),
        entry("interview_answer", {"question": PARTY_QUESTION},
              "No, I did not know there was a Valentine's day party."),
        entry("interview_answer",
              {"name": "Sam Moore", "question": CANDIDACY_QUESTION},
              "Yes — that would be me. I am running for mayor in the "
              "upcoming local election."),
        entry("interview_answer",
              {"question": CANDIDACY_QUESTION, "context": CANDIDACY_PHRASE},
              "Yes, I know that Sam Moore is running for mayor."),
        entry("interview_answer", {"question": CANDIDACY_QUESTION},
              "I'm not sure who is running for the election."),
    ]
    for name, *_ in ROSTER:
        question = f"Do you know of {name}?"
        out.append(entry("interview_answer",
                         {"question": question, "context": name},
                         f"Yes, I know of {name}."))
        out.append(entry("interview_answer", {"question": question},
                         "No, I don't believe I know them."))
    # appendix battery: one tailored generic per question, plus specifics
    out.extend([
        entry("interview_answer",
              {"name": "Klaus Mueller", "question": "Give an introduction of yourself"},
              "Hello, my name is Klaus Mueller. I'm 20 years old and a "
              "student at Oak Hill College, studying sociology. I'm writing "
              "a research paper on the effects of gentrification in "
              "low-income communities."),
        entry("interview_answer", {"question": "Give an introduction of yourself"},
              "Hello! I live here in Smallville and keep busy with my work "
              "and my neighbors."),
        entry("interview_answer", {"question": "What's your occupation?"},
              "I keep to my own trade here in town; it fills most of my days."),
        entry("interview_answer", {"question": "What is your interest?"},
              "Mostly my own projects, and the company of the people around "
              "town."),
        entry("interview_answer", {"question": "Who do you live with?"},
              "I share my home with the people closest to me; some of us "
              "live alone here."),
        entry("interview_answer",
              {"question": "Describe your typical weekday schedule"},
              "I wake early, spend the day at my usual work, and wind down "
              "at home in the evening."),
        entry("interview_answer", {"question": "Who is Kane Martinez?"},
              "I'm sorry, I'm not sure who Kane Martinez is."),
        entry("interview_answer", {"question": "Who is running for the election?"},
              "I've heard talk of the local election around town."),
        entry("interview_answer",
              {"question": "Was there a Valentine's day party?",
               "context": PARTY_PHRASE},
              "Yes, Isabella Rodriguez organized a Valentine's Day party at "
              "Hobbs Cafe."),
        entry("interview_answer", {"question": "Was there a Valentine's day party?"},
              "Not that I recall hearing about."),
        entry("interview_answer", {"question": "What will you be doing at 6am"},
              "At six in the morning I'd be just getting up and starting my "
              "routine."),
        entry("interview_answer", {"question": "What will you be doing at 6pm"},
              "By six in the evening I'm usually finishing my day's work."),
        entry("interview_answer", {"question": "finished doing at 1pm"},
              "By one o'clock I'd have just finished my lunch."),
        entry("interview_answer", {"question": "finished doing at 12pm"},
              "At noon I'd be wrapping up the morning's work before lunch."),
        entry("interview_answer", {"question": "What will you be doing at 10pm"},
              "At ten at night I'm winding down and getting ready to sleep."),
        entry("interview_answer", {"question": "Your breakfast is burning"},
              "I'd turn off the stove first, then open a window and rescue "
              "what's left of breakfast."),
        entry("interview_answer", {"question": "The bathroom is occupied"},
              "I'd wait a few minutes, and find another washroom if it takes "
              "too long."),
        entry("interview_answer", {"question": "refrigerator is empty"},
              "I'd check the pantry, and otherwise walk to the market for "
              "ingredients."),
        entry("interview_answer", {"question": "friend walking by the street"},
              "I'd wave and catch up for a minute before we both went on our "
              "way."),
        entry("interview_answer", {"question": "You see fire on the street"},
              "I'd make sure everyone is clear of it and raise the alarm at "
              "once."),
        entry("interview_answer", {"question": "What inspires you in life"},
              "The steady work in front of me, and the people of this town."),
        entry("interview_answer", {"question": "what book do you think"},
              "Something close to their own interests — I'd pick a book that "
              "matches what they talk about."),
        entry("interview_answer", {"question": "for their birthday"},
              "Something small and useful, chosen around what they enjoy."),
        entry("interview_answer", {"question": "to compliment them"},
              "I'd tell them how much care they put into what they do."),
        entry("interview_answer", {"question": "spend time with someone you talked"},
              "Whoever I last had a good long talk with — good company is "
              "worth repeating."),
        entry("interview_answer", {"question": "Who is "},
              "Someone from around town, I believe, though I can't say much "
              "more."),
        entry("interview_answer", {}, "I'm not quite sure what to say to that."),
    ])
    return out


def build_script() -> list[dict]:
    script: list[dict] = []
    script.extend(_beat_entries())
    script.extend(_plan_entries())
    script.extend(_importance_entries())
    script.extend(_summary_entries())
    script.extend(_world_entries())
    script.extend(_interview_entries())
    return script


# --- seeds & agents --------------------------------------------------------------


def build_agents() -> list[dict]:
    relations: dict[str, list[str]] = {name: [] for name, *_ in ROSTER}
    for a, b, verb in MUTUAL:
        relations[a].append(f"{a} {verb} {b}")
        relations[b].append(f"{b} {verb} {a}")
    for a, b, verb in ONE_WAY:
        relations[a].append(f"{a} {verb} {b}")

    agents = []
    for name, age, traits, phrases, home_key, bed_key in ROSTER:
        seed = "; ".join(phrases + relations[name])
        home_area = L[home_key].split(":")[0].strip()
        work_areas = {
            L[key].split(":")[0].strip()
            for _, desc, key in SCHEDULES[name][0] + SCHEDULES[name][1]
        }
        known = sorted(work_areas | {home_area, "Hobbs Cafe", "Johnson Park",
                                     "The Willows Market and Pharmacy"})
        agents.append({
            "name": name,
            "age": age,
            "traits": traits,
            "seed": seed,
            "home": L[home_key],
            "bed": L[bed_key] + ": bed",
            "known_areas": known,
        })
    return agents


def seed_mutual_edges() -> set[frozenset]:
    return {frozenset((a, b)) for a, b, _ in MUTUAL}


def build_scenario() -> dict:
    grid, tree = build_world()
    agents = build_agents()
    # integrity checks on the authored content
    names = {a["name"] for a in agents}
    assert len(agents) == 25, f"roster has {len(agents)} agents"
    assert len(seed_mutual_edges()) == 50, (
        f"seed graph has {len(seed_mutual_edges())} edges, wanted 50")
    for b in BEATS:
        assert b["reactor"] in names and b["target"] in names, b
        day_sched = SCHEDULES[b["target"]][b["day"]]
        descs = [d for _, d, _ in day_sched]
        assert b["target_action"] in descs, (
            f"beat target action not in schedule: {b['target_action']}")
    for name, days in SCHEDULES.items():
        for day_sched in days:
            assert 5 <= len(day_sched) <= 8, (name, len(day_sched))
    return {
        "schema_version": 1,
        "name": "valentine",
        "epoch_date": "2023-02-13",
        "grid": grid,
        "tree": tree,
        "agents": agents,
        "script": build_script(),
        "config": {"vision_radius": 3},
    }


def write_bundled(path: Path | None = None) -> Path:
    target = path or Path(__file__).parent / "valentine.json"
    data = build_scenario()
    target.write_text(json.dumps(data, ensure_ascii=False, indent=1) + "\n",
                      encoding="utf-8")
    return target


if __name__ == "__main__":
    print(f"wrote {write_bundled()}")
