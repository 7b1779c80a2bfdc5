#!/usr/bin/env python3
"""Writes data/scripts/shopping.json, the scripted model answers for the
shopping scenario. Tap coordinates are element centers read from the demo
graph, so editing the graph layout only needs a rerun of this script.

Step counters are per caller and run across the whole scenario: the Manager
and Operator answer once per decision iteration, the Reflector and Notetaker
once per executed action (never after Stop), and the two experience
reflectors once per task.
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
GRAPH = json.loads((ROOT / "data/graphs/demo_phone.json").read_text())
OUT = ROOT / "data/scripts/shopping.json"


def center(page_id, element_id):
    page = next(p for p in GRAPH["pages"] if p["id"] == page_id)
    x, y, w, h = next(e for e in page["elements"] if e["id"] == element_id)["box"]
    return f"{x + w // 2}, {y + h // 2}"


def sections(*pairs):
    return "\n".join(f"{label}: {text}" for label, text in pairs if text)


def manager(plan, subgoal, thought=""):
    return sections(("THOUGHT", thought), ("PLAN", plan), ("SUBGOAL", subgoal))


def operator(action, expectation, thought=""):
    return sections(("THOUGHT", thought), ("ACTION", action), ("EXPECTATION", expectation))


def ok(progress):
    return sections(("OUTCOME", "A"), ("PROGRESS", progress))


def failed(outcome, description, cause, fix):
    return sections(("OUTCOME", outcome), ("ERROR_DESCRIPTION", description),
                    ("SUSPECTED_CAUSE", cause), ("SUGGESTED_FIX", fix))


def step(plan, subgoal, action, expectation, verdict=None, notes=None, thought=""):
    return {"manager": manager(plan, subgoal, thought), "operator": operator(action, expectation),
            "reflector": verdict, "notes": notes}


def tips(*items):
    return "TIPS:\n" + "\n".join(f"{i}. {t}" for i, t in enumerate(items, 1))


SEED_TIPS = [
    "Open an app with Open_App from the home screen instead of looking for its icon.",
    "Tap a text field before typing; typed text only goes to the focused field.",
    "If the screen shows a loading or saving message, use Wait before acting again.",
]
TIP_SEARCH = "In the Shop app the search box is at the top of every search page; its X button clears it."
TIP_CLEAR = "If a search box still holds an old query, tap its X button before typing a new one."

TAP_TYPE_AND_ENTER = {
    "name": "Tap_Type_and_Enter",
    "arguments": ["x", "y", "text"],
    "description": "Tap an input box, type text into it, and press enter.",
    "precondition": "There is a text input box on the screen.",
    "atomic_action_sequence": [
        {"name": "Tap", "arguments_map": {"x": "x", "y": "y"}},
        {"name": "Type", "arguments_map": {"text": "text"}},
        {"name": "Enter", "arguments_map": {}},
    ],
}
# Refers to coordinates it never declares; the validator must turn it away.
SEARCH_AND_OPEN = {
    "name": "Search_And_Open",
    "arguments": ["text"],
    "description": "Search for an item and open the first result.",
    "precondition": "The Shop search box is visible.",
    "atomic_action_sequence": [
        {"name": "Tap", "arguments_map": {"x": "x", "y": "y"}},
        {"name": "Type", "arguments_map": {"text": "text"}},
        {"name": "Enter", "arguments_map": {}},
    ],
}

SEARCH = center("shop.home", "shop.search")
CLEAR = center("shop.home", "shop.clear")
SHOP_PLAN = "1. Open the Shop app\n2. Search for {q}\n3. Open the first result"

TASKS = [
    {   # shop_1: all atomic operations
        "steps": [
            step(SHOP_PLAN.format(q="steak"), "Open the Shop app", 'Open_App("Shop")',
                 "The Shop home page opens.", ok("The Shop app is open."),
                 "The search box is at the top of the Shop home page."),
            step(SHOP_PLAN.format(q="steak"), "Search for steak", f"Tap({SEARCH})",
                 "The search box is focused.", ok("The Shop app is open and the search box is focused."),
                 "The search box is at the top of the Shop home page."),
            step(SHOP_PLAN.format(q="steak"), "Search for steak", 'Type("steak")',
                 "The search box reads steak.", ok("The search box reads steak."),
                 "The search box is at the top of the Shop home page."),
            step(SHOP_PLAN.format(q="steak"), "Search for steak", "Enter()",
                 "Results for steak appear.", ok("Search results for steak are shown."),
                 "The first result is Ribeye Steak at $18.99."),
            step(SHOP_PLAN.format(q="steak"), "Open the first result",
                 f"Tap({center('shop.results_steak', 'shop.r1')})",
                 "The Ribeye Steak page opens.", ok("The first result, Ribeye Steak, is open."),
                 "Ribeye Steak costs $18.99."),
            step(SHOP_PLAN.format(q="steak"), "Finish the task", 'Stop("Opened Ribeye Steak, the first result for steak.")',
                 ""),
        ],
        "tips": tips(*SEED_TIPS, TIP_SEARCH),
        "shortcuts": "SHORTCUTS:\n" + json.dumps([TAP_TYPE_AND_ENTER, SEARCH_AND_OPEN], indent=2),
    },
    {   # shop_2: the evolved shortcut saves two iterations
        "steps": [
            step(SHOP_PLAN.format(q="oranges"), "Open the Shop app", 'Open_App("Shop")',
                 "The Shop home page opens.", ok("The Shop app is open."),
                 "The search box is at the top of the Shop home page."),
            step(SHOP_PLAN.format(q="oranges"), "Search for oranges", f'Tap_Type_and_Enter({SEARCH}, "oranges")',
                 "Results for oranges appear.", ok("Search results for oranges are shown."),
                 "The first result is Navel Oranges 3 lb at $5.99."),
            step(SHOP_PLAN.format(q="oranges"), "Open the first result",
                 f"Tap({center('shop.results_oranges', 'shop.r1')})",
                 "The Navel Oranges page opens.", ok("The first result, Navel Oranges 3 lb, is open."),
                 "Navel Oranges 3 lb cost $5.99."),
            step(SHOP_PLAN.format(q="oranges"), "Finish the task",
                 'Stop("Opened Navel Oranges 3 lb, the first result for oranges.")', ""),
        ],
        "tips": tips(*SEED_TIPS, TIP_SEARCH),
        "shortcuts": "SHORTCUTS: none",
    },
    {   # shop_3: two failures in a row escalate to the Manager
        "steps": [
            step("1. Open the Shop app\n2. Search for headphones\n3. Search for batteries", "Open the Shop app",
                 'Open_App("Shop")', "The Shop home page opens.", ok("The Shop app is open."),
                 "The search box is at the top of the Shop home page."),
            step("1. Open the Shop app\n2. Search for headphones\n3. Search for batteries", "Search for headphones",
                 f'Tap_Type_and_Enter({SEARCH}, "headphones")', "Results for headphones appear.",
                 ok("Search results for headphones are shown."), "Headphones results are listed."),
            step("1. Open the Shop app\n2. Search for headphones\n3. Search for batteries", "Search for batteries",
                 f'Tap_Type_and_Enter({SEARCH}, "batteries")', "Results for batteries appear.",
                 failed("B", "The search shows No results found and the box reads headphonesbatteries.",
                        "The new text was appended to the previous query.",
                        "Clear the search box before typing."),
                 "The search box reads headphonesbatteries."),
            step("1. Open the Shop app\n2. Search for headphones\n3. Search for batteries", "Search for batteries",
                 f'Tap_Type_and_Enter({SEARCH}, "batteries")', "Results for batteries appear.",
                 failed("C", "The page still shows No results found.",
                        "The old query is still in the search box.",
                        "Tap the X button to clear the search box first."),
                 "The search box reads headphonesbatteriesbatteries."),
            step("1. Clear the search box with the X button\n2. Search for batteries",
                 "Clear the search box", f"Tap({CLEAR})", "The search box is empty.",
                 ok("The search box is empty and focused."), "The search box is empty.",
                 thought="Two searches in a row failed because text was appended; clear the box first."),
            step("1. Clear the search box with the X button\n2. Search for batteries", "Search for batteries",
                 f'Tap_Type_and_Enter({SEARCH}, "batteries")', "Results for batteries appear.",
                 ok("Search results for batteries are shown."), "The first result is AA Batteries 24 pack."),
            step("1. Clear the search box with the X button\n2. Search for batteries", "Finish the task",
                 'Stop("Searched for headphones and then for batteries.")', ""),
        ],
        "tips": tips(*SEED_TIPS, TIP_SEARCH, TIP_CLEAR),
        "shortcuts": "SHORTCUTS: none",
    },
    {   # notes_4: saving page that needs Wait
        "steps": [
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Open the Notes app",
                 'Open_App("Notes")', "The Notes list opens.", ok("Notes is open."), "Notes has a New note button."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Create a new note",
                 f"Tap({center('notes.list', 'notes.new')})", "An empty note opens.", ok("An empty note is open."),
                 "The note editor has a Save button at the top right."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Type the note text",
                 f"Tap({center('notes.edit', 'notes.body')})", "The note body is focused.",
                 ok("The note body is focused."), "The note editor has a Save button at the top right."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Type the note text",
                 'Type("Groceries: steak, oranges")', "The note body holds the text.",
                 ok("The note text is typed."), "The note reads Groceries: steak, oranges."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Save the note",
                 f"Tap({center('notes.edit', 'notes.save')})", "The note is saved.",
                 ok("Saving has started."), "A Saving... message is shown."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Save the note",
                 "Wait()", "Saving finishes.", ok("The note is saved."), "The note list shows Groceries."),
            step("1. Open Notes\n2. Create a new note\n3. Type the text\n4. Save", "Finish the task",
                 'Stop("Saved the note Groceries: steak, oranges.")', ""),
        ],
        "tips": tips(*SEED_TIPS, TIP_SEARCH, TIP_CLEAR),
        "shortcuts": "SHORTCUTS: none",
    },
    {   # shop_5: popup dismissal and a swipe
        "steps": [
            step("1. Open the Shop app\n2. Open Deals\n3. Scroll down", "Open the Shop app", 'Open_App("Shop")',
                 "The Shop home page opens.", ok("The Shop app is open."), "The Deals button is below the search box."),
            step("1. Open the Shop app\n2. Open Deals\n3. Scroll down", "Open today's deals",
                 f"Tap({center('shop.home', 'shop.deals')})", "The deals page opens.",
                 ok("The deals page is open behind a Shop Plus popup."), "A popup with a Close button covers the deals."),
            step("1. Open the Shop app\n2. Open Deals\n3. Scroll down", "Close the popup",
                 f"Tap({center('shop.promo', 'shop.promo.close')})", "The popup closes.",
                 ok("The popup is closed and the deals are visible."), "Coffee Beans and Olive Oil are on sale."),
            step("1. Open the Shop app\n2. Open Deals\n3. Scroll down", "Scroll down to see more deals",
                 "Swipe(360, 1200, 360, 400)", "More deals appear.", ok("More deals are shown."),
                 "Paper Towels and Dish Soap are on sale."),
            step("1. Open the Shop app\n2. Open Deals\n3. Scroll down", "Finish the task",
                 'Stop("Opened today\'s deals and scrolled to more deals.")', ""),
        ],
        "tips": tips(*SEED_TIPS, TIP_SEARCH, TIP_CLEAR),
        "shortcuts": "SHORTCUTS: none",
    },
]


def main():
    counters = {}
    entries = []

    def add(caller, response):
        counters[caller] = counters.get(caller, 0) + 1
        entries.append({"caller": caller, "step": counters[caller], "response": response})

    for task in TASKS:
        for s in task["steps"]:
            add("manager", s["manager"])
            add("operator", s["operator"])
            if s["reflector"] is not None:
                add("reflector", s["reflector"])
                add("notetaker", "NOTES: " + s["notes"])
        add("tip_reflector", task["tips"])
        add("shortcut_reflector", task["shortcuts"])

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"format": "phoneagent.script.v1", "entries": entries}, indent=2) + "\n")


if __name__ == "__main__":
    main()
