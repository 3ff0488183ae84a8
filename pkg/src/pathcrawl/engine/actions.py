"""Action vocabulary shared by all games: parsing, rendering, canonical order.

Every action the engine emits renders to a unique text form that parses back
to the same action (round-trip property). Object names never contain the
substrings " in " or " on ", which keeps two-argument parsing unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

LOOK_AROUND = "look-around"
INVENTORY = "inventory"
TAKE = "take"
OPEN = "open"
READ = "read"
PUT = "put"

# Expansion and tie-break order used everywhere a list of actions is built.
VERB_ORDER = (LOOK_AROUND, INVENTORY, TAKE, OPEN, READ, PUT)
_VERB_RANK = {v: i for i, v in enumerate(VERB_ORDER)}

_ZERO_ARG_TEXT = {LOOK_AROUND: "look around", INVENTORY: "inventory"}
_ONE_ARG = (TAKE, OPEN, READ)


class ActionParseError(ValueError):
    """Raised for text that is not a well-formed action."""


@dataclass(frozen=True, order=True)
class Action:
    verb: str
    arg1: str | None = None
    arg2: str | None = None
    prep: str = "in"  # put only: "in" for containers/boxes, "on" for supporters

    def render(self) -> str:
        if self.verb in _ZERO_ARG_TEXT:
            return _ZERO_ARG_TEXT[self.verb]
        if self.verb in _ONE_ARG:
            return f"{self.verb} {self.arg1}"
        return f"put {self.arg1} {self.prep} {self.arg2}"

    def sort_key(self) -> tuple:
        return (_VERB_RANK[self.verb], self.arg1 or "", self.arg2 or "")

    def __str__(self) -> str:
        return self.render()


def parse_action(text: str) -> Action:
    """Parse the canonical text form of an action."""
    s = text.strip()
    if s == "look around":
        return Action(LOOK_AROUND)
    if s == "inventory":
        return Action(INVENTORY)
    for verb in _ONE_ARG:
        head = verb + " "
        if s.startswith(head) and len(s) > len(head):
            return Action(verb, s[len(head):])
    if s.startswith("put "):
        body = s[4:]
        for prep in (" in ", " on "):
            if prep in body:
                arg1, arg2 = body.split(prep, 1)
                if arg1 and arg2:
                    return Action(PUT, arg1, arg2, prep=prep.strip())
    raise ActionParseError(f"unparseable action: {text!r}")
