"""Quantity-sorting game.

Three to five items with mg/g quantities must enter the answer box in
ascending normalized order. Each correct placement pays 1/n; a single
out-of-order placement fails the episode. Boxed items stay boxed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .actions import Action, PUT, TAKE
from .base import Game, normalize_quantity
from .state import (
    KIND_ANSWER_BOX,
    KIND_CONTAINER,
    KIND_ITEM,
    KIND_SUPPORTER,
    EpisodeSpec,
    GameObject,
    GameState,
)
from .vocab import materials_by_split

ROOMS = ("living room", "office", "garage", "studio", "den", "attic")
SUPPORTERS = (
    "TV stand", "coffee table", "book case", "sofa", "end table",
    "arm chair", "side table", "display shelf",
)
CLOSED_CONTAINERS = ("wastepaper basket", "storage chest", "footlocker")

BOX_NAME = "box"

TASK_DESCRIPTION = (
    "Your task is to sort objects by quantity. First, place the object with the "
    "smallest quantity in the box. Then, place the objects with the next smallest "
    "quantity in the box, and repeat until all objects have been placed in the box."
)


class SortingGame(Game):
    name = "sorting"

    def task_description(self, state: GameState) -> str:
        return TASK_DESCRIPTION

    def build(self, spec: EpisodeSpec) -> GameState:
        rng = random.Random(spec.seed)
        count = 3 + spec.variation_index % 3
        materials = rng.sample(list(materials_by_split()[spec.split]), count)

        # Mixed units in most episodes; quantities unique after normalization
        # so "next smallest" is always well defined.
        quantities: list[tuple[int, str]] = []
        seen: set[int] = set()
        force_mixed = rng.random() < 0.85
        while len(quantities) < count:
            if force_mixed and len(quantities) == 0:
                unit = "mg"
            elif force_mixed and len(quantities) == 1:
                unit = "g"
            else:
                unit = rng.choice(("mg", "g"))
            magnitude = rng.randint(2, 999) if unit == "mg" else rng.randint(1, 9)
            quantity = (magnitude, unit)
            if normalize_quantity(quantity) in seen:
                continue
            seen.add(normalize_quantity(quantity))
            quantities.append(quantity)

        names = [f"{m}{u} of {mat}" for (m, u), mat in zip(quantities, materials)]
        room = rng.choice(ROOMS)
        supporters = rng.sample(list(SUPPORTERS), count + rng.randint(1, 2))
        containers = rng.sample(list(CLOSED_CONTAINERS), rng.randint(0, 1))

        objects: dict[str, GameObject] = {}
        for s in supporters:
            objects[s] = GameObject(s, KIND_SUPPORTER)
        objects[BOX_NAME] = GameObject(BOX_NAME, KIND_ANSWER_BOX)
        for c in containers:
            objects[c] = GameObject(c, KIND_CONTAINER, is_open=False)
        for i, (name, quantity) in enumerate(zip(names, quantities)):
            objects[name] = GameObject(name, KIND_ITEM, location=supporters[i], quantity=quantity)

        ascending = sorted(names, key=lambda n: normalize_quantity(objects[n].quantity))
        return GameState(
            spec=spec,
            room=room,
            objects=objects,
            payload={"order": ascending, "placed": 0},
        )

    def on_put(self, state: GameState, name: str, dest: str) -> str:
        text = super().on_put(state, name, dest)
        if state.obj(dest).kind != KIND_ANSWER_BOX:
            return text
        order: list[str] = state.payload["order"]
        placed: int = state.payload["placed"]
        if name == order[placed]:
            state.payload["placed"] = placed + 1
            state.score += Fraction(1, len(order))
            if state.payload["placed"] == len(order):
                state.done = True
        else:
            state.failed = True
            state.done = True
        return text

    def gold(self, state: GameState) -> list[Action]:
        actions = []
        for name in state.payload["order"]:
            actions.append(Action(TAKE, name))
            actions.append(Action(PUT, name, BOX_NAME, prep="in"))
        return actions
