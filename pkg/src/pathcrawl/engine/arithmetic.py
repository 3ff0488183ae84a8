"""Math pick-and-place game.

A readable math problem names an operation over two integers; exactly one
room item carries a quantity equal to the answer. Distractor quantities are
the results of applying the other three operations to the same operands,
plus random fillers. Reading the problem is worth half the score the first
time; boxing the answer item wins outright, boxing anything else fails.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .actions import Action, PUT, READ, TAKE
from .base import Game
from .state import (
    KIND_ANSWER_BOX,
    KIND_CONTAINER,
    KIND_ITEM,
    KIND_READABLE,
    KIND_SUPPORTER,
    EpisodeSpec,
    GameObject,
    GameState,
)
from .vocab import produce_by_split

OPERATORS = ("add", "subtract", "multiply", "divide")

ROOMS = ("laundry room", "supermarket", "kitchen", "pantry", "workshop", "storage room")
SUPPORTERS = ("bench", "work table", "showcase", "counter", "low shelf", "side table")
CLOSED_CONTAINERS = ("washing machine", "clothes drier", "supply cabinet", "steel locker")

PROBLEM_NAME = "math problem"
BOX_NAME = "box"

TASK_DESCRIPTION = (
    "Your first task is to solve the math problem. Then, pick up the item with "
    "the same quantity as the math problem answer, and place it in the box."
)

DEFAULT_ITEM_COUNT = 6


def operation_results(a: int, b: int) -> dict[str, int]:
    assert a % b == 0
    return {"add": a + b, "subtract": a - b, "multiply": a * b, "divide": a // b}


def _pick_operands(rng: random.Random) -> tuple[int, int]:
    # Divisible pairs keep all four results integral; retry until the four
    # results are distinct positive values.
    while True:
        b = rng.randint(2, 12)
        a = b * rng.randint(2, 12)
        results = operation_results(a, b)
        values = list(results.values())
        if len(set(values)) == 4 and all(v > 0 for v in values):
            return a, b


class ArithmeticGame(Game):
    name = "arithmetic"

    def __init__(self, item_count: int = DEFAULT_ITEM_COUNT):
        if item_count < 4:
            raise ValueError("need at least the answer and three distractors")
        self.item_count = item_count

    def task_description(self, state: GameState) -> str:
        return TASK_DESCRIPTION

    def build(self, spec: EpisodeSpec) -> GameState:
        rng = random.Random(spec.seed)
        operator = OPERATORS[spec.variation_index % len(OPERATORS)]
        a, b = _pick_operands(rng)
        results = operation_results(a, b)
        answer = results[operator]

        quantities = [answer] + [v for op, v in results.items() if op != operator]
        used = set(quantities)
        while len(quantities) < self.item_count:
            filler = rng.randint(2, 99)
            if filler not in used:
                quantities.append(filler)
                used.add(filler)

        fruits = rng.sample(list(produce_by_split()[spec.split]), self.item_count)
        item_names = [f"{q} {fruit}" for q, fruit in zip(quantities, fruits)]

        room = rng.choice(ROOMS)
        supporters = rng.sample(list(SUPPORTERS), rng.randint(2, 3))
        containers = rng.sample(list(CLOSED_CONTAINERS), rng.randint(1, 2))

        objects: dict[str, GameObject] = {}
        for s in supporters:
            objects[s] = GameObject(s, KIND_SUPPORTER)
        objects[BOX_NAME] = GameObject(BOX_NAME, KIND_ANSWER_BOX)
        objects[PROBLEM_NAME] = GameObject(PROBLEM_NAME, KIND_READABLE)
        for c in containers:
            objects[c] = GameObject(c, KIND_CONTAINER, is_open=False)
        order = list(range(self.item_count))
        rng.shuffle(order)
        for idx in order:
            quantity, name = quantities[idx], item_names[idx]
            objects[name] = GameObject(
                name, KIND_ITEM, location=rng.choice(supporters), quantity=(quantity, "count")
            )

        return GameState(
            spec=spec,
            room=room,
            objects=objects,
            payload={
                "problem": f"{operator} {a} and {b}",
                "answer": answer,
                "answer_item": item_names[0],
                "read_rewarded": False,
            },
        )

    def on_read(self, state: GameState, name: str) -> str:
        if not state.payload["read_rewarded"]:
            state.payload["read_rewarded"] = True
            state.score += Fraction(1, 2)
        return (
            f"Your task is to solve the following math problem: {state.payload['problem']}. "
            "Then, pick up the item with the same quantity as the answer, and place it in the box."
        )

    def on_put(self, state: GameState, name: str, dest: str) -> str:
        text = super().on_put(state, name, dest)
        if state.obj(dest).kind == KIND_ANSWER_BOX:
            if name == state.payload["answer_item"]:
                state.score = Fraction(1)
                state.done = True
            else:
                state.failed = True
                state.done = True
        return text

    def gold(self, state: GameState) -> list[Action]:
        answer_item = state.payload["answer_item"]
        return [
            Action(TAKE, PROBLEM_NAME),
            Action(READ, PROBLEM_NAME),
            Action(TAKE, answer_item),
            Action(PUT, answer_item, BOX_NAME, prep="in"),
        ]
