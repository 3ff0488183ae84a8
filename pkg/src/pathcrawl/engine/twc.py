"""Household tidy-up game.

One out-of-place item sits in the room; putting it where it usually belongs
wins. Picking it up pays half, the correct placement pays the rest. The
usual location may be a closed container (open it first) or a supporter.
Wrong placements cost nothing but waste steps.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .actions import Action, OPEN, PUT, TAKE
from .base import Game
from .state import (
    KIND_CONTAINER,
    KIND_ITEM,
    KIND_SUPPORTER,
    LOC_INVENTORY,
    EpisodeSpec,
    GameObject,
    GameState,
)
from .vocab import canonical_location_lexicon, twc_by_split

ROOMS = ("bedroom", "laundry room", "kitchen", "bathroom", "study", "hallway")

TASK_DESCRIPTION = (
    "Your task is to pick up objects, then place them in their usual locations "
    "in the environment."
)

# Share of variations whose goal location is a closed container. Fixed by
# variation index (not the seed) so every split carries the same mix.
_CONTAINER_TARGET_RATIO = (True, True, True, False, False)


class TwcGame(Game):
    name = "twc"

    def task_description(self, state: GameState) -> str:
        return TASK_DESCRIPTION

    def build(self, spec: EpisodeSpec) -> GameState:
        rng = random.Random(spec.seed)
        pools = twc_by_split()[spec.split]
        lexicon = canonical_location_lexicon()

        use_container = _CONTAINER_TARGET_RATIO[
            spec.variation_index % len(_CONTAINER_TARGET_RATIO)
        ]
        target = rng.choice(pools["container_items" if use_container else "supporter_items"])
        goal = lexicon[target]

        other_containers = [c for c in pools["containers"] if c != goal]
        other_supporters = [s for s in pools["supporters"] if s != goal]
        # Always at least one closed container and two supporters among the
        # distractors so rooms have both location flavors.
        distractors = rng.sample(other_containers, rng.randint(1, 2))
        distractors += rng.sample(other_supporters, rng.randint(2, 3))
        locations = [goal] + distractors
        rng.shuffle(locations)

        objects: dict[str, GameObject] = {}
        kind_of = pools["location_kind"]
        for loc in locations:
            if kind_of[loc] == "container":
                objects[loc] = GameObject(loc, KIND_CONTAINER, is_open=False)
            else:
                objects[loc] = GameObject(loc, KIND_SUPPORTER)
        objects[target] = GameObject(target, KIND_ITEM)

        return GameState(
            spec=spec,
            room=rng.choice(ROOMS),
            objects=objects,
            payload={"target": target, "goal": goal, "take_rewarded": False},
        )

    def on_take(self, state: GameState, name: str) -> str:
        text = super().on_take(state, name)
        if name == state.payload["target"] and not state.payload["take_rewarded"]:
            state.payload["take_rewarded"] = True
            state.score += Fraction(1, 2)
        return text

    def on_put(self, state: GameState, name: str, dest: str) -> str:
        text = super().on_put(state, name, dest)
        if name == state.payload["target"] and dest == state.payload["goal"]:
            state.score += Fraction(1, 2)
            state.done = True
        return text

    def gold(self, state: GameState) -> list[Action]:
        target = state.payload["target"]
        goal = state.payload["goal"]
        goal_obj = state.obj(goal)
        actions = [Action(TAKE, target)]
        if goal_obj.kind == KIND_CONTAINER and not goal_obj.is_open:
            actions.append(Action(OPEN, goal))
        prep = "on" if goal_obj.kind == KIND_SUPPORTER else "in"
        actions.append(Action(PUT, target, goal, prep=prep))
        return actions
