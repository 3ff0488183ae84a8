"""Shared turn mechanics: valid-action enumeration, stepping, observations.

Game-specific rules live in subclasses of Game, which build the initial
state, score actions, and provide a winning agent. Everything here is pure:
step() copies the state, so callers can branch freely during search.
"""

from __future__ import annotations

from fractions import Fraction

from .actions import (
    INVENTORY,
    LOOK_AROUND,
    OPEN,
    PUT,
    READ,
    TAKE,
    Action,
)
from .state import (
    KIND_ANSWER_BOX,
    KIND_CONTAINER,
    KIND_READABLE,
    KIND_SUPPORTER,
    LOC_INVENTORY,
    LOC_ROOM,
    STEP_LIMIT,
    EpisodeSpec,
    GameState,
    InvalidActionError,
    Observation,
    describe_room,
    inventory_text,
    listing,
)


def normalize_quantity(quantity: tuple[int, str]) -> int:
    """Magnitude in milligrams for mg/g, raw magnitude for counts."""
    magnitude, unit = quantity
    if unit == "g":
        return magnitude * 1000
    if unit in ("mg", "count"):
        return magnitude
    raise ValueError(f"unknown unit {unit!r}")


def valid_actions(state: GameState) -> list[Action]:
    """All currently legal actions, in canonical order.

    Look-around and inventory are always available; readables can only be
    read from the inventory; put targets are open containers, supporters,
    and the answer box. The answer box keeps what it is given.
    """
    if state.done:
        return []
    actions = [Action(LOOK_AROUND), Action(INVENTORY)]
    actions.extend(Action(TAKE, name) for name in sorted(state.visible_portables()))
    closed = sorted(
        name for name, o in state.objects.items()
        if o.kind == KIND_CONTAINER and not o.is_open
    )
    actions.extend(Action(OPEN, name) for name in closed)
    readable_held = sorted(
        name for name in state.inventory() if state.obj(name).kind == KIND_READABLE
    )
    actions.extend(Action(READ, name) for name in readable_held)
    destinations = []
    for name, o in state.objects.items():
        if o.kind in (KIND_SUPPORTER, KIND_ANSWER_BOX) or (o.kind == KIND_CONTAINER and o.is_open):
            prep = "on" if o.kind == KIND_SUPPORTER else "in"
            destinations.append((name, prep))
    destinations.sort()
    for held in sorted(state.inventory()):
        actions.extend(Action(PUT, held, dest, prep=prep) for dest, prep in destinations)
    return actions


class Game:
    """One benchmark game. Subclasses implement build/apply/gold."""

    name = ""

    def task_description(self, state: GameState) -> str:
        raise NotImplementedError

    def build(self, spec: EpisodeSpec) -> GameState:
        raise NotImplementedError

    def apply(self, state: GameState, action: Action) -> str:
        """Mutate `state` per `action`, returning the feedback text."""
        raise NotImplementedError

    def gold(self, state: GameState) -> list[Action]:
        """A winning action sequence from the given initial state."""
        raise NotImplementedError

    # -- shared mechanics -----------------------------------------------

    def initial_state(self, spec: EpisodeSpec) -> GameState:
        state = self.build(spec.validate())
        state.last_feedback = describe_room(state)
        return state

    def step(self, state: GameState, action: Action) -> tuple[GameState, Observation]:
        if state.done:
            raise InvalidActionError("episode is over")
        if action not in valid_actions(state):
            raise InvalidActionError(f"invalid action {action.render()!r}")
        new = state.copy()
        new.steps += 1
        new.last_action = action.render()
        before = new.score
        feedback = self._apply_common(new, action)
        if new.done and new.score == 1 and not new.failed:
            feedback += " Game completed."
        elif new.failed:
            feedback += " Task failed."
        if not new.done and new.steps >= STEP_LIMIT:
            new.done = True
        new.last_feedback = feedback
        return new, self.observe(new, reward_delta=new.score - before)

    def observe(self, state: GameState, reward_delta: Fraction = Fraction(0)) -> Observation:
        return Observation(
            task_description=self.task_description(state),
            obs_text=state.last_feedback,
            inventory_text=inventory_text(state),
            look_text=describe_room(state),
            valid_actions=valid_actions(state),
            score=state.score,
            reward_delta=reward_delta,
            done=state.done,
            failed=state.failed,
            step_index=state.steps,
        )

    def _apply_common(self, state: GameState, action: Action) -> str:
        """Default handling for moves that work the same in every game."""
        if action.verb == LOOK_AROUND:
            return describe_room(state)
        if action.verb == INVENTORY:
            return inventory_text(state)
        if action.verb == TAKE:
            state.obj(action.arg1).location = LOC_INVENTORY
            return self.on_take(state, action.arg1)
        if action.verb == OPEN:
            state.obj(action.arg1).is_open = True
            contents = state.holder_contents(action.arg1)
            if contents:
                return f"You open the {action.arg1}. Inside it you see {listing(contents, state)}."
            return f"You open the {action.arg1}. It's empty inside."
        if action.verb == READ:
            return self.on_read(state, action.arg1)
        if action.verb == PUT:
            state.obj(action.arg1).location = action.arg2
            return self.on_put(state, action.arg1, action.arg2)
        raise InvalidActionError(f"unknown verb {action.verb!r}")

    # Hooks with no-reward defaults; games override where scoring happens.

    def on_take(self, state: GameState, name: str) -> str:
        return f"You take the {name}."

    def on_read(self, state: GameState, name: str) -> str:
        return f"You read the {name}."

    def on_put(self, state: GameState, name: str, dest: str) -> str:
        prep = "on" if state.obj(dest).kind == KIND_SUPPORTER else "in"
        return f"You put the {name} {prep} the {dest}."
