"""Deterministic, seedable simulators for the three benchmark games.

The functional surface (generate_episode / step / valid_actions / gold_agent)
operates on immutable-by-convention GameState values: step() always returns a
fresh state, so search code can branch without copying anything itself.
"""

from __future__ import annotations

from .actions import Action, ActionParseError, parse_action
from .base import Game, normalize_quantity, valid_actions
from .state import (
    GAMES,
    SPLITS,
    STEP_LIMIT,
    VARIATIONS_PER_SPLIT,
    EngineError,
    EpisodeSpec,
    GameObject,
    GameState,
    InvalidActionError,
    InvalidSpecError,
    Observation,
    canonical_key,
    describe_room,
    inventory_text,
)
from .arithmetic import ArithmeticGame
from .sorting import SortingGame
from .twc import TwcGame

_GAME_REGISTRY: dict[str, Game] = {
    "arithmetic": ArithmeticGame(),
    "sorting": SortingGame(),
    "twc": TwcGame(),
}


def game_for(name: str) -> Game:
    try:
        return _GAME_REGISTRY[name]
    except KeyError:
        raise InvalidSpecError(f"unknown game {name!r}") from None


def generate_episode(spec: EpisodeSpec) -> GameState:
    return game_for(spec.game).initial_state(spec)


def step(state: GameState, action: Action) -> tuple[GameState, Observation]:
    return game_for(state.spec.game).step(state, action)


def observe(state: GameState) -> Observation:
    return game_for(state.spec.game).observe(state)


def gold_agent(state: GameState) -> list[Action]:
    """Winning action list for an initial state. Test/supervised use only."""
    return game_for(state.spec.game).gold(state)


def all_specs(game: str, split: str, master_seed: int = 0) -> list[EpisodeSpec]:
    return [
        EpisodeSpec(game, split, i, master_seed).validate()
        for i in range(VARIATIONS_PER_SPLIT)
    ]


class Environment:
    """Uniform stepping interface consumed by the crawler and evaluators.

    Thin adapter over the functional engine API; custom test games can
    implement the same four methods.
    """

    def __init__(self, spec: EpisodeSpec, game: Game | None = None):
        self.spec = spec
        self.game = game or game_for(spec.game)

    def initial_state(self) -> GameState:
        return self.game.initial_state(self.spec)

    def step(self, state: GameState, action: Action) -> tuple[GameState, Observation]:
        return self.game.step(state, action)

    def valid_actions(self, state: GameState) -> list[Action]:
        return valid_actions(state)

    def observe(self, state: GameState) -> Observation:
        return self.game.observe(state)

    def state_key(self, state: GameState) -> str:
        return canonical_key(state)


def make_environment(spec: EpisodeSpec) -> Environment:
    return Environment(spec.validate())


__all__ = [
    "Action",
    "ActionParseError",
    "ArithmeticGame",
    "Environment",
    "EngineError",
    "EpisodeSpec",
    "GAMES",
    "Game",
    "GameObject",
    "GameState",
    "InvalidActionError",
    "InvalidSpecError",
    "Observation",
    "SPLITS",
    "STEP_LIMIT",
    "SortingGame",
    "TwcGame",
    "VARIATIONS_PER_SPLIT",
    "all_specs",
    "canonical_key",
    "describe_room",
    "game_for",
    "generate_episode",
    "gold_agent",
    "inventory_text",
    "make_environment",
    "normalize_quantity",
    "observe",
    "parse_action",
    "step",
    "valid_actions",
]
