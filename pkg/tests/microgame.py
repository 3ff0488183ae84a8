"""Tiny synthetic environments for exercising the crawler against an oracle.

A micro game is a randomized position graph: moves a/b/c/d descend, "wait"
stays put, "back" retreats one level. Positions may pay a reward, win, or
fail. States expose the same fields the crawler reads from real games.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from pathcrawl.engine import Action, EpisodeSpec, Observation

MOVES = ("a", "b", "c", "d")


@dataclass(frozen=True)
class MicroState:
    path: tuple[str, ...]
    score: Fraction
    done: bool
    failed: bool
    last_action: str = ""


@dataclass
class MicroGame:
    """Environment-protocol implementation over a generated position table."""

    seed: int
    branching: int = 4
    depth: int = 4
    reward_rate: float = 0.15
    fail_rate: float = 0.1
    allow_wait: bool = True
    allow_back: bool = False
    spec: EpisodeSpec = field(default_factory=lambda: EpisodeSpec("arithmetic", "train", 0))
    _table: dict = field(default_factory=dict, init=False)

    def __post_init__(self):
        rng = random.Random(self.seed)
        self._build(rng, (), 0)

    def _build(self, rng: random.Random, position: tuple[str, ...], level: int) -> None:
        n = rng.randint(1, self.branching)
        moves = {}
        for move in MOVES[:n]:
            roll = rng.random()
            if roll < self.fail_rate:
                outcome = "fail"
            elif roll < self.fail_rate + self.reward_rate:
                outcome = "win" if rng.random() < 0.3 else "reward"
            else:
                outcome = "none"
            moves[move] = outcome
        self._table[position] = moves
        if level + 1 < self.depth + 2:  # build past the horizon so depth cuts matter
            for move in moves:
                self._build(rng, position + (move,), level + 1)

    # -- Environment protocol -------------------------------------------

    def initial_state(self) -> MicroState:
        return MicroState(path=(), score=Fraction(0), done=False, failed=False)

    def valid_actions(self, state: MicroState) -> list[Action]:
        if state.done:
            return []
        actions = []
        if self.allow_wait:
            actions.append(Action("look-around"))
        if self.allow_back and state.path:
            actions.append(Action("take", "back"))
        for move in sorted(self._table.get(state.path, {})):
            actions.append(Action("take", move))
        return actions

    def step(self, state: MicroState, action: Action) -> tuple[MicroState, Observation]:
        assert not state.done
        reward = Fraction(0)
        if action.verb == "look-around":
            new = replace(state, last_action=action.render())
        elif action.arg1 == "back" and self.allow_back:
            new = replace(state, path=state.path[:-1], last_action=action.render())
        else:
            outcome = self._table[state.path][action.arg1]
            path = state.path + (action.arg1,)
            if outcome == "fail":
                new = MicroState(path, state.score, True, True, action.render())
            elif outcome == "win":
                reward = Fraction(1) - state.score
                new = MicroState(path, Fraction(1), True, False, action.render())
            elif outcome == "reward":
                reward = Fraction(1, 4)
                score = min(Fraction(1), state.score + reward)
                new = MicroState(path, score, score == 1, False, action.render())
            else:
                new = MicroState(path, state.score, len(path) >= self.depth + 2, False, action.render())
        return new, self.observe(new, reward)

    def observe(self, state: MicroState, reward: Fraction = Fraction(0)) -> Observation:
        return Observation(
            task_description="reach a paying position",
            obs_text=" ".join(state.path) or "start",
            inventory_text="",
            look_text="",
            valid_actions=self.valid_actions(state),
            score=state.score,
            reward_delta=reward,
            done=state.done,
            failed=state.failed,
            step_index=len(state.path),
        )

    def state_key(self, state: MicroState) -> str:
        return f"{'/'.join(state.path)}|{state.score}|{state.last_action}"


def oracle_enumerate(env, horizon: int, dedup: bool) -> set[tuple[str, ...]]:
    """Independent brute force: try every action string up to the horizon,
    replaying each candidate from scratch, and keep exactly the sequences
    whose one and only positive reward is on the final step.
    """
    results: set[tuple[str, ...]] = set()

    def all_sequences(prefix: tuple[str, ...], length: int) -> None:
        state = env.initial_state()
        ok = True
        for text in prefix:
            from pathcrawl.engine import parse_action

            state, _ = env.step(state, parse_action(text))
        for action in env.valid_actions(state):
            candidate = prefix + (action.render(),)
            if evaluate(candidate):
                results.add(candidate)
            if length + 1 < horizon:
                all_sequences(candidate, length + 1)

    def evaluate(sequence: tuple[str, ...]) -> bool:
        from pathcrawl.engine import parse_action

        state = env.initial_state()
        keys = [env.state_key(state)]
        for i, text in enumerate(sequence):
            last = i == len(sequence) - 1
            if state.done or parse_action(text) not in env.valid_actions(state):
                return False
            state, obs = env.step(state, parse_action(text))
            if state.failed:
                return False
            if obs.reward_delta > 0:
                return last
            if last:
                return False
            if dedup:
                key = env.state_key(state)
                if key in keys:
                    return False
                keys.append(key)
        return False

    all_sequences((), 0)
    return results
