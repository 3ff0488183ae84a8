"""Abstraction of concrete trajectories into parameterized macro sequences.

Replacing each distinct argument with a variable (first appearance order)
turns "take hat / put hat on hat rack" and "take dirty shirt / put dirty
shirt in washer" into the same key, Take(X) Put(X,Y), which is the unit of
grouping across game variations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .crawler import Trajectory
from .engine import parse_action

VARIABLE_NAMES = ("X", "Y", "Z", "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K")

_VERB_DISPLAY = {
    "take": "Take",
    "put": "Put",
    "open": "Open",
    "read": "Read",
    "look-around": "Look-Around",
    "inventory": "Inventory",
}


@dataclass(frozen=True)
class MacroAction:
    verb: str
    slots: tuple[int, ...] = ()

    def render(self) -> str:
        name = _VERB_DISPLAY[self.verb]
        if not self.slots:
            return name
        return f"{name}({','.join(VARIABLE_NAMES[s] for s in self.slots)})"


@dataclass(frozen=True)
class MacroSequence:
    actions: tuple[MacroAction, ...]

    @property
    def canonical_key(self) -> str:
        return " ".join(a.render() for a in self.actions)

    def __len__(self) -> int:
        return len(self.actions)

    def __str__(self) -> str:
        return self.canonical_key


def variabilize(trajectory: Trajectory) -> MacroSequence:
    """Abstract a trajectory into its macro key.

    Slot ids are dense: the first distinct argument anywhere in the
    trajectory is X, the next new one Y, and so on; repeats reuse their slot.
    """
    slots: dict[str, int] = {}
    actions = []
    for text in trajectory.actions:
        action = parse_action(text)
        ids = []
        for arg in (action.arg1, action.arg2):
            if arg is None:
                continue
            if arg not in slots:
                if len(slots) >= len(VARIABLE_NAMES):
                    raise ValueError("trajectory uses more distinct arguments than variables")
                slots[arg] = len(slots)
            ids.append(slots[arg])
        actions.append(MacroAction(action.verb, tuple(ids)))
    return MacroSequence(tuple(actions))


@dataclass
class PathGroup:
    """All trajectories, across variations, sharing one macro sequence."""

    macro: MacroSequence
    members: dict[int, list[Trajectory]] = field(default_factory=dict)
    segment_index: int = 0

    @property
    def coverage(self) -> int:
        return len(self.members)

    @property
    def key(self) -> str:
        return self.macro.canonical_key

    def sort_key(self) -> tuple:
        return (len(self.macro), -self.coverage, self.key)

    def add(self, trajectory: Trajectory) -> None:
        self.members.setdefault(trajectory.spec.variation_index, []).append(trajectory)

    def shortest_per_variation(self) -> dict[int, Trajectory]:
        """The training trajectory for each covered variation: shortest,
        ties broken lexicographically on the action strings."""
        out = {}
        for variation, trajectories in self.members.items():
            out[variation] = min(trajectories, key=lambda t: (len(t.steps), tuple(t.actions)))
        return out

    def all_trajectories(self) -> list[Trajectory]:
        out = []
        for variation in sorted(self.members):
            out.extend(self.members[variation])
        return out


def group_paths(trajectories: list[Trajectory]) -> list[PathGroup]:
    """Partition trajectories by macro key.

    Groups come back sorted shortest-first, then by coverage (descending),
    then by key, which is also the evaluation order downstream.
    """
    if not trajectories:
        return []
    segments = {t.segment_index for t in trajectories}
    if len(segments) != 1:
        raise ValueError(f"cannot group across segments: {sorted(segments)}")
    games = {(t.spec.game, t.spec.split) for t in trajectories}
    if len(games) != 1:
        raise ValueError(f"cannot group across games or splits: {sorted(games)}")

    by_key: dict[str, PathGroup] = {}
    for t in trajectories:
        macro = variabilize(t)
        group = by_key.get(macro.canonical_key)
        if group is None:
            group = by_key[macro.canonical_key] = PathGroup(macro, segment_index=t.segment_index)
        group.add(t)
    return sorted(by_key.values(), key=PathGroup.sort_key)


def select_k_shortest(groups: list[PathGroup], k: int) -> list[PathGroup]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return sorted(groups, key=PathGroup.sort_key)[:k]


def is_gold_subsequence(needle: MacroSequence, haystack: MacroSequence) -> bool:
    """True when `needle` embeds into `haystack` in order with a consistent,
    injective renaming of slots. Used to check recovered macros against
    known-good shapes."""

    def extend(n_idx: int, h_idx: int, mapping: dict[int, int]) -> bool:
        if n_idx == len(needle.actions):
            return True
        if h_idx == len(haystack.actions):
            return False
        target = needle.actions[n_idx]
        for j in range(h_idx, len(haystack.actions)):
            candidate = haystack.actions[j]
            if candidate.verb != target.verb or len(candidate.slots) != len(target.slots):
                continue
            trial = dict(mapping)
            ok = True
            for ns, hs in zip(target.slots, candidate.slots):
                if trial.get(ns, hs) != hs or (ns not in trial and hs in trial.values()):
                    ok = False
                    break
                trial[ns] = hs
            if ok and extend(n_idx + 1, j + 1, trial):
                return True
        return False

    return extend(0, 0, {})
