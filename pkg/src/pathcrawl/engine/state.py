"""Core simulator state: episode specs, objects, observations, room prose."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .actions import Action

GAMES = ("arithmetic", "sorting", "twc")
SPLITS = ("train", "dev", "test")
VARIATIONS_PER_SPLIT = 100
STEP_LIMIT = 50

KIND_ITEM = "item"
KIND_CONTAINER = "container"
KIND_SUPPORTER = "supporter"
KIND_READABLE = "readable"
KIND_ANSWER_BOX = "answer-box"

LOC_ROOM = "room"
LOC_INVENTORY = "inventory"


class EngineError(Exception):
    """Base class for simulator errors."""


class InvalidSpecError(EngineError):
    pass


class InvalidActionError(EngineError):
    pass


@dataclass(frozen=True, order=True)
class EpisodeSpec:
    game: str
    split: str
    variation_index: int
    master_seed: int = 0

    def validate(self) -> "EpisodeSpec":
        if self.game not in GAMES:
            raise InvalidSpecError(f"unknown game {self.game!r}")
        if self.split not in SPLITS:
            raise InvalidSpecError(f"unknown split {self.split!r}")
        if not 0 <= self.variation_index < VARIATIONS_PER_SPLIT:
            raise InvalidSpecError(
                f"variation_index {self.variation_index} outside [0, {VARIATIONS_PER_SPLIT})"
            )
        return self

    @property
    def seed(self) -> int:
        key = f"{self.game}|{self.split}|{self.variation_index}|{self.master_seed}"
        return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")

    def to_dict(self) -> dict:
        return {
            "game": self.game,
            "split": self.split,
            "variation_index": self.variation_index,
            "master_seed": self.master_seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EpisodeSpec":
        return cls(d["game"], d["split"], int(d["variation_index"]), int(d.get("master_seed", 0))).validate()


@dataclass
class GameObject:
    name: str
    kind: str
    location: str = LOC_ROOM
    quantity: tuple[int, str] | None = None  # (magnitude, unit) unit in {count, mg, g}
    is_open: bool | None = None  # containers only

    def copy(self) -> "GameObject":
        return replace(self)


@dataclass
class GameState:
    spec: EpisodeSpec
    room: str
    objects: dict[str, GameObject]
    score: Fraction = Fraction(0)
    steps: int = 0
    done: bool = False
    failed: bool = False
    last_action: str = ""
    last_feedback: str = ""
    payload: dict = field(default_factory=dict)

    def copy(self) -> "GameState":
        payload = {k: list(v) if isinstance(v, list) else v for k, v in self.payload.items()}
        return GameState(
            spec=self.spec,
            room=self.room,
            objects={name: obj.copy() for name, obj in self.objects.items()},
            score=self.score,
            steps=self.steps,
            done=self.done,
            failed=self.failed,
            last_action=self.last_action,
            last_feedback=self.last_feedback,
            payload=payload,
        )

    def obj(self, name: str) -> GameObject:
        return self.objects[name]

    def holder_contents(self, holder: str) -> list[str]:
        return [name for name, o in self.objects.items() if o.location == holder]

    def inventory(self) -> list[str]:
        return self.holder_contents(LOC_INVENTORY)

    def visible_portables(self) -> list[str]:
        """Names of takeable objects: loose, on supporters, or in open containers.

        Objects inside the answer box stay there; closed containers hide
        their contents.
        """
        out = []
        for name, o in self.objects.items():
            if o.kind not in (KIND_ITEM, KIND_READABLE):
                continue
            loc = o.location
            if loc == LOC_ROOM:
                out.append(name)
            elif loc in (LOC_INVENTORY,):
                continue
            else:
                holder = self.objects.get(loc)
                if holder is None:
                    continue
                if holder.kind == KIND_SUPPORTER:
                    out.append(name)
                elif holder.kind == KIND_CONTAINER and holder.is_open:
                    out.append(name)
        return out


def canonical_key(state: GameState) -> str:
    """Deterministic state fingerprint for revisit pruning.

    Includes the last action so that a single no-op differs from its parent
    while a repeated no-op collides with its ancestor; excludes the step
    counter so revisits are actually detectable.
    """
    parts = []
    for name in sorted(state.objects):
        o = state.objects[name]
        parts.append(f"{name}\x01{o.kind}\x01{o.location}\x01{o.quantity}\x01{o.is_open}")
    payload = "\x02".join(f"{k}={state.payload[k]!r}" for k in sorted(state.payload))
    blob = "\x00".join(
        [state.room, str(state.score), str(int(state.done)), str(int(state.failed)),
         state.last_action, payload] + parts
    )
    return hashlib.sha1(blob.encode("utf-8")).hexdigest()


@dataclass
class Observation:
    task_description: str
    obs_text: str
    inventory_text: str
    look_text: str
    valid_actions: list[Action]
    score: Fraction
    reward_delta: Fraction
    done: bool
    failed: bool
    step_index: int


# --- prose templating -------------------------------------------------------

_LEADS = (
    "In one part of the room you see",
    "There is also",
    "You also see",
    "In another part of the room you see",
)


def display_name(obj: GameObject) -> str:
    # Quantity-bearing names ("51 pineapples", "23mg of oak") take no article.
    if obj.quantity is not None:
        return obj.name
    return f"a {obj.name}"


def listing(names: list[str], state: GameState) -> str:
    shown = [display_name(state.obj(n)) for n in names]
    if len(shown) == 1:
        return shown[0]
    if len(shown) == 2:
        return f"{shown[0]} and {shown[1]}"
    return ", ".join(shown[:-1]) + f", and {shown[-1]}"


def describe_room(state: GameState) -> str:
    sentences = [f"You are in the {state.room}."]
    idx = 0
    for name, o in state.objects.items():
        if o.location != LOC_ROOM:
            continue
        lead = _LEADS[idx % len(_LEADS)]
        idx += 1
        if o.kind == KIND_ANSWER_BOX:
            contents = state.holder_contents(name)
            if contents:
                sentences.append(f"{lead} a {name} that has {listing(contents, state)} in it.")
            else:
                sentences.append(f"{lead} a {name}, that is empty.")
        elif o.kind == KIND_CONTAINER:
            if not o.is_open:
                sentences.append(f"{lead} a {name} that is closed.")
            else:
                contents = state.holder_contents(name)
                if contents:
                    sentences.append(f"{lead} a {name} that has {listing(contents, state)} in it.")
                else:
                    sentences.append(f"{lead} a {name} that is open and empty.")
        elif o.kind == KIND_SUPPORTER:
            contents = state.holder_contents(name)
            if contents:
                sentences.append(f"{lead} a {name} that has {listing(contents, state)} on it.")
            else:
                sentences.append(f"{lead} a {name}, that has nothing on it.")
        else:  # loose item or readable on the floor
            sentences.append(f"{lead} {display_name(o)}.")
    return " ".join(sentences)


def inventory_text(state: GameState) -> str:
    held = state.inventory()
    if not held:
        return "Your inventory is currently empty."
    return ", ".join(display_name(state.obj(n)) for n in held)
