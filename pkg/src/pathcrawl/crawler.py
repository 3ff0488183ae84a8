"""Exhaustive reward-bounded trajectory search.

From a (possibly prefix-constrained) state, depth-first explore valid actions
in canonical order and keep every branch whose first non-zero reward lands on
its final step within the horizon. Failing branches are discarded; revisiting
a state already on the current path is optionally pruned, which bounds no-op
loops without losing order-distinct siblings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import get_context

from .engine import (
    Action,
    Environment,
    EpisodeSpec,
    GameState,
    Observation,
    make_environment,
    parse_action,
)
from .records import fraction_to_str, str_to_fraction

ENDED_REWARD = "reward"
ENDED_WIN = "win"
ENDED_FAIL = "fail"
ENDED_HORIZON = "horizon"

DEFAULT_HORIZON = 6
DEFAULT_MAX_NODES = 5_000_000


class CrawlError(Exception):
    pass


class PrefixReplayError(CrawlError):
    """The supplied prefix does not replay cleanly on the episode."""


class CrawlBudgetError(CrawlError):
    """Node budget exhausted; carries whatever was found before the cutoff."""

    def __init__(self, message: str, partial: list["Trajectory"]):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CrawlConfig:
    horizon: int = DEFAULT_HORIZON
    dedup: bool = True
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")

    def to_dict(self) -> dict:
        return {"horizon": self.horizon, "dedup": self.dedup, "max_nodes": self.max_nodes}

    @classmethod
    def from_dict(cls, d: dict) -> "CrawlConfig":
        return cls(int(d["horizon"]), bool(d["dedup"]), int(d["max_nodes"]))


@dataclass
class TrajectoryStep:
    action: str
    reward: Fraction


@dataclass
class Trajectory:
    """One full or partial playthrough of a single variation.

    Steps run from the episode start; prefix_len marks how many of them were
    inherited from previously accepted segments. Observation text is not
    stored; replay() regenerates it on demand.
    """

    spec: EpisodeSpec
    steps: list[TrajectoryStep]
    final_score: Fraction
    ended: str
    prefix_len: int = 0
    segment_index: int = 0

    @property
    def actions(self) -> list[str]:
        return [s.action for s in self.steps]

    @property
    def reward_events(self) -> int:
        return sum(1 for s in self.steps if s.reward > 0)

    def sort_key(self) -> tuple:
        return (self.spec.variation_index, len(self.steps), tuple(self.actions))

    def replay(self, env: Environment | None = None) -> list[tuple[Observation, Action, Fraction]]:
        """Re-run the episode, yielding (observation-before, action, reward)."""
        env = env or make_environment(self.spec)
        state = env.initial_state()
        out = []
        for step_ in self.steps:
            before = env.observe(state)
            action = parse_action(step_.action)
            state, obs = env.step(state, action)
            if obs.reward_delta != step_.reward:
                raise CrawlError(
                    f"replay divergence at {step_.action!r}: "
                    f"{obs.reward_delta} != {step_.reward}"
                )
            out.append((before, action, step_.reward))
        if state.score != self.final_score:
            raise CrawlError("replay divergence: final score mismatch")
        return out

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "actions": self.actions,
            "rewards": [fraction_to_str(s.reward) for s in self.steps],
            "final_score": fraction_to_str(self.final_score),
            "ended": self.ended,
            "prefix_len": self.prefix_len,
            "segment_index": self.segment_index,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trajectory":
        steps = [
            TrajectoryStep(a, str_to_fraction(r))
            for a, r in zip(d["actions"], d["rewards"])
        ]
        return cls(
            spec=EpisodeSpec.from_dict(d["spec"]),
            steps=steps,
            final_score=str_to_fraction(d["final_score"]),
            ended=d["ended"],
            prefix_len=int(d.get("prefix_len", 0)),
            segment_index=int(d.get("segment_index", 0)),
        )


def replay_prefix(env: Environment, prefix: list[str]) -> tuple[GameState, list[TrajectoryStep]]:
    state = env.initial_state()
    steps = []
    for text in prefix:
        if state.done:
            raise PrefixReplayError(f"prefix continues past the end: {text!r}")
        action = parse_action(text)
        try:
            state, obs = env.step(state, action)
        except Exception as exc:
            raise PrefixReplayError(f"prefix action {text!r} failed: {exc}") from exc
        if state.failed:
            raise PrefixReplayError(f"prefix action {text!r} fails the episode")
        steps.append(TrajectoryStep(action.render(), obs.reward_delta))
    return state, steps


def crawl_to_reward(
    spec: EpisodeSpec,
    prefix: list[str] | None = None,
    cfg: CrawlConfig = CrawlConfig(),
    env: Environment | None = None,
    segment_index: int = 0,
) -> list[Trajectory]:
    """Every action sequence of length <= horizon (beyond the prefix) whose
    first and only non-zero reward lands on its last step.

    Results come back canonically sorted and include the prefix steps.
    """
    env = env or make_environment(spec)
    prefix = list(prefix or [])
    root, prefix_steps = replay_prefix(env, prefix)
    found: list[Trajectory] = []
    if root.done:
        return found

    nodes = 0
    path_keys = [env.state_key(root)] if cfg.dedup else []

    def recurse(state: GameState, suffix: list[TrajectoryStep], depth: int) -> None:
        nonlocal nodes
        for action in env.valid_actions(state):
            nodes += 1
            if nodes > cfg.max_nodes:
                raise CrawlBudgetError(
                    f"crawl exceeded {cfg.max_nodes} nodes", sorted_trajectories(found)
                )
            child, obs = env.step(state, action)
            step_ = TrajectoryStep(action.render(), obs.reward_delta)
            if child.failed:
                continue
            if obs.reward_delta > 0:
                ended = ENDED_WIN if (child.done and child.score == 1) else ENDED_REWARD
                found.append(
                    Trajectory(
                        spec=spec,
                        steps=prefix_steps + suffix + [step_],
                        final_score=child.score,
                        ended=ended,
                        prefix_len=len(prefix_steps),
                        segment_index=segment_index,
                    )
                )
                continue
            if child.done or depth + 1 >= cfg.horizon:
                continue
            if cfg.dedup:
                key = env.state_key(child)
                if key in path_keys:
                    continue
                path_keys.append(key)
            recurse(child, suffix + [step_], depth + 1)
            if cfg.dedup:
                path_keys.pop()

    recurse(root, [], 0)
    return sorted_trajectories(found)


def sorted_trajectories(trajectories: list[Trajectory]) -> list[Trajectory]:
    return sorted(trajectories, key=Trajectory.sort_key)


# --- batched crawling over variations ----------------------------------------

@dataclass
class CrawlBatchResult:
    trajectories: list[Trajectory]
    errors: dict[int, str] = field(default_factory=dict)
    nodes_hint: int = 0


def _crawl_task(args) -> tuple[int, list[dict] | None, str | None]:
    spec_dict, prefix, cfg_dict, segment_index = args
    spec = EpisodeSpec.from_dict(spec_dict)
    try:
        trajectories = crawl_to_reward(
            spec, prefix, CrawlConfig.from_dict(cfg_dict), segment_index=segment_index
        )
    except CrawlError as exc:
        return spec.variation_index, None, str(exc)
    return spec.variation_index, [t.to_dict() for t in trajectories], None


def crawl_variations(
    tasks: list[tuple[EpisodeSpec, list[str]]],
    cfg: CrawlConfig,
    segment_index: int = 0,
    workers: int = 1,
) -> CrawlBatchResult:
    """Crawl many (spec, prefix) pairs, optionally in parallel workers.

    Per-variation failures are collected instead of aborting the batch, and
    the combined result is canonically sorted so worker count cannot change
    the output.
    """
    packed = [
        (spec.to_dict(), list(prefix), cfg.to_dict(), segment_index)
        for spec, prefix in tasks
    ]
    if workers <= 1 or len(packed) <= 1:
        raw = [_crawl_task(p) for p in packed]
    else:
        with get_context("fork").Pool(processes=workers) as pool:
            raw = pool.map(_crawl_task, packed)

    result = CrawlBatchResult(trajectories=[])
    for variation, dicts, error in raw:
        if error is not None:
            result.errors[variation] = error
        else:
            result.trajectories.extend(Trajectory.from_dict(d) for d in dicts)
    result.trajectories = sorted_trajectories(result.trajectories)
    return result


def extend_segment(
    prefixes: dict[int, Trajectory],
    cfg: CrawlConfig,
    segment_index: int,
    workers: int = 1,
) -> CrawlBatchResult:
    """Continue each covered variation past its accepted prefix to the next
    reward. Variations whose prefix already won are skipped; per-variation
    crawl errors are reported without aborting the rest.
    """
    tasks = []
    for variation in sorted(prefixes):
        prefix = prefixes[variation]
        if prefix.ended == ENDED_WIN:
            continue
        tasks.append((prefix.spec, prefix.actions))
    return crawl_variations(tasks, cfg, segment_index=segment_index, workers=workers)
