"""Crawler correctness against an independent enumeration oracle."""

import pytest

from pathcrawl.crawler import (
    CrawlBudgetError,
    CrawlConfig,
    PrefixReplayError,
    crawl_to_reward,
    crawl_variations,
    extend_segment,
)
from pathcrawl.engine import EpisodeSpec, generate_episode, gold_agent

from microgame import MicroGame, oracle_enumerate


def crawl_sequences(env, horizon, dedup):
    cfg = CrawlConfig(horizon=horizon, dedup=dedup, max_nodes=200_000)
    trajectories = crawl_to_reward(env.spec, [], cfg, env=env)
    return {tuple(t.actions) for t in trajectories}


@pytest.mark.parametrize("dedup", [True, False])
def test_micro_games_match_oracle(dedup):
    for seed in range(60):
        env = MicroGame(
            seed=seed,
            branching=2 + seed % 3,
            depth=4,
            allow_wait=seed % 2 == 0,
            allow_back=seed % 5 == 0,
        )
        horizon = 2 + seed % 3
        assert crawl_sequences(env, horizon, dedup) == oracle_enumerate(env, horizon, dedup), (
            f"seed={seed} horizon={horizon} dedup={dedup}"
        )


def test_single_reward_always_last():
    for seed in (3, 11, 27):
        env = MicroGame(seed=seed, allow_back=True)
        cfg = CrawlConfig(horizon=4, max_nodes=100_000)
        for t in crawl_to_reward(env.spec, [], cfg, env=env):
            rewards = [s.reward for s in t.steps]
            assert rewards[-1] > 0
            assert all(r == 0 for r in rewards[:-1])
            assert sum(rewards) == t.final_score


def test_arithmetic_first_segment_contains_take_then_read():
    spec = EpisodeSpec("arithmetic", "train", 0)
    cfg = CrawlConfig(horizon=2, max_nodes=100_000)
    sequences = {tuple(t.actions) for t in crawl_to_reward(spec, [], cfg)}
    assert ("take math problem", "read math problem") in sequences
    answer = generate_episode(spec).payload["answer_item"]
    assert (f"take {answer}", f"put {answer} in box") in sequences


def test_prefix_at_winning_state_yields_nothing():
    spec = EpisodeSpec("twc", "train", 0)
    gold = [a.render() for a in gold_agent(generate_episode(spec))]
    assert crawl_to_reward(spec, gold, CrawlConfig(horizon=3)) == []


def test_failing_prefix_rejected():
    spec = EpisodeSpec("arithmetic", "train", 1)
    state = generate_episode(spec)
    wrong = next(
        name for name, o in state.objects.items()
        if o.quantity and name != state.payload["answer_item"]
    )
    with pytest.raises(PrefixReplayError):
        crawl_to_reward(spec, [f"take {wrong}", f"put {wrong} in box"], CrawlConfig(horizon=2))
    with pytest.raises(PrefixReplayError):
        crawl_to_reward(spec, ["take the moon"], CrawlConfig(horizon=2))


def test_node_budget_raises_with_partials():
    spec = EpisodeSpec("arithmetic", "train", 0)
    with pytest.raises(CrawlBudgetError) as excinfo:
        crawl_to_reward(spec, [], CrawlConfig(horizon=3, max_nodes=40))
    assert isinstance(excinfo.value.partial, list)


def test_worker_count_does_not_change_results():
    tasks = [(EpisodeSpec("twc", "train", i), []) for i in range(6)]
    cfg = CrawlConfig(horizon=3, max_nodes=100_000)
    serial = crawl_variations(tasks, cfg, workers=1)
    parallel = crawl_variations(tasks, cfg, workers=3)
    assert [t.to_dict() for t in serial.trajectories] == [t.to_dict() for t in parallel.trajectories]
    assert serial.errors == parallel.errors


def test_extend_segment_skips_won_and_collects_errors():
    cfg = CrawlConfig(horizon=2, max_nodes=100_000)
    spec = EpisodeSpec("twc", "train", 0)
    first = crawl_to_reward(spec, [], cfg)
    take_only = next(t for t in first if len(t.steps) == 1)
    batch = extend_segment({0: take_only}, cfg, segment_index=1)
    assert batch.trajectories, "taking the item must extend to a placement reward"
    for t in batch.trajectories:
        assert t.prefix_len == 1
        assert t.segment_index == 1
        assert t.steps[0].action == take_only.steps[0].action
    assert extend_segment({}, cfg, segment_index=1).trajectories == []


def test_trajectory_replay_and_serialization_round_trip():
    spec = EpisodeSpec("sorting", "train", 0)
    cfg = CrawlConfig(horizon=2, max_nodes=100_000)
    trajectories = crawl_to_reward(spec, [], cfg)
    assert trajectories
    t = trajectories[0]
    from pathcrawl.crawler import Trajectory

    assert Trajectory.from_dict(t.to_dict()).to_dict() == t.to_dict()
    replayed = t.replay()
    assert len(replayed) == len(t.steps)
    assert replayed[0][0].step_index == 0
