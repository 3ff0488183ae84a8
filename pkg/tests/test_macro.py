"""Macro abstraction and grouping."""

from fractions import Fraction

import pytest

from pathcrawl.crawler import Trajectory, TrajectoryStep
from pathcrawl.engine import EpisodeSpec
from pathcrawl.macro import (
    MacroAction,
    MacroSequence,
    group_paths,
    is_gold_subsequence,
    select_k_shortest,
    variabilize,
)


def make_traj(actions, variation=0, game="twc", split="train", segment=0):
    steps = [TrajectoryStep(a, Fraction(0)) for a in actions]
    steps[-1] = TrajectoryStep(actions[-1], Fraction(1, 2))
    return Trajectory(
        spec=EpisodeSpec(game, split, variation),
        steps=steps,
        final_score=Fraction(1, 2),
        ended="reward",
        segment_index=segment,
    )


def test_variabilize_reuses_slots():
    t = make_traj(["take hat", "put hat on hat rack"])
    assert variabilize(t).canonical_key == "Take(X) Put(X,Y)"


def test_variabilize_is_name_invariant():
    a = make_traj(["take hat", "put hat on hat rack"])
    b = make_traj(["take dirty shirt", "put dirty shirt in washer"], variation=1)
    assert variabilize(a).canonical_key == variabilize(b).canonical_key


def test_variabilize_zero_arg_verbs():
    t = make_traj(["look around", "inventory", "take hat"])
    assert variabilize(t).canonical_key == "Look-Around Inventory Take(X)"


def test_variabilize_fresh_slots_in_first_appearance_order():
    t = make_traj(["open chest", "take coin", "put coin in chest"])
    assert variabilize(t).canonical_key == "Open(X) Take(Y) Put(Y,X)"


def test_group_paths_partitions_and_sorts():
    trajectories = [
        make_traj(["take hat", "put hat on hat rack"], variation=0),
        make_traj(["take shirt", "put shirt in washer"], variation=1),
        make_traj(["take shirt"], variation=1),
        make_traj(["take hat"], variation=0),
        make_traj(["look around", "take hat"], variation=0),
    ]
    groups = group_paths(trajectories)
    keys = [g.key for g in groups]
    # shortest first; ties broken by coverage then key
    assert keys == ["Take(X)", "Take(X) Put(X,Y)", "Look-Around Take(X)"]
    assert groups[0].coverage == 2
    # every input trajectory lands in the group matching its own key
    total = sum(len(g.all_trajectories()) for g in groups)
    assert total == len(trajectories)
    for g in groups:
        for t in g.all_trajectories():
            assert variabilize(t).canonical_key == g.key


def test_group_paths_empty_and_mixed_segments():
    assert group_paths([]) == []
    with pytest.raises(ValueError):
        group_paths([make_traj(["take a"], segment=0), make_traj(["take b"], segment=1)])


def test_select_k_shortest_tie_breaks_on_coverage():
    trajectories = [
        make_traj(["take hat", "put hat on hat rack"], variation=0),
        make_traj(["take shirt", "put shirt in washer"], variation=1),
        make_traj(["open chest", "take coin"], variation=2),
    ]
    groups = group_paths(trajectories)
    top = select_k_shortest(groups, 1)
    assert top[0].key == "Take(X) Put(X,Y)"  # coverage 2 beats coverage 1
    assert len(select_k_shortest(groups, 10)) == 2


def test_shortest_per_variation_prefers_short_then_lexicographic():
    group = group_paths([
        make_traj(["take apple"], variation=0),
        make_traj(["take banana"], variation=0),
    ])[0]
    assert group.shortest_per_variation()[0].actions == ["take apple"]


def seq(*specs):
    return MacroSequence(tuple(MacroAction(verb, slots) for verb, slots in specs))


def test_gold_subsequence_matching():
    gold = seq(("take", (0,)), ("read", (0,)), ("take", (1,)), ("put", (1, 2)))
    with_noop = seq(("take", (0,)), ("read", (0,)), ("look-around", ()),
                    ("take", (1,)), ("put", (1, 2)))
    assert is_gold_subsequence(gold, with_noop)
    assert is_gold_subsequence(gold, gold)
    # read-less path does not embed the read-ful gold
    short = seq(("take", (0,)), ("put", (0, 1)))
    assert not is_gold_subsequence(gold, short)
    # slot consistency: Take(X) Put(X,Y) does not embed into Take(X) Put(Y,Z)
    inconsistent = seq(("take", (0,)), ("put", (1, 2)))
    assert not is_gold_subsequence(seq(("take", (0,)), ("put", (0, 1))), inconsistent)
