import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwpart.model import (
    ElectionInstance,
    InstanceError,
    Mode,
    PartitionedVote,
    Profile,
    parse_instance,
    serialize_instance,
    validate_partitioned,
)
from pwpart.rules import RuleFamily, ScoringVector

ABCDE = ("a", "b", "c", "d", "e")


def doc(**overrides):
    base = {
        "candidates": ["a", "b", "c"],
        "rule": {"family": "plurality"},
        "votes": [[["a", "b"], ["c"]]],
        "distinguished": "c",
        "mode": "unique",
    }
    base.update(overrides)
    return json.dumps(base)


def test_example6_parses(example6):
    assert example6.n == 6
    assert example6.m == 5
    assert example6.vector.scores == (1, 1, 0, 0, 0)
    assert example6.mode is Mode.UNIQUE


def test_single_candidate_instance():
    inst = parse_instance(json.dumps({"candidates": ["c"], "rule": {"family": "plurality"},
                                      "votes": [[["c"]]], "distinguished": "c"}))
    assert inst.m == 1 and inst.n == 1
    assert inst.mode is Mode.CO_WINNER


def test_overlapping_blocks_rejected():
    with pytest.raises(InstanceError, match="candidate b appears in two blocks"):
        parse_instance(doc(votes=[[["a", "b"], ["b", "c"]]]))


def test_validate_partitioned_accepts_example_vote():
    validate_partitioned(PartitionedVote.of([["b", "e"], ["a", "c", "d"]]), ABCDE)
    validate_partitioned(PartitionedVote.of([ABCDE]), ABCDE)


def test_validate_partitioned_uncovered():
    with pytest.raises(InstanceError, match="c uncovered"):
        validate_partitioned(PartitionedVote.of([["a"], ["b"]]), ["a", "b", "c"])


def test_empty_block_rejected():
    with pytest.raises(InstanceError):
        PartitionedVote.of([["a"], []])


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        ({"votes": [[["a", "x"], ["b", "c"]]]}, "vote 0: unknown candidate x"),
        ({"votes": [[["a", "b"], ["c"]], [["a"], ["b"]]]}, "vote 1: c uncovered"),
        ({"distinguished": "z"}, "distinguished candidate z absent"),
        ({"rule": {"vector": [1, 0]}}, "does not match"),
        ({"candidates": ["a", "b", "b"]}, "duplicate candidate b"),
        ({"rule": {"family": "nonsense"}}, "unknown rule family"),
        ({"mode": "sometimes"}, "mode"),
    ],
)
def test_errors_name_the_problem(overrides, fragment):
    with pytest.raises(InstanceError, match=fragment):
        parse_instance(doc(**overrides))


def test_malformed_json():
    with pytest.raises(InstanceError, match="malformed JSON"):
        parse_instance("{not json")


def test_missing_field():
    with pytest.raises(InstanceError, match="missing field 'votes'"):
        parse_instance(json.dumps({"candidates": ["a"], "rule": {"family": "plurality"}, "distinguished": "a"}))


def test_vote_helpers():
    o = PartitionedVote.of([["b", "e"], ["a", "c", "d"]])
    assert o.above("a") == 2
    assert o.rank_span(1) == (3, 5)
    assert o.extends_to(("e", "b", "d", "a", "c"))
    assert not o.extends_to(("a", "b", "e", "c", "d"))
    assert not o.is_linear
    assert PartitionedVote.linear("abc").is_linear


def test_explicit_vector_rule():
    inst = ElectionInstance(("a", "b"), Profile.from_orders([("a", "b")]), ScoringVector((3, 1)), "a")
    assert inst.vector.scores == (3, 1)


votes_strategy = st.permutations(ABCDE).flatmap(
    lambda order: st.sets(st.integers(1, 4), max_size=4).map(
        lambda cuts: [list(order[a:b]) for a, b in zip([0, *sorted(cuts)], [*sorted(cuts), 5])]
    )
)


@settings(max_examples=100, deadline=None)
@given(st.lists(votes_strategy, max_size=5), st.sampled_from(ABCDE), st.sampled_from(list(Mode)),
       st.sampled_from([RuleFamily.borda(), RuleFamily.k_approval(2), ScoringVector((5, 3, 3, 1, 0))]))
def test_round_trip(votes, c, mode, rule):
    inst = ElectionInstance(ABCDE, Profile(tuple(PartitionedVote.of(v) for v in votes)), rule, c, mode)
    again = parse_instance(serialize_instance(inst))
    assert again == inst
    assert serialize_instance(again) == serialize_instance(inst)


def _corruptions(base: dict):
    yield {**base, "candidates": base["candidates"] + ["a"]}
    yield {**base, "distinguished": "nobody"}
    yield {**base, "rule": {"vector": [1, 0]}}
    yield {**base, "votes": base["votes"] + [[["a"]]]}
    yield {**base, "votes": [[["a", "b", "q"], ["c", "d", "e"]]]}
    yield {**base, "votes": [[["a", "b"], ["b", "c", "d", "e"]]]}
    yield {**base, "votes": [[[], ["a", "b", "c", "d", "e"]]]}
    yield {**base, "rule": {"family": "k-approval", "k": 9}}
    yield {**base, "mode": "maybe"}
    yield {k: v for k, v in base.items() if k != "rule"}


def test_each_single_field_corruption_rejected(example6):
    from pwpart.model import instance_to_json

    base = instance_to_json(example6)
    for bad in _corruptions(base):
        with pytest.raises(InstanceError):
            parse_instance(json.dumps(bad))
