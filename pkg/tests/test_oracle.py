import random
from math import prod

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pwpart.corpus import random_instance
from pwpart.model import ElectionInstance, InstanceError, Mode, PartitionedVote, Profile
from pwpart.oracle import (
    BudgetExceeded,
    ThreeDMInstance,
    count_extensions,
    decide_oracle,
    enumerate_extensions,
    solve_3dm,
)
from pwpart.rules import RuleFamily, ScoringVector
from pwpart.scoring import fix_distinguished, satisfies_mode, score_orders


def test_enumerate_examples():
    assert list(enumerate_extensions(PartitionedVote.of([["a", "b"], ["c"]]))) == [("a", "b", "c"), ("b", "a", "c")]
    assert list(enumerate_extensions(PartitionedVote.linear("abc"))) == [("a", "b", "c")]
    orders = list(enumerate_extensions(PartitionedVote.of([["a", "b", "c"]])))
    assert len(orders) == len(set(orders)) == 6


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_extensions(PartitionedVote.of(["abcdefgh"]), budget=1000))


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_enumeration_counts(seed):
    from pwpart.corpus import random_vote

    o = random_vote(random.Random(seed), tuple("abcde"), 5)
    orders = list(enumerate_extensions(o))
    assert len(orders) == len(set(orders)) == count_extensions(o)
    assert all(o.extends_to(order) for order in orders)


def small_210():
    profile = Profile((PartitionedVote.linear("abc"), PartitionedVote.of([["c"], ["a", "b"]])))
    return ElectionInstance(("a", "b", "c"), profile, ScoringVector((2, 1, 0)), "c")


def test_decide_examples(example6):
    assert decide_oracle(example6, Mode.CO_WINNER, prune=True).decision
    assert decide_oracle(example6, Mode.UNIQUE, budget=2 * 10**7).decision
    res = decide_oracle(small_210(), Mode.CO_WINNER)
    assert res.decision
    assert score_orders(res.witness.orders(), ScoringVector((2, 1, 0))) == {"a": 2, "b": 2, "c": 2}
    assert not decide_oracle(small_210(), Mode.UNIQUE).decision
    one = ElectionInstance(("b", "c"), Profile((PartitionedVote.of([["b", "c"]]),)), RuleFamily.plurality(), "c")
    assert decide_oracle(one, Mode.UNIQUE).decision


def test_first_witness_in_enumeration_order():
    res = decide_oracle(small_210(), Mode.CO_WINNER)
    assert res.witness.orders() == [("a", "b", "c"), ("c", "b", "a")]


def test_budget_is_an_error_not_a_no(example6):
    with pytest.raises(BudgetExceeded):
        decide_oracle(example6)
    with pytest.raises(BudgetExceeded):
        decide_oracle(example6, prune=True, budget=1)


def _random(seed):
    rng = random.Random(seed)
    m = rng.randint(2, 5)
    scores = sorted([rng.randint(0, 4) for _ in range(m - 2)] + [rng.randint(1, 4), 0], reverse=True)
    rule = rng.choice([RuleFamily.borda(), RuleFamily.k_approval(1), ScoringVector(tuple(scores))])
    inst = random_instance(rng, m, rng.randint(1, 4), 3, rule, rng.choice(list(Mode)))
    assume(prod(count_extensions(o) for o in inst.profile) <= 20000)
    return inst


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_pruned_matches_plain(seed):
    inst = _random(seed)
    plain = decide_oracle(inst, budget=10**6)
    pruned = decide_oracle(inst, prune=True, budget=10**6)
    assert plain.decision == pruned.decision
    for res in (plain, pruned):
        if res.decision:
            scores = score_orders(res.witness.orders(), inst.vector, inst.candidates)
            assert satisfies_mode(scores, inst.distinguished, inst.mode)
            assert inst.profile.extends_to(res.witness.orders())


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_fixing_preserves_decision(seed):
    inst = _random(seed)
    fixed = inst.with_profile(fix_distinguished(inst.profile, inst.distinguished))
    for mode in Mode:
        assert decide_oracle(inst, mode).decision == decide_oracle(fixed, mode).decision


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.permutations("vwxyz"))
def test_renaming_preserves_decision(seed, new_names):
    inst = _random(seed)
    ren = dict(zip(inst.candidates, new_names))
    profile = Profile(tuple(PartitionedVote(tuple(frozenset(ren[c] for c in b) for b in o.blocks)) for o in inst.profile))
    renamed = ElectionInstance(tuple(ren[c] for c in inst.candidates), profile, inst.rule, ren[inst.distinguished], inst.mode)
    assert decide_oracle(inst).decision == decide_oracle(renamed).decision


def tdm(S, M=2):
    X = tuple(f"x{j}" for j in range(1, M + 1))
    Y = tuple(f"y{j}" for j in range(1, M + 1))
    Z = tuple(f"z{j}" for j in range(1, M + 1))
    return ThreeDMInstance(X, Y, Z, tuple(S))


def test_solve_3dm_examples():
    assert solve_3dm(tdm([("x1", "y1", "z1")], M=1)) == (True, (("x1", "y1", "z1"),))
    assert solve_3dm(tdm([("x1", "y1", "z1"), ("x2", "y1", "z2")]))[0] is False
    ok, matching = solve_3dm(tdm([("x1", "y1", "z1"), ("x2", "y2", "z2"), ("x1", "y2", "z2")]))
    assert ok and matching == (("x1", "y1", "z1"), ("x2", "y2", "z2"))


def test_3dm_validation():
    with pytest.raises(InstanceError):
        tdm([("x1", "y3", "z1")])
    with pytest.raises(InstanceError):
        ThreeDMInstance(("x1",), ("y1", "y2"), ("z1",), ())
    with pytest.raises(InstanceError):
        ThreeDMInstance.parse('{"X": ["a"]}')
    inst = tdm([("x1", "y1", "z1")])
    assert ThreeDMInstance.parse(__import__("json").dumps(inst.to_json())) == inst
