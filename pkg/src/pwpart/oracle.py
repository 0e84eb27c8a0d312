"""Exponential-time ground truth: extension enumeration and brute-force 3DM.

Every other decision procedure in the package is checked against
:func:`decide_oracle`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import chain, combinations, permutations, product
from math import comb, factorial, prod
from typing import Any, Iterator, Sequence

from pwpart.model import ElectionInstance, InstanceError, Mode, PartitionedVote, Profile, check_candidate_name

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """The search space is larger than the configured budget."""


def count_extensions(o: PartitionedVote) -> int:
    return prod(factorial(len(b)) for b in o.blocks)


def enumerate_extensions(o: PartitionedVote, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[str, ...]]:
    """Yield every linear extension of ``o``.

    Within-block permutations run in lexicographic order, later blocks varying
    fastest.
    """
    total = count_extensions(o)
    if total > budget:
        raise BudgetExceeded(f"vote has {total} extensions, budget is {budget}")
    for parts in product(*(permutations(sorted(b)) for b in o.blocks)):
        yield tuple(chain.from_iterable(parts))


@dataclass(frozen=True)
class OracleResult:
    decision: bool
    witness: Profile | None
    explored: int


def _wins(scores: Sequence[int], c: int, unique: bool) -> bool:
    mine = scores[c]
    for r, s in enumerate(scores):
        if r != c and (s >= mine if unique else s > mine):
            return False
    return True


def decide_oracle(
    inst: ElectionInstance,
    mode: Mode | str | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    prune: bool = False,
) -> OracleResult:
    """Decide by exhaustive search over the extensions of the profile.

    With ``prune=False`` every joint extension is visited in enumeration order
    (votes varied last-vote-fastest) and the first winning one is returned;
    ``budget`` caps the number of joint extensions.  With ``prune=True`` the
    search runs over the distinct score outcomes of each vote, memoizes failed
    partial score states and cuts branches where some rival's least reachable
    total already beats the distinguished candidate's best; ``budget`` then caps
    the number of explored search states.

    Raises:
        BudgetExceeded: rather than answering when the budget is too small.
    """
    mode = inst.mode if mode is None else Mode.parse(mode)
    if prune:
        return _decide_pruned(inst, mode, budget)
    return _decide_plain(inst, mode, budget)


def _decide_plain(inst: ElectionInstance, mode: Mode, budget: int) -> OracleResult:
    total = prod(count_extensions(o) for o in inst.profile)
    if total > budget:
        raise BudgetExceeded(f"profile has {total} joint extensions, budget is {budget}")
    idx = {name: i for i, name in enumerate(inst.candidates)}
    vec = inst.vector.scores
    options = []
    for o in inst.profile:
        rows = []
        for order in enumerate_extensions(o, budget):
            delta = [0] * inst.m
            for r, name in enumerate(order):
                delta[idx[name]] = vec[r]
            rows.append((order, delta))
        options.append(rows)
    c = idx[inst.distinguished]
    unique = mode is Mode.UNIQUE
    n = len(options)
    chosen: list[tuple[str, ...]] = []
    explored = 0

    def dfs(depth: int, scores: list[int]) -> bool:
        nonlocal explored
        if depth == n:
            explored += 1
            return _wins(scores, c, unique)
        for order, delta in options[depth]:
            chosen.append(order)
            if dfs(depth + 1, [a + b for a, b in zip(scores, delta)]):
                return True
            chosen.pop()
        return False

    if dfs(0, [0] * inst.m):
        return OracleResult(True, Profile.from_orders(chosen), explored)
    return OracleResult(False, None, explored)


def _distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of ``items`` in lexicographic order."""
    seq = sorted(items)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1 :] = reversed(seq[i + 1 :])


def _vote_outcomes(
    o: PartitionedVote, vec: Sequence[int], idx: dict[str, int], m: int, budget: int
) -> list[tuple[tuple[int, ...], tuple[str, ...]]]:
    """Distinct per-candidate score vectors of ``o``, each with one representative order."""
    per_block = []
    rank = 0
    for block in o.blocks:
        members = sorted(block)
        slots = vec[rank : rank + len(members)]
        # a slot key is (-score, rank) so equal-score slots stay in rank order
        choices = []
        for assignment in _distinct_permutations([-s for s in slots]):
            placed: dict[int, list[str]] = {}
            for name, key in zip(members, assignment):
                placed.setdefault(key, []).append(name)
            order = []
            for r in range(len(members)):
                order.append(placed[-slots[r]].pop(0))
            choices.append((tuple((idx[name], -key) for name, key in zip(members, assignment)), tuple(order)))
            if len(choices) > budget:
                raise BudgetExceeded(f"block of size {len(members)} has more than {budget} score outcomes")
        per_block.append(choices)
        rank += len(members)
    count = prod(len(ch) for ch in per_block)
    if count > budget:
        raise BudgetExceeded(f"vote has {count} score outcomes, budget is {budget}")
    outcomes = []
    for parts in product(*per_block):
        delta = [0] * m
        for pairs, _ in parts:
            for i, s in pairs:
                delta[i] = s
        outcomes.append((tuple(delta), tuple(chain.from_iterable(order for _, order in parts))))
    return outcomes


def _decide_pruned(inst: ElectionInstance, mode: Mode, budget: int) -> OracleResult:
    idx = {name: i for i, name in enumerate(inst.candidates)}
    vec = inst.vector.scores
    m = inst.m
    c = idx[inst.distinguished]
    unique = mode is Mode.UNIQUE

    base = [0] * m
    fixed_orders: dict[int, tuple[str, ...]] = {}
    free: list[tuple[int, list[tuple[tuple[int, ...], tuple[str, ...]]]]] = []
    for v, o in enumerate(inst.profile):
        outcomes = _vote_outcomes(o, vec, idx, m, budget)
        if len(outcomes) == 1:
            delta, order = outcomes[0]
            base = [a + b for a, b in zip(base, delta)]
            fixed_orders[v] = order
        else:
            free.append((v, outcomes))

    # suffix bounds on what the remaining free votes can still add
    n = len(free)
    hi = [[0] * m for _ in range(n + 1)]
    lo = [[0] * m for _ in range(n + 1)]
    for d in range(n - 1, -1, -1):
        outs = [delta for delta, _ in free[d][1]]
        for i in range(m):
            hi[d][i] = hi[d + 1][i] + max(o[i] for o in outs)
            lo[d][i] = lo[d + 1][i] + min(o[i] for o in outs)

    failed: set[tuple[int, tuple[int, ...]]] = set()
    chosen: list[tuple[str, ...]] = []
    explored = 0

    def beaten(r_score: int, c_score: int) -> bool:
        return r_score >= c_score if unique else r_score > c_score

    def dfs(d: int, scores: tuple[int, ...]) -> bool:
        nonlocal explored
        explored += 1
        if explored > budget:
            raise BudgetExceeded(f"explored more than {budget} search states")
        if d == n:
            return _wins(scores, c, unique)
        key = (d, scores)
        if key in failed:
            return False
        c_best = scores[c] + hi[d][c]
        c_worst = scores[c] + lo[d][c]
        safe = True
        for r in range(m):
            if r == c:
                continue
            if beaten(scores[r] + lo[d][r], c_best):
                failed.add(key)
                return False
            if beaten(scores[r] + hi[d][r], c_worst):
                safe = False
        if safe:
            # any completion wins; take the first outcome of every remaining vote
            chosen.extend(outs[0][1] for _, outs in free[d:])
            return True
        for delta, order in free[d][1]:
            chosen.append(order)
            if dfs(d + 1, tuple(a + b for a, b in zip(scores, delta))):
                return True
            chosen.pop()
        failed.add(key)
        return False

    if not dfs(0, tuple(base)):
        return OracleResult(False, None, explored)
    free_orders = dict(zip((v for v, _ in free), chosen))
    orders = [fixed_orders.get(v) or free_orders[v] for v in range(inst.n)]
    return OracleResult(True, Profile.from_orders(orders), explored)


@dataclass(frozen=True)
class ThreeDMInstance:
    """Three disjoint ``M``-element sets and a set of triples over them."""

    X: tuple[str, ...]
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    S: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        for axis in (self.X, self.Y, self.Z):
            for name in axis:
                check_candidate_name(name)
        if not (len(self.X) == len(self.Y) == len(self.Z)) or not self.X:
            raise InstanceError("X, Y and Z must be non-empty and of equal size")
        everything = self.X + self.Y + self.Z
        if len(set(everything)) != len(everything):
            raise InstanceError("X, Y and Z must be pairwise disjoint without repeats")
        seen = set()
        for t in self.S:
            if len(t) != 3 or t[0] not in self.X or t[1] not in self.Y or t[2] not in self.Z:
                raise InstanceError(f"triple {list(t)} must be (x, y, z) with x in X, y in Y, z in Z")
            if tuple(t) in seen:
                raise InstanceError(f"triple {list(t)} repeated")
            seen.add(tuple(t))
        object.__setattr__(self, "S", tuple(tuple(t) for t in self.S))

    @property
    def M(self) -> int:
        return len(self.X)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.X + self.Y + self.Z

    def occurrences(self, e: str) -> int:
        return sum(1 for t in self.S if e in t)

    def to_json(self) -> dict[str, Any]:
        return {"X": list(self.X), "Y": list(self.Y), "Z": list(self.Z), "S": [list(t) for t in self.S]}

    @classmethod
    def from_json(cls, doc: Any) -> "ThreeDMInstance":
        if not isinstance(doc, dict) or not all(k in doc for k in "XYZS"):
            raise InstanceError("3DM document needs keys X, Y, Z and S")
        return cls(tuple(doc["X"]), tuple(doc["Y"]), tuple(doc["Z"]), tuple(tuple(t) for t in doc["S"]))

    @classmethod
    def parse(cls, text: str | bytes) -> "ThreeDMInstance":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InstanceError(f"malformed JSON: {exc}") from None


def solve_3dm(inst: ThreeDMInstance, budget: int = DEFAULT_BUDGET) -> tuple[bool, tuple[tuple[str, str, str], ...] | None]:
    """Search all ``M``-subsets of triples for a perfect matching."""
    M = inst.M
    total = comb(len(inst.S), M)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate matchings, budget is {budget}")
    need = set(inst.elements)
    for pick in combinations(inst.S, M):
        covered = set(chain.from_iterable(pick))
        if len(covered) == 3 * M and covered == need:
            return True, pick
    return False, None
