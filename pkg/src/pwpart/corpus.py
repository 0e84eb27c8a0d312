"""Seeded instance generators used by the CLI and the test suite."""

from __future__ import annotations

import random
import string
from itertools import permutations, product
from typing import Iterator

from pwpart.model import ElectionInstance, Mode, PartitionedVote, Profile
from pwpart.oracle import ThreeDMInstance
from pwpart.rules import RuleFamily, ScoringVector


def candidate_names(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple(string.ascii_lowercase[:m])
    return tuple(f"c{j + 1}" for j in range(m))


def random_vote(rng: random.Random, candidates: tuple[str, ...], max_blocks: int) -> PartitionedVote:
    order = list(candidates)
    rng.shuffle(order)
    m = len(order)
    blocks = rng.randint(1, min(max_blocks, m))
    cuts = sorted(rng.sample(range(1, m), blocks - 1))
    bounds = [0, *cuts, m]
    return PartitionedVote.of(order[a:b] for a, b in zip(bounds, bounds[1:]))


def random_instance(
    rng: random.Random,
    m: int,
    n: int,
    max_blocks: int,
    rule: RuleFamily | ScoringVector,
    mode: Mode | str = Mode.CO_WINNER,
) -> ElectionInstance:
    if m < 1 or n < 0 or max_blocks < 1:
        raise ValueError("need m >= 1, n >= 0 and max_blocks >= 1")
    candidates = candidate_names(m)
    votes = tuple(random_vote(rng, candidates, max_blocks) for _ in range(n))
    return ElectionInstance(candidates, Profile(votes), rule, rng.choice(candidates), Mode.parse(mode))


def flow_rules(m: int) -> list[RuleFamily]:
    """Every k-approval rule for ``m`` candidates, plus (2,1,...,1,0) when ``m >= 3``."""
    rules = [RuleFamily.k_approval(k) for k in range(1, m)]
    if m >= 3:
        rules.append(RuleFamily.two_one_zero())
    return rules


def flow_corpus(seed: int, count: int, max_m: int = 5, max_n: int = 5, max_blocks: int = 3) -> Iterator[ElectionInstance]:
    """Random instances over flow-tractable rules (mode left at co-winner)."""
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.randint(2, max_m)
        n = rng.randint(1, max_n)
        rule = rng.choice(flow_rules(m))
        yield random_instance(rng, m, n, max_blocks, rule)


def _canonical(triples: frozenset[tuple[int, int, int]], perms: list[tuple[int, ...]]) -> tuple:
    best = None
    for px, py, pz in product(perms, repeat=3):
        image = tuple(sorted((px[x], py[y], pz[z]) for x, y, z in triples))
        if best is None or image < best:
            best = image
    return best


def threedm_orbits(M: int, max_triples: int, min_triples: int = 1) -> list[ThreeDMInstance]:
    """One representative per class of triple sets under renaming within each axis.

    Representatives have ``min_triples..max_triples`` triples and use element
    names ``x1..xM``, ``y1..yM`` and ``z1..zM``.
    """
    perms = list(permutations(range(M)))
    cells = list(product(range(M), repeat=3))
    level = {_canonical(frozenset([t]), perms) for t in cells}
    reps: list[tuple] = []
    for size in range(1, max_triples + 1):
        if size >= min_triples:
            reps.extend(sorted(level))
        if size == max_triples:
            break
        nxt = set()
        for rep in level:
            have = set(rep)
            for t in cells:
                if t not in have:
                    nxt.add(_canonical(frozenset(have | {t}), perms))
        level = nxt
    X = tuple(f"x{j + 1}" for j in range(M))
    Y = tuple(f"y{j + 1}" for j in range(M))
    Z = tuple(f"z{j + 1}" for j in range(M))
    return [ThreeDMInstance(X, Y, Z, tuple((X[x], Y[y], Z[z]) for x, y, z in rep)) for rep in reps]
