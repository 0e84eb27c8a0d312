"""Maximal scores, the distinguished-candidate fixing transform, and scoring of complete profiles."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from pwpart.model import Mode, PartitionedVote, Profile
from pwpart.rules import ScoringVector


def s_max_vote(o: PartitionedVote, c: str, v: ScoringVector) -> int:
    """Best score ``c`` can reach in any extension of ``o``.

    This is the score of rank ``|{c' : c' > c in o}| + 1``.
    """
    return v.at_rank(o.above(c) + 1)


def s_max_profile(profile: Iterable[PartitionedVote], c: str, v: ScoringVector) -> int:
    return sum(s_max_vote(o, c, v) for o in profile)


def s_max_table(profile: Profile, candidates: Iterable[str], v: ScoringVector) -> dict[str, int]:
    return {name: s_max_profile(profile, name, v) for name in candidates}


def fix_vote(o: PartitionedVote, c: str) -> PartitionedVote:
    """Split the block holding ``c`` into ``{c}`` followed by the rest of that block."""
    j = o.block_index(c)
    block = o.blocks[j]
    if len(block) == 1:
        return o
    return PartitionedVote(o.blocks[:j] + (frozenset([c]), block - {c}) + o.blocks[j + 1 :])


def fix_distinguished(profile: Profile, c: str) -> Profile:
    """Rewrite every vote so ``c`` sits alone on top of its former block."""
    return Profile(tuple(fix_vote(o, c) for o in profile))


def score_order(order: Sequence[str], v: ScoringVector) -> dict[str, int]:
    return {name: v[r] for r, name in enumerate(order)}


def score_orders(orders: Iterable[Sequence[str]], v: ScoringVector, candidates: Iterable[str] = ()) -> dict[str, int]:
    """Total scores of a complete profile given as linear orders."""
    totals = {name: 0 for name in candidates}
    for order in orders:
        for r, name in enumerate(order):
            totals[name] = totals.get(name, 0) + v[r]
    return totals


def winners(scores: Mapping[str, int]) -> set[str]:
    best = max(scores.values())
    return {name for name, s in scores.items() if s == best}


def satisfies_mode(scores: Mapping[str, int], c: str, mode: Mode) -> bool:
    """Whether ``c`` is the unique winner / a co-winner under ``scores``."""
    mine = scores[c]
    rivals = [s for name, s in scores.items() if name != c]
    if not rivals:
        return True
    if mode is Mode.UNIQUE:
        return mine > max(rivals)
    return mine >= max(rivals)
