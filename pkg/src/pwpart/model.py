"""Candidates, partitioned votes, profiles and election instances.

A partitioned vote is an ordered sequence of blocks ``A_1 > A_2 > ... > A_q``:
every member of an earlier block beats every member of a later block, and
members of the same block are incomparable.  Ranks are 1-based and top-down
(rank 1 is the best place).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator, Sequence

from pwpart.rules import (
    RuleFamily,
    ScoringVector,
    family_from_json,
    family_to_json,
    score_vector,
)


class InstanceError(ValueError):
    """Raised when an instance, vote or profile violates the data model."""


class Mode(str, Enum):
    UNIQUE = "unique"
    CO_WINNER = "co-winner"

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        aliases = {"unique": cls.UNIQUE, "winner": cls.UNIQUE, "co-winner": cls.CO_WINNER, "cowinner": cls.CO_WINNER}
        try:
            return aliases[value.lower()]
        except (KeyError, AttributeError):
            raise InstanceError(f"unknown mode {value!r}; expected 'unique' or 'co-winner'") from None


def check_candidate_name(name: Any) -> str:
    if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
        raise InstanceError(f"candidate name must be a non-empty token string, got {name!r}")
    return name


@dataclass(frozen=True)
class PartitionedVote:
    """Ordered blocks of mutually incomparable candidates."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for block in self.blocks:
            if not block:
                raise InstanceError("empty block")
            for name in sorted(block):
                check_candidate_name(name)
                if name in seen:
                    raise InstanceError(f"candidate {name} appears in two blocks")
                seen.add(name)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[str]]) -> "PartitionedVote":
        return cls(tuple(frozenset(b) for b in blocks))

    @classmethod
    def linear(cls, order: Sequence[str]) -> "PartitionedVote":
        return cls(tuple(frozenset([name]) for name in order))

    @property
    def candidates(self) -> frozenset[str]:
        return frozenset().union(*self.blocks)

    @property
    def is_linear(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def order(self) -> tuple[str, ...]:
        """The linear order of a vote whose blocks are all singletons."""
        if not self.is_linear:
            raise InstanceError("vote is not a linear order")
        return tuple(next(iter(b)) for b in self.blocks)

    def block_index(self, name: str) -> int:
        for j, block in enumerate(self.blocks):
            if name in block:
                return j
        raise InstanceError(f"candidate {name} not in vote")

    def rank_span(self, j: int) -> tuple[int, int]:
        """First and last rank (inclusive) occupied by block ``j``."""
        start = sum(len(b) for b in self.blocks[:j]) + 1
        return start, start + len(self.blocks[j]) - 1

    def above(self, name: str) -> int:
        """Number of candidates strictly preferred to ``name``."""
        return sum(len(b) for b in self.blocks[: self.block_index(name)])

    def extends_to(self, order: Sequence[str]) -> bool:
        """True iff the linear ``order`` is an extension of this vote."""
        if len(order) != len(set(order)) or set(order) != self.candidates:
            return False
        pos = 0
        for block in self.blocks:
            if set(order[pos : pos + len(block)]) != block:
                return False
            pos += len(block)
        return True

    def to_json(self) -> list[list[str]]:
        return [sorted(b) for b in self.blocks]


def validate_partitioned(vote: PartitionedVote, candidates: Iterable[str], index: int | None = None) -> None:
    """Check that the blocks of ``vote`` partition ``candidates``.

    Disjointness and non-emptiness are enforced when the vote is built, so the
    remaining obligations are coverage and the absence of unknown names.
    """
    where = "" if index is None else f"vote {index}: "
    cands = set(candidates)
    members = vote.candidates
    unknown = sorted(members - cands)
    if unknown:
        raise InstanceError(f"{where}unknown candidate {unknown[0]}")
    missing = sorted(cands - members)
    if missing:
        raise InstanceError(f"{where}{missing[0]} uncovered")


@dataclass(frozen=True)
class Profile:
    votes: tuple[PartitionedVote, ...]

    def __len__(self) -> int:
        return len(self.votes)

    def __iter__(self) -> Iterator[PartitionedVote]:
        return iter(self.votes)

    def __getitem__(self, i: int) -> PartitionedVote:
        return self.votes[i]

    @property
    def is_complete(self) -> bool:
        return all(v.is_linear for v in self.votes)

    def orders(self) -> list[tuple[str, ...]]:
        return [v.order() for v in self.votes]

    def extends_to(self, orders: Sequence[Sequence[str]]) -> bool:
        return len(orders) == len(self.votes) and all(v.extends_to(o) for v, o in zip(self.votes, orders))

    @classmethod
    def from_orders(cls, orders: Iterable[Sequence[str]]) -> "Profile":
        return cls(tuple(PartitionedVote.linear(o) for o in orders))


@dataclass(frozen=True)
class ElectionInstance:
    """Candidates, a partitioned profile, a rule and a distinguished candidate.

    ``rule`` is either a :class:`RuleFamily` (resolved at ``m = |candidates|``)
    or an explicit :class:`ScoringVector`.
    """

    candidates: tuple[str, ...]
    profile: Profile
    rule: RuleFamily | ScoringVector
    distinguished: str
    mode: Mode = Mode.CO_WINNER
    vector: ScoringVector = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.candidates:
            raise InstanceError("no candidates")
        for name in self.candidates:
            check_candidate_name(name)
        if len(set(self.candidates)) != len(self.candidates):
            dup = next(n for n in self.candidates if self.candidates.count(n) > 1)
            raise InstanceError(f"duplicate candidate {dup}")
        for i, vote in enumerate(self.profile):
            validate_partitioned(vote, self.candidates, i)
        if self.distinguished not in self.candidates:
            raise InstanceError(f"distinguished candidate {self.distinguished} absent")
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        if isinstance(self.rule, ScoringVector):
            vec = self.rule
        else:
            try:
                vec = score_vector(self.rule, len(self.candidates))
            except ValueError as exc:
                raise InstanceError(f"rule: {exc}") from None
        if len(vec) != len(self.candidates):
            raise InstanceError(f"vector length {len(vec)} does not match {len(self.candidates)} candidates")
        object.__setattr__(self, "vector", vec)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return len(self.profile)

    def with_profile(self, profile: Profile) -> "ElectionInstance":
        return ElectionInstance(self.candidates, profile, self.rule, self.distinguished, self.mode)

    def with_mode(self, mode: Mode | str) -> "ElectionInstance":
        return ElectionInstance(self.candidates, self.profile, self.rule, self.distinguished, Mode.parse(mode))


def instance_to_json(inst: ElectionInstance) -> dict[str, Any]:
    if isinstance(inst.rule, ScoringVector):
        rule: dict[str, Any] = {"vector": list(inst.rule.scores)}
    else:
        rule = family_to_json(inst.rule)
    return {
        "candidates": list(inst.candidates),
        "rule": rule,
        "votes": [v.to_json() for v in inst.profile],
        "distinguished": inst.distinguished,
        "mode": inst.mode.value,
    }


def serialize_instance(inst: ElectionInstance) -> str:
    return json.dumps(instance_to_json(inst), indent=1)


def _vote_from_json(raw: Any, index: int) -> PartitionedVote:
    if not isinstance(raw, list):
        raise InstanceError(f"vote {index}: expected a list of blocks")
    blocks = []
    for block in raw:
        if not isinstance(block, list):
            raise InstanceError(f"vote {index}: expected each block to be a list of names")
        if len(set(block)) != len(block):
            dup = next(n for n in block if block.count(n) > 1)
            raise InstanceError(f"vote {index}: candidate {dup} repeated in a block")
        blocks.append(block)
    try:
        return PartitionedVote.of(blocks)
    except InstanceError as exc:
        raise InstanceError(f"vote {index}: {exc}") from None


def instance_from_json(doc: Any) -> ElectionInstance:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    for key in ("candidates", "rule", "votes", "distinguished"):
        if key not in doc:
            raise InstanceError(f"missing field {key!r}")
    candidates = doc["candidates"]
    if not isinstance(candidates, list):
        raise InstanceError("'candidates' must be a list")
    raw_rule = doc["rule"]
    if not isinstance(raw_rule, dict):
        raise InstanceError("'rule' must be an object")
    try:
        if "vector" in raw_rule:
            rule: RuleFamily | ScoringVector = ScoringVector(tuple(raw_rule["vector"]))
        else:
            rule = family_from_json(raw_rule)
    except (ValueError, TypeError) as exc:
        raise InstanceError(f"rule: {exc}") from None
    if not isinstance(doc["votes"], list):
        raise InstanceError("'votes' must be a list")
    votes = tuple(_vote_from_json(v, i) for i, v in enumerate(doc["votes"]))
    return ElectionInstance(
        candidates=tuple(candidates),
        profile=Profile(votes),
        rule=rule,
        distinguished=doc["distinguished"],
        mode=Mode.parse(doc.get("mode", Mode.CO_WINNER.value)),
    )


def parse_instance(text: str | bytes) -> ElectionInstance:
    """Parse and validate a JSON instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    return instance_from_json(doc)
