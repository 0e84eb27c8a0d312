"""Positional scoring vectors, rule families, normalization and classification.

Vectors are stored best-to-worst: entry ``r - 1`` is the score of rank ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Any, Iterator, Mapping, Sequence

FAMILY_KINDS = (
    "plurality",
    "veto",
    "k-approval",
    "borda",
    "two-one-zero",
    "explicit-table",
    "lemma6-template",
    "lemma7-template",
)


@dataclass(frozen=True)
class ScoringVector:
    """Non-negative, non-increasing integer scores for ranks ``1..m``.

    For ``m >= 2`` the first entry must be strictly greater than the last.
    A length-1 vector is the degenerate single-candidate election.
    """

    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        scores = tuple(self.scores)
        object.__setattr__(self, "scores", scores)
        if not scores:
            raise ValueError("empty scoring vector")
        for s in scores:
            if isinstance(s, bool) or not isinstance(s, int):
                raise ValueError(f"score values must be integers, got {s!r}")
            if s < 0:
                raise ValueError(f"score values must be non-negative, got {s}")
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValueError(f"scores must be non-increasing best-to-worst: {list(scores)}")
        if len(scores) >= 2 and scores[0] == scores[-1]:
            raise ValueError(f"first score must exceed last score: {list(scores)}")

    def __len__(self) -> int:
        return len(self.scores)

    def __iter__(self) -> Iterator[int]:
        return iter(self.scores)

    def __getitem__(self, idx: int) -> int:
        return self.scores[idx]

    @property
    def m(self) -> int:
        return len(self.scores)

    def at_rank(self, rank: int) -> int:
        if not 1 <= rank <= len(self.scores):
            raise IndexError(f"rank {rank} outside 1..{len(self.scores)}")
        return self.scores[rank - 1]

    def bottom_up(self, position: int) -> int:
        """Score at a 1-based position counted from the worst rank upward."""
        return self.at_rank(len(self.scores) + 1 - position)


@dataclass(frozen=True)
class RuleFamily:
    """A named generator of scoring vectors, one per number of candidates."""

    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown rule family {self.kind!r}")
        object.__setattr__(self, "params", dict(self.params))

    @classmethod
    def plurality(cls) -> "RuleFamily":
        return cls("plurality")

    @classmethod
    def veto(cls) -> "RuleFamily":
        return cls("veto")

    @classmethod
    def k_approval(cls, k: int) -> "RuleFamily":
        return cls("k-approval", {"k": k})

    @classmethod
    def borda(cls) -> "RuleFamily":
        return cls("borda")

    @classmethod
    def two_one_zero(cls) -> "RuleFamily":
        return cls("two-one-zero")

    @classmethod
    def table(cls, table: Mapping[int, Sequence[int]]) -> "RuleFamily":
        return cls("explicit-table", {"table": {int(m): list(v) for m, v in table.items()}})

    @classmethod
    def lemma6_template(cls, i: int, k: int, a: int = 1) -> "RuleFamily":
        return cls("lemma6-template", {"i": i, "k": k, "a": a})

    @classmethod
    def lemma7_template(cls, i: int, k: int, l: int) -> "RuleFamily":  # noqa: E741
        return cls("lemma7-template", {"i": i, "k": k, "l": l})


def _param(family: RuleFamily, name: str) -> int:
    try:
        value = family.params[name]
    except KeyError:
        raise ValueError(f"{family.kind} needs parameter {name!r}") from None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{family.kind} parameter {name!r} must be an integer")
    return value


def score_vector(family: RuleFamily, m: int) -> ScoringVector:
    """The vector ``family`` assigns to ``m`` candidates.

    Raises:
        ValueError: if ``m`` lies outside the family's domain.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    kind = family.kind
    if kind == "explicit-table":
        table = family.params.get("table", {})
        row = table.get(m, table.get(str(m)))
        if row is None:
            raise ValueError(f"explicit table has no vector for m={m}")
        return ScoringVector(tuple(row))
    if m == 1:
        return ScoringVector((0,))
    if kind == "plurality":
        scores = [1] + [0] * (m - 1)
    elif kind == "veto":
        scores = [1] * (m - 1) + [0]
    elif kind == "k-approval":
        k = _param(family, "k")
        if not 1 <= k <= m - 1:
            raise ValueError(f"k-approval needs 1 <= k <= m-1, got k={k}, m={m}")
        scores = [1] * k + [0] * (m - k)
    elif kind == "borda":
        scores = list(range(m - 1, -1, -1))
    elif kind == "two-one-zero":
        if m < 3:
            raise ValueError(f"two-one-zero needs m >= 3, got m={m}")
        scores = [2] + [1] * (m - 2) + [0]
    elif kind == "lemma6-template":
        scores = _lemma6_template(_param(family, "i"), _param(family, "k"), _param(family, "a"), m)
    else:
        scores = _lemma7_template(_param(family, "i"), _param(family, "k"), _param(family, "l"), m)
    return ScoringVector(tuple(scores))


def _lemma6_template(i: int, k: int, a: int, m: int) -> list[int]:
    # bottom-up: unit steps to a-1 at i-1, a run of k copies of a, then a+1, a+2, ...
    if i < 2 or k < 1:
        raise ValueError(f"lemma6-template needs i >= 2 and k >= 1, got i={i}, k={k}")
    if not 1 <= a <= i - 1:
        raise ValueError(f"lemma6-template needs 1 <= a <= i-1 for a normalized vector, got a={a}, i={i}")
    if m < i + k:
        raise ValueError(f"lemma6-template(i={i}, k={k}) needs m >= {i + k}, got m={m}")
    up = []
    for p in range(1, m + 1):
        if p < i:
            up.append(max(0, a - 1 - (i - 1 - p)))
        elif p < i + k:
            up.append(a)
        else:
            up.append(a + 1 + (p - i - k))
    return up[::-1]


def _lemma7_template(i: int, k: int, l: int, m: int) -> list[int]:  # noqa: E741
    # bottom-up: 0, 1, ..., i-2, then l copies of i-1, k copies of i, then i+1, i+2, ...
    if i < 1 or k < 1 or l < 1:
        raise ValueError(f"lemma7-template needs i, k, l >= 1, got i={i}, k={k}, l={l}")
    if m < i + l + k:
        raise ValueError(f"lemma7-template(i={i}, k={k}, l={l}) needs m >= {i + l + k}, got m={m}")
    base = i - 1
    up = []
    for p in range(1, m + 1):
        if p < i:
            up.append(p - 1)
        elif p < i + l:
            up.append(base)
        elif p < i + l + k:
            up.append(base + 1)
        else:
            up.append(base + 2 + (p - i - l - k))
    return up[::-1]


def family_to_json(family: RuleFamily) -> dict[str, Any]:
    doc: dict[str, Any] = {"family": family.kind}
    for key, value in sorted(family.params.items()):
        if key == "table":
            doc["table"] = {str(m): list(v) for m, v in sorted(value.items(), key=lambda kv: int(kv[0]))}
        else:
            doc[key] = value
    return doc


def family_from_json(doc: Mapping[str, Any]) -> RuleFamily:
    kind = doc.get("family")
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown rule family {kind!r}")
    params = {k: v for k, v in doc.items() if k != "family"}
    if kind == "explicit-table":
        table = params.get("table")
        if not isinstance(table, dict):
            raise ValueError("explicit-table needs a 'table' object mapping m to a vector")
        params["table"] = {int(m): list(v) for m, v in table.items()}
    return RuleFamily(kind, params)


def parse_rule_spec(spec: str) -> RuleFamily | ScoringVector:
    """Parse a compact rule string such as ``k-approval:2``, ``borda`` or ``vector:2,1,1,0``."""
    name, _, arg = spec.partition(":")
    if name == "vector":
        return ScoringVector(tuple(int(x) for x in arg.split(",")))
    if name == "k-approval":
        if not arg:
            raise ValueError("k-approval needs a k, e.g. k-approval:2")
        return RuleFamily.k_approval(int(arg))
    if name in ("plurality", "veto", "borda", "two-one-zero"):
        return RuleFamily(name)
    if name in ("lemma6-template", "lemma7-template"):
        keys = ("i", "k", "a") if name == "lemma6-template" else ("i", "k", "l")
        values = [int(x) for x in arg.split(",")] if arg else []
        return RuleFamily(name, dict(zip(keys, values)))
    raise ValueError(f"unknown rule {spec!r}")


def normalize(v: ScoringVector) -> ScoringVector:
    """Shift the last score to 0 and divide out the gcd of all entries."""
    low = v.scores[-1]
    shifted = [s - low for s in v.scores]
    g = reduce(gcd, shifted, 0)
    if g == 0:
        return ScoringVector(tuple(shifted))
    return ScoringVector(tuple(s // g for s in shifted))


@dataclass(frozen=True)
class RuleClassification:
    distinct_values: int
    two_valued_k: int | None
    is_two_one_zero: bool
    is_differentiating: bool
    max_equal_run: int

    @property
    def flow_tractable(self) -> bool:
        """Whether the max-flow procedure decides this vector."""
        return self.two_valued_k is not None or self.is_two_one_zero

    def to_json(self) -> dict[str, Any]:
        return {
            "distinct": self.distinct_values,
            "k": self.two_valued_k,
            "two_one_zero": self.is_two_one_zero,
            "differentiating": self.is_differentiating,
            "max_equal_run": self.max_equal_run,
            "flow_tractable": self.flow_tractable,
        }


def is_differentiating(v: ScoringVector) -> bool:
    """Whether some higher score gap strictly exceeds a lower non-zero gap.

    With bottom-up positions ``alpha_1..alpha_m`` and gaps
    ``g_p = alpha_p - alpha_(p-1)``, looks for ``2 <= i`` and ``j > i + 1`` with
    ``g_j > g_i > 0``.  A zero lower gap never counts, so (2,1,...,1,0) and
    every two-valued vector are non-differentiating.
    """
    up = v.scores[::-1]
    m = len(up)
    gaps = {p: up[p - 1] - up[p - 2] for p in range(2, m + 1)}
    for i in range(2, m + 1):
        if gaps[i] <= 0:
            continue
        for j in range(i + 2, m + 1):
            if gaps[j] > gaps[i]:
                return True
    return False


def _runs(scores: Sequence[int]) -> list[int]:
    lengths: list[int] = []
    for idx, s in enumerate(scores):
        if idx and s == scores[idx - 1]:
            lengths[-1] += 1
        else:
            lengths.append(1)
    return lengths


def classify(v: ScoringVector) -> RuleClassification:
    """Classify a single vector (classification is per vector, not per family)."""
    norm = normalize(v)
    distinct = len(set(norm.scores))
    k = sum(1 for s in norm.scores if s == 1) if distinct == 2 else None
    m = len(norm)
    two_one_zero = m >= 3 and norm.scores == (2,) + (1,) * (m - 2) + (0,)
    return RuleClassification(
        distinct_values=distinct,
        two_valued_k=k,
        is_two_one_zero=two_one_zero,
        is_differentiating=is_differentiating(norm),
        max_equal_run=max(_runs(norm.scores)),
    )
