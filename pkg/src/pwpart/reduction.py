"""Executable 3DM -> Possible-Winner constructions.

Two generators turn a 3-Dimensional-Matching instance into a partitioned
Possible-Winner election (co-winner mode) whose answer equals the 3DM answer:

* :func:`reduce_lemma6` for vectors with a run ``a+1 > a = ... = a > a-1``
  (``k`` copies of ``a``, ``a > 0``), one free block of size ``k + 2`` per triple;
* :func:`reduce_lemma7` for vectors with a run of ``3M - 2`` equal values
  followed above by a run of ``k`` larger values and one still larger value.

Both rely on :func:`build_adjustment_profile`, which produces linear votes that
pin every named candidate to an exact score offset while keeping padding
candidates below.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import reduce as _fold
from math import gcd
from typing import Any, Mapping, Sequence

from pwpart.model import ElectionInstance, Mode, PartitionedVote, Profile
from pwpart.oracle import ThreeDMInstance
from pwpart.rules import RuleFamily, ScoringVector, score_vector
from pwpart.scoring import s_max_profile, score_orders


class ReductionError(ValueError):
    """A reduction precondition (shape, sizes, layout) does not hold."""


class TightnessError(AssertionError):
    """A generated instance violates the tightness identity."""


# ---------------------------------------------------------------------------
# score adjustment profiles


@dataclass(frozen=True)
class AdjustmentTarget:
    """Named candidates with integer offsets, plus at least one dummy.

    ``dummy_margin`` is how far below ``lambda`` every dummy must end up
    (1 means merely strictly below).
    """

    named: tuple[str, ...]
    offsets: tuple[int, ...]
    dummies: tuple[str, ...]
    dummy_margin: int = 1

    def __post_init__(self) -> None:
        if len(self.named) != len(self.offsets):
            raise ValueError("one offset per named candidate")
        if not self.dummies:
            raise ValueError("at least one dummy candidate is required")
        names = self.named + self.dummies
        if len(set(names)) != len(names):
            raise ValueError("named and dummy candidates must be distinct")
        if self.dummy_margin < 1:
            raise ValueError("dummy_margin must be at least 1")


@dataclass(frozen=True)
class AdjustmentProfile:
    votes: tuple[tuple[str, ...], ...]
    lam: int
    scores: dict[str, int]
    bound: int


class _GapPlanner:
    """Writes any transfer amount as a short signed sum of boundary-gap subsets.

    A forward block for ``(src -> dst)`` hands ``dst`` the gaps of the chosen
    boundaries, taken from ``src``.  Subset sums of the gaps reach every value
    ``0..top`` when a unit gap exists; otherwise a BFS over signed subset sums
    finds the fewest blocks (gcd of the gaps is 1, so every value is reachable).
    """

    def __init__(self, vector: ScoringVector):
        scores = vector.scores
        self.gaps = [scores[p] - scores[p + 1] for p in range(len(scores) - 1)]
        self.top = scores[0] - scores[-1]
        if _fold(gcd, self.gaps, 0) != 1:
            raise ValueError(f"score gaps of {list(scores)} must have gcd 1 (normalize the vector)")
        subsets: dict[int, frozenset[int]] = {0: frozenset()}
        for p, g in enumerate(self.gaps):
            if g == 0:
                continue
            for total, chosen in list(subsets.items()):
                subsets.setdefault(total + g, chosen | {p})
        self.subsets = subsets
        self.full = frozenset(p for p, g in enumerate(self.gaps) if g)
        self._plans: dict[int, list[tuple[int, frozenset[int]]]] = {}

    def plan(self, r: int) -> list[tuple[int, frozenset[int]]]:
        """Steps ``(sign, boundaries)`` summing to ``r`` for ``0 <= r < top``."""
        if r in self._plans:
            return self._plans[r]
        if r in self.subsets:
            steps = [(1, self.subsets[r])] if r else []
        else:
            bound = 2 * self.top * self.top + self.top
            moves = [(sign, total) for total in self.subsets if total for sign in (1, -1)]
            parent: dict[int, tuple[int, int, int]] = {0: (0, 0, 0)}
            queue = deque([0])
            while queue and r not in parent:
                cur = queue.popleft()
                for sign, total in moves:
                    nxt = cur + sign * total
                    if abs(nxt) <= bound and nxt not in parent:
                        parent[nxt] = (cur, sign, total)
                        queue.append(nxt)
            if r not in parent:
                raise ValueError(f"cannot express transfer {r} with gaps {self.gaps}")
            steps = []
            cur = r
            while cur:
                prev, sign, total = parent[cur]
                steps.append((sign, self.subsets[total]))
                cur = prev
        self._plans[r] = steps
        return steps

    def max_steps(self) -> int:
        return max([len(self.plan(r)) for r in range(self.top)] + [1])


def _block(src: str, dst: str, rest: Sequence[str], boundaries: frozenset[int]) -> list[tuple[str, ...]]:
    # all cyclic shifts of (src, dst, *rest); in shift t, src sits at t and dst at t+1
    sigma = [src, dst, *rest]
    n = len(sigma)
    votes = []
    for t in range(n):
        order = [""] * n
        for j, name in enumerate(sigma):
            order[(j + t) % n] = name
        if t in boundaries:
            order[t], order[t + 1] = order[t + 1], order[t]
        votes.append(tuple(order))
    return votes


def adjustment_bound(target: AdjustmentTarget, vector: ScoringVector) -> int:
    """Upper bound on ``|Q|`` for :func:`build_adjustment_profile`.

    With ``N`` candidates, ``n`` named ones, ``delta`` the lift of ``lambda``
    above the rotation baseline and ``K`` the most blocks any remainder needs
    (``K = 1`` whenever some score gap equals 1)::

        |Q| <= N * (sum |X_i| + n * delta + (n + |D|) * K)
    """
    delta = _lift(target)
    K = _GapPlanner(vector).max_steps()
    n = len(target.named)
    return len(vector) * (sum(abs(x) for x in target.offsets) + n * delta + (n + len(target.dummies)) * K)


def _lift(target: AdjustmentTarget) -> int:
    n = len(target.named)
    total = sum(target.offsets)
    need = -(total // n) if n and total < 0 else 0
    return max(target.dummy_margin, need)


def build_adjustment_profile(target: AdjustmentTarget, vector: ScoringVector) -> AdjustmentProfile:
    """Linear votes giving named candidate ``i`` exactly ``lambda + X_i`` points.

    Every dummy ends at most ``lambda - dummy_margin``.  The profile is a union
    of rotation blocks (all cyclic shifts of one order, which give every
    candidate the same total) in which some shifts swap two adjacent
    candidates, moving one boundary's score gap from one candidate to the
    other.  The result is re-scored before it is returned.

    Raises:
        ValueError: if the vector length does not match the candidates or the
            score gaps are not coprime.
    """
    names = target.named + target.dummies
    if len(vector) != len(names):
        raise ValueError(f"vector has {len(vector)} entries for {len(names)} candidates")
    planner = _GapPlanner(vector)
    delta = _lift(target)
    lifted = {name: x + delta for name, x in zip(target.named, target.offsets)}

    sources: list[list[Any]] = [[name, -y] for name, y in lifted.items() if y < 0]
    supply = sum(lifted.values())
    share, extra = divmod(supply, len(target.dummies))
    for j, d in enumerate(target.dummies):
        amount = share + (1 if j < extra else 0)
        if amount:
            sources.append([d, amount])
    sinks: list[list[Any]] = [[name, y] for name, y in lifted.items() if y > 0]

    transfers: list[tuple[str, str, int]] = []
    si = 0
    for sink in sinks:
        while sink[1]:
            src = sources[si]
            w = min(src[1], sink[1])
            transfers.append((src[0], sink[0], w))
            src[1] -= w
            sink[1] -= w
            if not src[1]:
                si += 1

    votes: list[tuple[str, ...]] = []
    blocks = 0
    for src, dst, w in transfers:
        rest = [name for name in names if name not in (src, dst)]
        full, r = divmod(w, planner.top)
        steps = [(1, planner.full)] * full + planner.plan(r)
        for sign, boundaries in steps:
            a, b = (src, dst) if sign > 0 else (dst, src)
            votes.extend(_block(a, b, rest, boundaries))
            blocks += 1
    lam = blocks * sum(vector.scores) + delta

    scores = score_orders(votes, vector, names)
    for name, x in zip(target.named, target.offsets):
        if scores[name] != lam + x:
            raise AssertionError(f"adjustment profile gives {name} {scores[name]}, wanted {lam + x}")
    for d in target.dummies:
        if scores[d] > lam - target.dummy_margin:
            raise AssertionError(f"adjustment profile gives dummy {d} {scores[d]}, limit {lam - target.dummy_margin}")
    bound = adjustment_bound(target, vector)
    if len(votes) > bound:
        raise AssertionError(f"{len(votes)} votes exceed the bound {bound}")
    return AdjustmentProfile(tuple(votes), lam, scores, bound)


# ---------------------------------------------------------------------------
# vector shapes


def _bottom_up(v: ScoringVector) -> list[int]:
    # index 0 unused so that up[p] is the score at bottom-up position p
    return [0] + list(v.scores[::-1])


def _maximal_runs(up: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    m = len(up) - 1
    p = 1
    while p <= m:
        q = p
        while q + 1 <= m and up[q + 1] == up[p]:
            q += 1
        runs.append((p, q))
        p = q + 1
    return runs


def lemma6_shape_ok(v: ScoringVector, i: int, k: int) -> bool:
    up = _bottom_up(v)
    m = len(v)
    if i < 2 or k < 1 or i + k > m:
        return False
    a = up[i]
    return (
        a > 0
        and all(up[p] == a for p in range(i, i + k))
        and up[i - 1] == a - 1
        and up[i + k] == a + 1
    )


def lemma7_shape_ok(v: ScoringVector, i: int, k: int, l: int) -> bool:  # noqa: E741
    up = _bottom_up(v)
    m = len(v)
    if i < 1 or k < 1 or l < 1 or i + l + k > m:
        return False
    alpha, beta, gamma = up[i], up[i + l], up[i + l + k]
    return (
        all(up[p] == alpha for p in range(i, i + l))
        and all(up[p] == beta for p in range(i + l, i + l + k))
        and alpha < beta < gamma
        and gamma >= alpha + 2
    )


def find_shape(v: ScoringVector, which: str, l: int | None = None) -> tuple[int, ...] | None:  # noqa: E741
    """Lowest bottom-up anchor of the requested run shape, or ``None``.

    ``which="lemma6"`` returns ``(i, k)``; ``which="lemma7"`` needs the run
    length ``l`` and returns ``(i, k, l)``.
    """
    up = _bottom_up(v)
    runs = _maximal_runs(up)
    if which == "lemma6":
        for lo, hi in runs:
            if lemma6_shape_ok(v, lo, hi - lo + 1):
                return lo, hi - lo + 1
        return None
    if which == "lemma7":
        if l is None or l < 1:
            raise ValueError("lemma7 shape needs a run length l >= 1")
        for idx, (lo, hi) in enumerate(runs[:-1]):
            if hi - lo + 1 < l:
                continue
            nlo, nhi = runs[idx + 1]
            i, k = hi - l + 1, nhi - nlo + 1
            if lemma7_shape_ok(v, i, k, l):
                return i, k, l
        return None
    raise ValueError(f"unknown shape {which!r}")


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class ReductionLayout:
    """Bookkeeping for a generated instance.

    ``pads[t]`` and ``bottoms[t]`` are the padding set and bottom-fill set used
    in the vote of triple ``t``.  ``targets`` holds score offsets relative to
    the distinguished candidate (one-free-block layout) or maximal partial
    scores (two-free-block layout).  Vote index ranges are half-open.
    """

    lemma: int
    M: int
    i: int
    k: int
    l: int | None
    m: int
    vector: tuple[int, ...]
    distinguished: str
    X: tuple[str, ...]
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]
    pads: tuple[tuple[str, ...], ...]
    bottoms: tuple[tuple[str, ...], ...]
    dummies: tuple[str, ...]
    partial_votes: tuple[int, int]
    q_votes: tuple[int, int]
    targets: dict[str, int]
    lam: int
    values: dict[str, int] = field(default_factory=dict)

    @property
    def H(self) -> tuple[str, ...]:
        return tuple(sorted({h for pad in self.pads for h in pad}))

    def to_json(self) -> dict[str, Any]:
        return {
            "lemma": self.lemma,
            "M": self.M,
            "i": self.i,
            "k": self.k,
            "l": self.l,
            "m": self.m,
            "D": len(self.dummies),
            "vector": list(self.vector),
            "values": dict(self.values),
            "distinguished": self.distinguished,
            "triples": [list(t) for t in self.triples],
            "pads": [list(p) for p in self.pads],
            "bottoms": [list(b) for b in self.bottoms],
            "dummies": list(self.dummies),
            "partial_votes": list(self.partial_votes),
            "q_votes": list(self.q_votes),
            "targets": dict(sorted(self.targets.items())),
            "lambda": self.lam,
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "ReductionLayout":
        return cls(
            lemma=doc["lemma"],
            M=doc["M"],
            i=doc["i"],
            k=doc["k"],
            l=doc["l"],
            m=doc["m"],
            vector=tuple(doc["vector"]),
            distinguished=doc["distinguished"],
            X=tuple(sorted({t[0] for t in doc["triples"]})),
            Y=tuple(sorted({t[1] for t in doc["triples"]})),
            Z=tuple(sorted({t[2] for t in doc["triples"]})),
            triples=tuple(tuple(t) for t in doc["triples"]),
            pads=tuple(tuple(p) for p in doc["pads"]),
            bottoms=tuple(tuple(b) for b in doc["bottoms"]),
            dummies=tuple(doc["dummies"]),
            partial_votes=tuple(doc["partial_votes"]),
            q_votes=tuple(doc["q_votes"]),
            targets=dict(doc["targets"]),
            lam=doc["lambda"],
            values=dict(doc.get("values", {})),
        )


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def _resolve(family: RuleFamily | ScoringVector, m: int) -> ScoringVector:
    if isinstance(family, ScoringVector):
        if len(family) != m:
            raise ReductionError(f"explicit vector has length {len(family)}, the construction needs m={m}")
        return family
    try:
        return score_vector(family, m)
    except ValueError as exc:
        raise ReductionError(f"family yields no vector for m={m}: {exc}") from None


def _assemble(
    candidates: list[str],
    partial: list[PartitionedVote],
    named: list[str],
    offsets: list[int],
    dummies: list[str],
    margin: int,
    vector: ScoringVector,
    family: RuleFamily | ScoringVector,
    c: str,
) -> tuple[ElectionInstance, AdjustmentProfile]:
    try:
        q = build_adjustment_profile(AdjustmentTarget(tuple(named), tuple(offsets), tuple(dummies), margin), vector)
    except ValueError as exc:
        raise ReductionError(str(exc)) from None
    votes = tuple(partial) + tuple(PartitionedVote.linear(o) for o in q.votes)
    inst = ElectionInstance(tuple(candidates), Profile(votes), family, c, Mode.CO_WINNER)
    return inst, q


def reduce_lemma6(
    inst3: ThreeDMInstance, k: int, i: int, family: RuleFamily | ScoringVector
) -> tuple[ElectionInstance, ReductionLayout]:
    """Build the one-free-block-per-triple election.

    The vote of triple ``(x, y, z)`` fixes every other candidate and leaves
    ``{x, y, z} + H_s`` (``|H_s| = k - 1``) free over the ranks scoring
    ``a+1, a, ..., a, a-1``.  Linear votes then set, relative to ``c``:
    ``x: +2``, ``y: -1``, ``z: -1``, pads ``0``, dummies below, all measured
    against the reference extension ``x > y > H_s > z``.

    Raises:
        ReductionError: if ``|S| <= M``, or the vector lacks the run shape at
            ``(i, k)``.
    """
    M, S = inst3.M, inst3.S
    if len(S) <= M:
        raise ReductionError(
            f"need more triples than M (|S|={len(S)}, M={M}); decide this 3DM instance directly"
        )
    if k < 1 or i < 2:
        raise ReductionError(f"need k >= 1 and i >= 2, got k={k}, i={i}")
    m = max(2 + 3 * M + len(S) * (k - 1), i + k)
    vector = _resolve(family, m)
    if not lemma6_shape_ok(vector, i, k):
        raise ReductionError(f"vector {list(vector)} lacks the a+1 > a*{k} > a-1 shape at i={i}")
    a = vector.bottom_up(i)

    taken = set(inst3.elements)
    c = _fresh("c", taken)
    pads = [tuple(_fresh(f"h{t + 1}_{j + 1}", taken) for j in range(k - 1)) for t in range(len(S))]
    n_dummies = m - 1 - 3 * M - len(S) * (k - 1)
    if n_dummies < 1:
        raise ReductionError("layout leaves no dummy candidate")
    dummies = [_fresh(f"d{j + 1}", taken) for j in range(n_dummies)]
    E = list(inst3.elements)
    H = [h for pad in pads for h in pad]
    candidates = [c] + E + H + dummies

    partial, reference, bottoms = [], [], []
    for t, s in enumerate(S):
        x, y, z = s
        free = set(s) | set(pads[t])
        pool = sorted(dummies) + sorted(h for h in H if h not in free) + sorted(e for e in E if e not in free) + [c]
        bottom = sorted(pool[: i - 2])
        top = sorted(set(candidates) - free - set(bottom))
        blocks = [[name] for name in top] + [sorted(free)] + [[name] for name in bottom]
        partial.append(PartitionedVote.of(blocks))
        reference.append(tuple(top) + (x, y) + tuple(sorted(pads[t])) + (z,) + tuple(bottom))
        bottoms.append(tuple(bottom))

    s_ref = score_orders(reference, vector, candidates)
    rel = {c: 0}
    rel.update({x: 2 for x in inst3.X})
    rel.update({y: -1 for y in inst3.Y})
    rel.update({z: -1 for z in inst3.Z})
    rel.update({h: 0 for h in H})
    named = [c] + E + H
    offsets = [rel[name] - s_ref[name] for name in named]
    margin = max(s_ref[d] for d in dummies) + 1
    inst, q = _assemble(candidates, partial, named, offsets, dummies, margin, vector, family, c)
    layout = ReductionLayout(
        lemma=6,
        M=M,
        i=i,
        k=k,
        l=None,
        m=m,
        vector=vector.scores,
        distinguished=c,
        X=inst3.X,
        Y=inst3.Y,
        Z=inst3.Z,
        triples=S,
        pads=tuple(pads),
        bottoms=tuple(bottoms),
        dummies=tuple(dummies),
        partial_votes=(0, len(S)),
        q_votes=(len(S), len(S) + len(q.votes)),
        targets={name: rel[name] for name in named},
        lam=q.lam,
        values={"a": a},
    )
    return inst, layout


def lemma7_targets(inst3: ThreeDMInstance, alpha: int, beta: int, gamma: int) -> dict[str, int]:
    """Maximal partial scores of the element and pad candidates."""
    size = len(inst3.S)
    out = {}
    for x in inst3.X:
        n = inst3.occurrences(x)
        out[x] = (n - 1) * gamma + (size - n + 1) * alpha
    for y in inst3.Y:
        n = inst3.occurrences(y)
        out[y] = (n - 1) * beta + gamma + (size - n) * alpha
    for z in inst3.Z:
        out[z] = beta + (size - 1) * alpha
    return out


def reduce_lemma7(
    inst3: ThreeDMInstance,
    i: int,
    k: int,
    family: RuleFamily | ScoringVector,
    target_adjust: Mapping[str, int] | None = None,
) -> tuple[ElectionInstance, ReductionLayout]:
    """Build the two-free-block election with a run of ``3M - 2`` equal scores.

    The vote of triple ``s`` is ``fixed > (s + H) > (E - s) > C_s`` with one
    shared pad set ``H`` of size ``k - 1`` and ``C_s`` drawn from the dummies
    and ``c``.  Linear votes cap each element's partial score at the values
    returned by :func:`lemma7_targets`; pads are capped at ``|S| * beta``.

    ``target_adjust`` adds offsets to named candidates' adjustment targets and
    exists for fault injection.

    Raises:
        ReductionError: if the vector lacks the run shape at ``(i, k, 3M-2)``.
    """
    M, S = inst3.M, inst3.S
    if not S:
        raise ReductionError("need at least one triple")
    l = 3 * M - 2  # noqa: E741
    if i < 1 or k < 1:
        raise ReductionError(f"need i >= 1 and k >= 1, got i={i}, k={k}")
    n_dummies = max(1, i - 2)
    m = 3 * M + k + n_dummies
    vector = _resolve(family, m)
    if not lemma7_shape_ok(vector, i, k, l):
        raise ReductionError(f"vector {list(vector)} lacks a {l}-run, {k}-run, larger-value shape at i={i}")
    alpha, beta, gamma = vector.bottom_up(i), vector.bottom_up(i + l), vector.bottom_up(i + l + k)

    taken = set(inst3.elements)
    c = _fresh("c", taken)
    H = [_fresh(f"h{j + 1}", taken) for j in range(k - 1)]
    dummies = [_fresh(f"d{j + 1}", taken) for j in range(n_dummies)]
    E = list(inst3.elements)
    candidates = [c] + E + H + dummies
    fixed_pool = sorted(dummies) + [c]
    if i - 1 > len(fixed_pool):
        raise ReductionError(f"cannot fill {i - 1} bottom ranks from the dummies and c")
    bottom = sorted(fixed_pool[: i - 1])
    top = sorted(set(fixed_pool) - set(bottom))

    partial = []
    for s in S:
        upper = sorted(set(s) | set(H))
        lower = sorted(set(E) - set(s))
        blocks = [[name] for name in top] + [upper] + ([lower] if lower else []) + [[name] for name in bottom]
        partial.append(PartitionedVote.of(blocks))

    caps = lemma7_targets(inst3, alpha, beta, gamma)
    caps.update({h: len(S) * beta for h in H})
    s_fixed = {name: s_max_profile(partial, name, vector) for name in [c] + dummies}
    named = [c] + E + H
    offsets = [-s_fixed[c]] + [-caps[name] for name in E + H]
    if target_adjust:
        offsets = [x + target_adjust.get(name, 0) for name, x in zip(named, offsets)]
    margin = max(s_fixed[d] for d in dummies) + 1
    inst, q = _assemble(candidates, partial, named, offsets, dummies, margin, vector, family, c)
    layout = ReductionLayout(
        lemma=7,
        M=M,
        i=i,
        k=k,
        l=l,
        m=m,
        vector=vector.scores,
        distinguished=c,
        X=inst3.X,
        Y=inst3.Y,
        Z=inst3.Z,
        triples=S,
        pads=tuple(tuple(H) for _ in S),
        bottoms=tuple(tuple(bottom) for _ in S),
        dummies=tuple(dummies),
        partial_votes=(0, len(S)),
        q_votes=(len(S), len(S) + len(q.votes)),
        targets=dict(caps),
        lam=q.lam,
        values={"alpha": alpha, "beta": beta, "gamma": gamma},
    )
    return inst, layout


def tightness_report(inst: ElectionInstance, layout: ReductionLayout) -> dict[str, tuple[int, int]]:
    """Measured vs closed-form sums for each candidate block and the total.

    Maximal partial scores are read back from the instance as
    ``score(c) - score_Q(e)``; each entry maps a block name to
    ``(measured, closed form)``.
    """
    if layout.lemma != 7:
        raise ValueError("tightness applies to two-free-block instances from reduce_lemma7")
    vector = inst.vector
    c = layout.distinguished
    s_c = s_max_profile(inst.profile, c, vector)
    lo, hi = layout.q_votes
    q_scores = score_orders([inst.profile[j].order() for j in range(lo, hi)], vector, inst.candidates)
    cap = {name: s_c - q_scores[name] for name in inst.candidates}

    alpha, beta, gamma = layout.values["alpha"], layout.values["beta"], layout.values["gamma"]
    M, size, H = layout.M, len(layout.triples), layout.H
    spread = alpha * size * (M - 1)
    closed = {
        "H": len(H) * size * beta,
        "X": (size - M) * gamma + M * alpha + spread,
        "Y": (size - M) * beta + M * gamma + spread,
        "Z": (size - M) * alpha + M * beta + spread,
    }
    measured = {
        "H": sum(cap[h] for h in H),
        "X": sum(cap[x] for x in layout.X),
        "Y": sum(cap[y] for y in layout.Y),
        "Z": sum(cap[z] for z in layout.Z),
    }
    positions = size * (gamma + (len(H) + 1) * beta + alpha + (3 * M - 3) * alpha)
    report = {name: (measured[name], closed[name]) for name in ("H", "X", "Y", "Z")}
    report["positions"] = (sum(measured.values()), positions)
    return report


def check_tightness(inst: ElectionInstance, layout: ReductionLayout) -> None:
    """Assert that maximal partial scores exactly fill the contested positions.

    Raises:
        TightnessError: naming the first block sum that does not match.
    """
    for name, (got, want) in tightness_report(inst, layout).items():
        if got != want:
            raise TightnessError(f"block sum {name}: measured {got}, closed form {want}")
