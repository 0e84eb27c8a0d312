"""Max-flow decision procedure for k-approval (hence every two-valued rule) and (2,1,...,1,0).

Both rules let a rival lose at most one point per vote relative to its maximal
score once the distinguished candidate ``c`` is fixed on top of its block.  The
network routes each rival's required loss (its *deficit*) from the source,
through the rival, into per-vote nodes whose sink capacity counts the losing
slots that vote offers.  ``c`` (co-)wins iff the maximum flow saturates every
deficit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from pwpart.maxflow import dinic
from pwpart.model import ElectionInstance, Mode, PartitionedVote, Profile
from pwpart.rules import ScoringVector, classify, normalize
from pwpart.scoring import (
    fix_distinguished,
    fix_vote,
    s_max_table,
    s_max_vote,
    satisfies_mode,
    score_orders,
)

SOURCE = "s"
SINK = "t"


class UnsupportedRule(ValueError):
    """The rule is neither two-valued nor (2,1,...,1,0) after normalization."""


@dataclass(frozen=True)
class Arc:
    tail: Hashable
    head: Hashable
    capacity: int


@dataclass(frozen=True)
class VoteNode:
    """A per-vote node collecting losses from one block of the fixed vote.

    ``block`` indexes the block of the fixed profile whose members lose there.
    """

    node: Hashable
    vote: int
    block: int
    capacity: int
    members: frozenset[str]


@dataclass(frozen=True)
class FlowNetwork:
    kind: str
    k: int | None
    mode: Mode
    distinguished: str
    fixed: Profile
    s_max: dict[str, int]
    deficit: dict[str, int]
    target: int
    vote_nodes: tuple[VoteNode, ...]
    arcs: tuple[Arc, ...]

    @property
    def candidate_nodes(self) -> tuple[str, ...]:
        return tuple(sorted(self.deficit))

    @property
    def sink_capacity(self) -> int:
        return sum(node.capacity for node in self.vote_nodes)


@dataclass(frozen=True)
class FlowResult:
    value: int
    flows: tuple[int, ...]

    def on(self, net: FlowNetwork, tail: Hashable, head: Hashable) -> int:
        return sum(f for arc, f in zip(net.arcs, self.flows) if arc.tail == tail and arc.head == head)


@dataclass(frozen=True)
class LossNode:
    capacity: int
    members: frozenset[str]
    block: int


@dataclass(frozen=True)
class LossStructure:
    """Per-vote loss options under (2,1,...,1,0) after fixing ``c``.

    ``forced`` maps candidates to points lost relative to their maximal score in
    the unfixed vote purely because ``c`` was moved up.  ``forced_bottom`` is
    the single candidate pinned to the last rank, if any; its maximal score is
    already zero, so it contributes nothing to ``forced``.
    """

    fixed: PartitionedVote
    top: LossNode | None
    bottom: LossNode | None
    forced: dict[str, int] = field(default_factory=dict)
    forced_bottom: str | None = None


def rule_kind(vector: ScoringVector) -> tuple[str, int | None]:
    cls = classify(vector)
    if cls.two_valued_k is not None:
        return "k-approval", cls.two_valued_k
    if cls.is_two_one_zero:
        return "two-one-zero", None
    raise UnsupportedRule(f"rule {list(vector)} is neither two-valued nor (2,1,...,1,0)")


def two_one_zero_losses(o: PartitionedVote, c: str, m: int) -> LossStructure:
    """Loss nodes of one vote under (2,1,...,1,0) with ``m >= 3`` candidates."""
    if m < 3:
        raise ValueError("(2,1,...,1,0) needs m >= 3")
    vec = ScoringVector((2,) + (1,) * (m - 2) + (0,))
    fixed = fix_vote(o, c)
    blocks = fixed.blocks
    top = LossNode(len(blocks[0]) - 1, blocks[0], 0) if len(blocks[0]) >= 2 else None
    last = len(blocks) - 1
    bottom = LossNode(1, blocks[last] - {c}, last) if len(blocks[last]) >= 2 else None
    forced = {}
    for name in sorted(o.candidates - {c}):
        lost = s_max_vote(o, name, vec) - s_max_vote(fixed, name, vec)
        if lost:
            forced[name] = lost
    pinned = next(iter(blocks[last])) if len(blocks[last]) == 1 else None
    return LossStructure(fixed, top, bottom, forced, pinned)


def _deficits(s_max: dict[str, int], c: str, base: int, mode: Mode) -> dict[str, int]:
    bump = 1 if mode is Mode.UNIQUE else 0
    out = {}
    for name, score in s_max.items():
        if name == c:
            continue
        need = score - base + bump
        if need > 0:
            out[name] = need
    return out


def build_network(inst: ElectionInstance, mode: Mode | str | None = None) -> FlowNetwork:
    """Construct the loss network for ``inst``.

    Raises:
        UnsupportedRule: if the normalized vector is neither two-valued nor
            (2,1,...,1,0).
    """
    mode = inst.mode if mode is None else Mode.parse(mode)
    vector = normalize(inst.vector)
    kind, k = rule_kind(vector)
    c = inst.distinguished
    fixed = fix_distinguished(inst.profile, c)
    base = sum(s_max_vote(o, c, vector) for o in inst.profile)

    vote_nodes: list[VoteNode] = []
    if kind == "k-approval":
        assert k is not None
        s_max = s_max_table(inst.profile, inst.candidates, vector)
        for i, o in enumerate(inst.profile):
            j = next(j for j in range(len(o.blocks)) if o.rank_span(j)[0] <= k <= o.rank_span(j)[1])
            capacity = o.rank_span(j)[1] - k
            members = o.blocks[j] - {c}
            # in the fixed vote the losers sit in whichever block now holds A_j minus c
            fixed_block = fixed[i].block_index(next(iter(members))) if members else fixed[i].block_index(c)
            vote_nodes.append(VoteNode(("vote", i, j), i, fixed_block, capacity, members))
    else:
        s_max = s_max_table(fixed, inst.candidates, vector)
        for i, o in enumerate(inst.profile):
            losses = two_one_zero_losses(o, c, inst.m)
            if losses.top is not None:
                vote_nodes.append(VoteNode(("top", i), i, losses.top.block, losses.top.capacity, losses.top.members))
            if losses.bottom is not None:
                vote_nodes.append(
                    VoteNode(("bottom", i), i, losses.bottom.block, losses.bottom.capacity, losses.bottom.members)
                )

    deficit = _deficits(s_max, c, base, mode)
    arcs = [Arc(SOURCE, ("cand", name), need) for name, need in sorted(deficit.items())]
    for name in sorted(deficit):
        for node in vote_nodes:
            if name in node.members:
                arcs.append(Arc(("cand", name), node.node, 1))
    arcs.extend(Arc(node.node, SINK, node.capacity) for node in vote_nodes)
    return FlowNetwork(
        kind=kind,
        k=k,
        mode=mode,
        distinguished=c,
        fixed=fixed,
        s_max=s_max,
        deficit=deficit,
        target=sum(deficit.values()),
        vote_nodes=tuple(vote_nodes),
        arcs=tuple(arcs),
    )


def max_flow(net: FlowNetwork) -> FlowResult:
    value, flows = dinic([(a.tail, a.head, a.capacity) for a in net.arcs], SOURCE, SINK)
    return FlowResult(value, tuple(flows))


def losers(net: FlowNetwork, flow: FlowResult) -> dict[tuple[int, int], set[str]]:
    """Candidates that receive a unit of flow into each (vote, fixed block)."""
    by_node = {node.node: node for node in net.vote_nodes}
    out: dict[tuple[int, int], set[str]] = {}
    for arc, f in zip(net.arcs, flow.flows):
        if f and arc.head in by_node and isinstance(arc.tail, tuple) and arc.tail[0] == "cand":
            node = by_node[arc.head]
            out.setdefault((node.vote, node.block), set()).add(arc.tail[1])
    return out


def extract_witness(net: FlowNetwork, flow: FlowResult, inst: ElectionInstance) -> Profile:
    """Turn a saturating flow into a complete profile extending the fixed profile.

    Within each block, candidates without a unit of flow come first and flowed
    candidates last, each group in lexicographic order; the flowed ones thereby
    land on the block's losing ranks.
    """
    if flow.value != net.target:
        raise ValueError(f"flow value {flow.value} is below the target {net.target}")
    lost = losers(net, flow)
    orders = []
    for i, vote in enumerate(net.fixed):
        order: list[str] = []
        for j, block in enumerate(vote.blocks):
            down = lost.get((i, j), set())
            order.extend(sorted(block - down))
            order.extend(sorted(down))
        orders.append(tuple(order))
    witness = Profile.from_orders(orders)
    scores = score_orders(orders, inst.vector, inst.candidates)
    if not satisfies_mode(scores, inst.distinguished, net.mode):
        raise RuntimeError(f"witness fails the {net.mode.value} condition: {scores}")
    return witness


@dataclass(frozen=True)
class FlowDecision:
    decision: bool
    target: int
    max_flow: int
    network: FlowNetwork
    flow: FlowResult
    witness: Profile | None


def decide_flow(inst: ElectionInstance, mode: Mode | str | None = None) -> FlowDecision:
    """Decide the Possible-Winner question for a flow-tractable rule.

    Raises:
        UnsupportedRule: for rules outside the two tractable classes; the
            caller should fall back to the oracle.
    """
    net = build_network(inst, mode)
    flow = max_flow(net)
    if net.target > net.sink_capacity and flow.value >= net.target:
        raise RuntimeError("flow exceeds total sink capacity")
    yes = flow.value == net.target
    witness = extract_witness(net, flow, inst) if yes else None
    return FlowDecision(yes, net.target, flow.value, net, flow, witness)
