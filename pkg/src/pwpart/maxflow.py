"""Integral maximum flow by Dinic's blocking-flow method."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Sequence


def dinic(
    arcs: Sequence[tuple[Hashable, Hashable, int]], source: Hashable, sink: Hashable
) -> tuple[int, list[int]]:
    """Maximum ``source``-``sink`` flow over integer-capacity ``arcs``.

    Returns the flow value and the flow carried by each arc, in input order.
    Parallel arcs are allowed; every returned flow is an integer within
    ``[0, capacity]``.
    """
    index: dict[Hashable, int] = {}
    for tail, head, _ in arcs:
        index.setdefault(tail, len(index))
        index.setdefault(head, len(index))
    index.setdefault(source, len(index))
    index.setdefault(sink, len(index))
    n = len(index)
    s, t = index[source], index[sink]

    # residual graph as parallel arrays: to[e], cap[e]; e ^ 1 is the reverse edge
    to: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for tail, head, capacity in arcs:
        if capacity < 0:
            raise ValueError(f"negative capacity on arc {tail!r}->{head!r}")
        u, w = index[tail], index[head]
        adj[u].append(len(to))
        to.append(w)
        cap.append(capacity)
        adj[w].append(len(to))
        to.append(u)
        cap.append(0)

    value = 0
    if s == t:
        return 0, [0] * len(arcs)
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        cursor = [0] * n

        def push(u: int, limit: int) -> int:
            if u == t:
                return limit
            while cursor[u] < len(adj[u]):
                e = adj[u][cursor[u]]
                w = to[e]
                if cap[e] > 0 and level[w] == level[u] + 1:
                    pushed = push(w, min(limit, cap[e]))
                    if pushed:
                        cap[e] -= pushed
                        cap[e ^ 1] += pushed
                        return pushed
                cursor[u] += 1
            return 0

        while True:
            pushed = push(s, float("inf"))  # type: ignore[arg-type]
            if not pushed:
                break
            value += pushed

    flows = [cap[2 * a + 1] for a in range(len(arcs))]
    return value, flows
