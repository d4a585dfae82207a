"""Integral max flow by shortest augmenting paths (Edmonds-Karp)."""

from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, Iterable, Set, Tuple

Arc = Tuple[Hashable, Hashable]


class Network:
    """Residual network over arbitrary hashable nodes."""

    def __init__(self) -> None:
        self.cap: Dict[Arc, int] = {}
        self.adj: Dict[Hashable, Set[Hashable]] = {}

    def add_arc(self, u: Hashable, v: Hashable, c: int) -> None:
        self.cap[(u, v)] = self.cap.get((u, v), 0) + c
        self.cap.setdefault((v, u), 0)
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)

    def max_flow(self, s: Hashable, t: Hashable) -> Tuple[int, Dict[Arc, int], Set[Hashable]]:
        """Returns (value, net flow per arc, source side of a minimum cut)."""
        orig = dict(self.cap)
        res = dict(self.cap)
        value = 0
        while True:
            pred = {s: None}
            queue = deque([s])
            while queue and t not in pred:
                x = queue.popleft()
                for y in sorted(self.adj.get(x, ()), key=repr):
                    if y not in pred and res[(x, y)] > 0:
                        pred[y] = x
                        queue.append(y)
            if t not in pred:
                break
            path = []
            y = t
            while pred[y] is not None:
                path.append((pred[y], y))
                y = pred[y]
            delta = min(res[a] for a in path)
            for x, y in path:
                res[(x, y)] -= delta
                res[(y, x)] += delta
            value += delta
        flow = {a: max(0, orig[a] - res[a]) for a in orig}
        return value, flow, set(pred)


def bipartite_vertex_cover(left: Iterable[Hashable], right: Iterable[Hashable],
                           edges: Iterable[Arc], weight: Dict[Hashable, int]) -> Set[Hashable]:
    """Minimum weight vertex cover of a bipartite graph via a minimum cut."""
    left, right = list(left), list(right)
    edges = list(edges)
    big = sum(weight[v] for v in left + right) + 1
    net = Network()
    s, t = ("__s",), ("__t",)
    for u in left:
        net.add_arc(s, u, weight[u])
    for v in right:
        net.add_arc(v, t, weight[v])
    for u, v in edges:
        net.add_arc(u, v, big)
    _, _, reach = net.max_flow(s, t)
    return {u for u in left if u not in reach} | {v for v in right if v in reach}
