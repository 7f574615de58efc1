"""Exact integral max-flow by capacity scaling.

Capacities are Python ints, so multiplicities such as ``2**61`` are handled
without unary expansion; the number of scaling phases is the bit length of
the largest capacity.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n_nodes: int):
        self.n = n_nodes
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []  # residual capacity
        self.orig: list[int] = []

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        """Add ``u -> v``; returns the edge id (its reverse is ``id ^ 1``)."""
        if capacity < 0:
            raise ValueError("negative capacity")
        eid = len(self.to)
        self.to += [v, u]
        self.cap += [capacity, 0]
        self.orig += [capacity, 0]
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        return self.orig[eid] - self.cap[eid]

    def _augment_path(self, s: int, t: int, delta: int) -> list[int] | None:
        parent = [-1] * self.n
        parent[s] = -2
        q = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while q:
            x = q.popleft()
            for e in adj[x]:
                y = to[e]
                if parent[y] == -1 and cap[e] >= delta:
                    parent[y] = e
                    if y == t:
                        path = []
                        while y != s:
                            e = parent[y]
                            path.append(e)
                            y = to[e ^ 1]
                        return path
                    q.append(y)
        return None

    def max_flow(self, s: int, t: int) -> int:
        top = max(self.cap, default=0)
        if top <= 0:
            return 0
        delta = 1 << (top.bit_length() - 1)
        total = 0
        cap = self.cap
        while delta >= 1:
            while True:
                path = self._augment_path(s, t, delta)
                if path is None:
                    break
                push = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= push
                    cap[e ^ 1] += push
                total += push
            delta >>= 1
        return total

    def reachable(self, s: int) -> list[bool]:
        """Nodes reachable from ``s`` in the residual graph (the min-cut side)."""
        seen = [False] * self.n
        seen[s] = True
        q = deque([s])
        while q:
            x = q.popleft()
            for e in self.adj[x]:
                y = self.to[e]
                if not seen[y] and self.cap[e] > 0:
                    seen[y] = True
                    q.append(y)
        return seen
