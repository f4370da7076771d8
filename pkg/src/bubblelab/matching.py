"""Maximum-cardinality matching in a general graph (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Matching:
    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def unmatched(self) -> tuple[int, ...]:
        seen = {v for p in self.pairs for v in p}
        return tuple(v for v in range(self.n) if v not in seen)

    @property
    def perfect(self) -> bool:
        return 2 * len(self.pairs) == self.n

    def mate(self) -> list[int]:
        out = [-1] * self.n
        for u, v in self.pairs:
            out[u], out[v] = v, u
        return out


def maximum_matching(n: int, edges: Iterable[tuple[int, int]]) -> Matching:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()

    match = [-1] * n
    # greedy start; the search below only has to fix what greedy missed
    for u in range(n):
        if match[u] == -1:
            for v in adj[u]:
                if match[v] == -1:
                    match[u], match[v] = v, u
                    break

    for root in range(n):
        if match[root] == -1:
            _augment_from(root, adj, match)

    pairs = tuple((u, match[u]) for u in range(n) if match[u] > u)
    return Matching(n, pairs)


def _augment_from(root: int, adj: list[list[int]], match: list[int]) -> bool:
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # flip the alternating path back to the root
                    while to != -1:
                        pv = parent[to]
                        nxt = match[pv]
                        match[to], match[pv] = pv, to
                        to = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False

