"""Small-graph routines on bitset adjacency lists.

A graph on ``n`` vertices is a sequence ``adj`` of ``n`` ints; bit ``j`` of
``adj[i]`` is set iff ``{i, j}`` is an edge.  The graphs met here have at most
a few hundred vertices, so everything is exact.
"""
from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

Adjacency = Sequence[int]


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def edge_count(adj: Adjacency) -> int:
    return sum(popcount(a) for a in adj) // 2


def is_simple(adj: Adjacency) -> bool:
    for i, a in enumerate(adj):
        if a >> i & 1:
            return False
        for j in bits(a):
            if not adj[j] >> i & 1:
                return False
    return True


def bfs_distances(adj: Adjacency, source: int) -> list[int]:
    """Hop distances from ``source``; ``-1`` marks unreachable vertices."""
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in bits(adj[v]):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def shortest_path(adj: Adjacency, source: int, target: int) -> list[int] | None:
    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            path = [v]
            while path[-1] != source:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in bits(adj[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def diameter(adj: Adjacency) -> int | None:
    """All-pairs BFS diameter, or ``None`` when the graph is disconnected."""
    best = 0
    for v in range(len(adj)):
        dist = bfs_distances(adj, v)
        if min(dist) < 0:
            return None
        best = max(best, max(dist))
    return best


def components(adj: Adjacency, within: int | None = None) -> list[list[int]]:
    """Connected components of the subgraph induced on the bitset ``within``."""
    remaining = (1 << len(adj)) - 1 if within is None else within
    out = []
    while remaining:
        seed = (remaining & -remaining).bit_length() - 1
        comp = 1 << seed
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        out.append(list(bits(comp)))
    return out


def induced(adj: Adjacency, vertices: Sequence[int]) -> list[int]:
    """Induced subgraph, relabelled ``0..len(vertices)-1`` in the given order."""
    pos = {v: i for i, v in enumerate(vertices)}
    out = []
    for v in vertices:
        m = 0
        for w in bits(adj[v]):
            if w in pos:
                m |= 1 << pos[w]
        out.append(m)
    return out


def opposite(adj: Adjacency) -> list[int]:
    """Same vertices, complementary edges."""
    full = (1 << len(adj)) - 1
    return [full & ~a & ~(1 << i) for i, a in enumerate(adj)]


def max_clique_size(adj: Adjacency) -> int:
    """Exact clique number by branch and bound with a greedy colouring bound."""
    n = len(adj)
    best = 0

    def colour_bound(cand: int) -> int:
        colours = 0
        while cand:
            colours += 1
            avail = cand
            while avail:
                v = (avail & -avail).bit_length() - 1
                cand &= ~(1 << v)
                avail &= ~adj[v] & ~(1 << v)
        return colours

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + colour_bound(cand) <= best:
            return
        while cand:
            if size + popcount(cand) <= best:
                return
            v = (cand & -cand).bit_length() - 1
            expand(size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


def maximal_cliques(adj: Adjacency) -> list[list[int]]:
    """All maximal cliques (Bron–Kerbosch with Tomita pivoting)."""
    out: list[list[int]] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(list(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & adj[u]))
        for v in bits(p & ~adj[pivot]):
            bk(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    n = len(adj)
    if n:
        bk(0, (1 << n) - 1, 0)
    return sorted(out)


def is_regular(adj: Adjacency, degree: int) -> bool:
    return all(popcount(a) == degree for a in adj)


def triangle_free(adj: Adjacency) -> bool:
    return all(not (adj[i] & adj[j]) for i in range(len(adj)) for j in bits(adj[i]))
