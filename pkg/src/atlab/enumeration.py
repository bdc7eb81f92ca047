"""Canonical labelling by adjacency-matrix maximisation, and small-graph generators."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .errors import CapExceeded
from .graph import Graph, bits
from .limits import DEFAULT, Limits
from .structure import in_T_k


def _refine(G: Graph, colors: Sequence) -> list[int]:
    """Equitable colour refinement; returns integer colours, ordered canonically."""
    cur = list(colors)
    while True:
        sig = [(cur[v], tuple(sorted(cur[u] for u in bits(G.adj[v])))) for v in range(G.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(cur)):
            return new
        cur = new


def canonical_labelling(G: Graph, colors: Sequence | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(order, key)``: ``order[i]`` is the vertex placed at position i.

    ``key`` is lexicographically maximal over all orders compatible with the
    refined colour classes, row i being the adjacency of position i to
    positions ``< i``. Equal keys (with equal colours) mean isomorphic inputs.
    """
    n = G.n
    if n == 0:
        return (), ()
    init = [G.degrees[v] for v in range(n)] if colors is None else [(c, G.degrees[v]) for v, c in enumerate(colors)]
    col = _refine(G, init)
    cell_of_pos = sorted(col)
    best_key: list[int] | None = None
    best_order: list[int] | None = None
    order: list[int] = []
    key: list[int] = []

    def dfs(pos: int, used: int):
        nonlocal best_key, best_order
        if pos == n:
            if best_key is None or key > best_key:
                best_key, best_order = key[:], order[:]
            return
        want = cell_of_pos[pos]
        rows = []
        for v in range(n):
            if used >> v & 1 or col[v] != want:
                continue
            row = 0
            a = G.adj[v]
            for i, u in enumerate(order):
                if a >> u & 1:
                    row |= 1 << i
            rows.append((row, v))
        top = max(r for r, _ in rows)
        # only the largest row can extend to a maximal key
        if best_key is not None and key == best_key[:pos] and top < best_key[pos]:
            return
        for row, v in rows:
            if row == top:
                order.append(v)
                key.append(row)
                dfs(pos + 1, used | 1 << v)
                order.pop()
                key.pop()

    dfs(0, 0)
    return tuple(best_order), tuple(best_key)


def canonical_form(G: Graph) -> Graph:
    order, _ = canonical_labelling(G)
    perm = [0] * G.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return G.relabel(perm)


def canonical_key(G: Graph, colors: Sequence | None = None):
    order, key = canonical_labelling(G, colors)
    if colors is None:
        return (G.n, key)
    return (G.n, key, tuple(colors[v] for v in order))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    reps: dict = {}
    for g in _classes(n - 1):
        degs = g.degrees
        for size in range(n):
            for S in combinations(range(n - 1), size):
                # new vertex must be of minimum degree in the extension
                sset = set(S)
                if any(degs[u] + (u in sset) < size for u in range(n - 1)):
                    continue
                adj = list(g.adj) + [0]
                for u in S:
                    adj[u] |= 1 << (n - 1)
                    adj[n - 1] |= 1 << u
                h = Graph(n, tuple(adj))
                order, key = canonical_labelling(h)
                if key not in reps:
                    perm = [0] * n
                    for pos, v in enumerate(order):
                        perm[v] = pos
                    reps[key] = h.relabel(perm)
    return tuple(h for _, h in sorted(reps.items(), key=lambda kv: (kv[1].m, kv[0])))


def enumerate_graphs(n: int, limits: Limits = DEFAULT) -> Iterator[Graph]:
    """One representative per isomorphism class of simple graphs on n vertices."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > limits.enumerate_vertices:
        raise CapExceeded("enumerate_graphs order", "enumerate_vertices", n, limits.enumerate_vertices)
    yield from _classes(n)


def enumerate_connected(n: int, limits: Limits = DEFAULT) -> Iterator[Graph]:
    return (g for g in enumerate_graphs(n, limits) if g.is_connected())


def enumerate_gallai_trees(n: int, k: int, limits: Limits = DEFAULT) -> Iterator[Graph]:
    """Connected members of T_k on at most n vertices, one per isomorphism class."""
    for order in range(1, n + 1):
        for g in enumerate_graphs(order, limits):
            if g.is_connected() and in_T_k(g, k):
                yield g
