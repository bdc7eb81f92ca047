"""Simple graphs and loopless multigraphs on vertices ``0..n-1``.

Adjacency of a :class:`Graph` is stored as one bitmask per vertex. Both types
are immutable; derived data is cached on first use.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

DegreeFunction = tuple  # tuple[int, ...] indexed by vertex


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}{v} out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    # -- basic queries ----------------------------------------------------
    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1)))

    @property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        # shared name with Multigraph; orientations index into this
        return self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(a).count("1") for a in self.adj)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_independent(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.adj[v] & m) for v in bits(m))

    def is_clique(self, vertices: Sequence[int]) -> bool:
        return all(self.has_edge(u, v) for u, v in combinations(vertices, 2))

    def edges_within(self, mask: int) -> int:
        return sum(bin(self.adj[v] & mask).count("1") for v in bits(mask)) // 2

    # -- connectivity -----------------------------------------------------
    def component_masks(self, within: int | None = None) -> list[int]:
        """Vertex masks of the components of G[within], ordered by least vertex."""
        rest = (1 << self.n) - 1 if within is None else within
        comps = []
        while rest:
            seed = rest & -rest
            comp = frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    def components(self) -> list[list[int]]:
        return [bits(c) for c in self.component_masks()]

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.component_masks()) == 1

    # -- derived graphs ---------------------------------------------------
    def induced(self, vertices: Iterable[int]) -> "Graph":
        """G[vertices], relabelled by ascending original label."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        adj = []
        for v in vs:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(vs), tuple(adj))

    def remove(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(adj))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def as_multigraph(self) -> "Multigraph":
        return Multigraph(self.n, self.edges)

    # -- cliques ----------------------------------------------------------
    def clique_number(self) -> int:
        best = 0

        def grow(size: int, cand: int):
            nonlocal best
            if size > best:
                best = size
            while cand:
                if size + bin(cand).count("1") <= best:
                    return
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                grow(size + 1, cand & self.adj[v])

        grow(0, (1 << self.n) - 1)
        return best

    def contains_clique(self, size: int) -> bool:
        if size <= 1:
            return self.n >= size
        return self.clique_number() >= size

    def degeneracy(self) -> int:
        alive = (1 << self.n) - 1
        best = 0
        while alive:
            v = min(bits(alive), key=lambda x: bin(self.adj[x] & alive).count("1"))
            best = max(best, bin(self.adj[v] & alive).count("1"))
            alive &= ~(1 << v)
        return best

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph; ``edges`` lists edge instances as ``(u, v)``, ``u < v``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}: multigraphs here are loopless")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}{v} out of range")
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def adj(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for e in self.edges if e == (a, b))

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def underlying(self) -> Graph:
        return Graph.from_edges(self.n, set(self.edges))

    def edges_within(self, mask: int) -> int:
        return sum(1 for u, v in self.edges if mask >> u & 1 and mask >> v & 1)


def as_degree_function(G, f) -> DegreeFunction:
    """Normalise ``f`` (constant, sequence or mapping) to a tuple indexed by vertex."""
    if isinstance(f, int):
        vals = (f,) * G.n
    elif isinstance(f, Mapping):
        if set(f) != set(range(G.n)):
            raise ValueError("degree function must be defined on exactly V(G)")
        vals = tuple(int(f[v]) for v in range(G.n))
    else:
        vals = tuple(int(x) for x in f)
        if len(vals) != G.n:
            raise ValueError(f"degree function has {len(vals)} values for {G.n} vertices")
    if any(x < 0 for x in vals):
        raise ValueError("degree function values must be non-negative")
    return vals


# -- small named graphs ------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges)


def glue_at_vertex(g: Graph, h: Graph, gv: int, hv: int) -> Graph:
    """Identify vertex ``gv`` of g with ``hv`` of h; h's other vertices follow g's."""
    relabel, nxt = {}, g.n
    for v in range(h.n):
        if v == hv:
            relabel[v] = gv
        else:
            relabel[v] = nxt
            nxt += 1
    edges = list(g.edges) + [(relabel[u], relabel[v]) for u, v in h.edges]
    return Graph.from_edges(nxt, edges)
