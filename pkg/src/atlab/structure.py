"""Blocks, Gallai trees, W^k and the even-cycle witness."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graph import Graph, bits, mask_of
from .errors import HypothesisError


@dataclass(frozen=True)
class BlockTree:
    n: int
    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]

    @cached_property
    def incidence(self) -> tuple[tuple[int, int], ...]:
        """(block index, cut vertex) pairs of the block-cutvertex tree."""
        return tuple((i, c) for i, b in enumerate(self.blocks) for c in b if c in self.cut_vertices)

    @cached_property
    def endblocks(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks)
                     if sum(1 for v in b if v in self.cut_vertices) <= 1)

    @property
    def non_separating(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.cut_vertices

    def cut_vertices_of(self, i: int) -> tuple[int, ...]:
        return tuple(v for v in self.blocks[i] if v in self.cut_vertices)

    def interior(self, i: int) -> tuple[int, ...]:
        """Vertices of block i that lie in no other block."""
        return tuple(v for v in self.blocks[i] if v not in self.cut_vertices)


def block_decomposition(G: Graph) -> BlockTree:
    """Biconnected components by Hopcroft-Tarjan; isolated vertices form singleton blocks."""
    if G.n == 0:
        raise ValueError("block decomposition of the empty graph")
    disc = [-1] * G.n
    low = [0] * G.n
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    t = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        if not G.adj[root]:
            disc[root] = t
            t += 1
            blocks.append((root,))
            continue
        disc[root] = low[root] = t
        t += 1
        estack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(G.neighbors(root)))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    estack.append((v, w))
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(G.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                while True:
                    a, b = estack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, v):
                        break
                blocks.append(tuple(sorted(comp)))
                if parent != root:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=lambda b: (b[0], b))
    return BlockTree(G.n, tuple(blocks), frozenset(cuts))


def _is_odd_cycle_block(G: Graph, block) -> bool:
    m = mask_of(block)
    return len(block) >= 3 and len(block) % 2 == 1 and G.edges_within(m) == len(block)


def _is_complete_block(G: Graph, block) -> bool:
    k = len(block)
    return G.edges_within(mask_of(block)) == k * (k - 1) // 2


def is_gallai_tree(G: Graph, bt: BlockTree | None = None) -> bool:
    if not G.is_connected():
        raise HypothesisError("connected", "is_gallai_tree expects a connected graph")
    bt = bt or block_decomposition(G)
    return all(_is_complete_block(G, b) or _is_odd_cycle_block(G, b) for b in bt.blocks)


def in_T_k(G: Graph, k: int) -> bool:
    """Gallai tree with maximum degree at most k-1, other than K_k."""
    if not is_gallai_tree(G):
        return False
    return G.max_degree <= k - 1 and not (G.n == k and G.is_complete())


def w_k_vertices(G: Graph, k: int) -> frozenset[int]:
    """Vertices lying in some clique on k-1 vertices."""
    if k < 3:
        raise ValueError("W^k needs k >= 3")
    size = k - 1
    found = 0

    def grow(clique: int, count: int, cand: int):
        nonlocal found
        if count == size:
            found |= clique
            return
        while cand:
            if count + bin(cand).count("1") < size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(clique | low, count + 1, cand & G.adj[v])

    grow(0, 0, (1 << G.n) - 1)
    return frozenset(bits(found))


def find_even_cycle_one_chord(G: Graph):
    """An induced even cycle with at most one chord, or ``None`` for Gallai trees.

    Returns ``(cycle, chord)`` where ``cycle`` lists the vertices in cyclic order
    and ``chord`` is an edge ``(u, v)`` or ``None``. Shortest cycles are found
    first; ties break by smallest starting vertex.
    """
    bt = block_decomposition(G)
    if is_gallai_tree(G, bt):
        return None
    for block in bt.blocks:
        if _is_complete_block(G, block) or _is_odd_cycle_block(G, block):
            continue
        hit = _even_cycle_in_block(G, mask_of(block))
        if hit is not None:
            return hit
    raise AssertionError("non-Gallai graph without an even cycle of at most one chord")


def _even_cycle_in_block(G: Graph, bmask: int):
    size = bin(bmask).count("1")
    for length in range(4, size + 1, 2):
        for s in bits(bmask):
            allowed = bmask & ~((1 << (s + 1)) - 1)
            path = [s]

            def dfs(v: int, used: int):
                if len(path) == length:
                    if G.adj[v] >> s & 1 and path[1] < path[-1]:
                        cmask = mask_of(path)
                        extra = G.edges_within(cmask) - length
                        if extra <= 1:
                            return tuple(path), _chord(G, path) if extra else None
                    return None
                for w in bits(G.adj[v] & allowed & ~used):
                    path.append(w)
                    r = dfs(w, used | 1 << w)
                    path.pop()
                    if r is not None:
                        return r
                return None

            r = dfs(s, 1 << s)
            if r is not None:
                return r
    return None


def _chord(G: Graph, cycle) -> tuple[int, int]:
    L = len(cycle)
    ring = {(min(cycle[i], cycle[(i + 1) % L]), max(cycle[i], cycle[(i + 1) % L])) for i in range(L)}
    cmask = mask_of(cycle)
    for u in cycle:
        for v in bits(G.adj[u] & cmask):
            if u < v and (u, v) not in ring:
                return (u, v)
    raise AssertionError("no chord present")
