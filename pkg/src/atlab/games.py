"""Ground-truth solvers for list colouring, f-choosability and the paint game."""
from __future__ import annotations

from typing import Iterator, Sequence

from .enumeration import canonical_key
from .errors import CapExceeded
from .graph import Graph, as_degree_function, bits
from .limits import DEFAULT, Limits


def is_l_colorable(G: Graph, L: Sequence) -> tuple | None:
    """A proper colouring with pi(v) in L[v], or ``None``."""
    if len(L) != G.n:
        raise ValueError("one list per vertex")
    lists = [sorted(set(l)) for l in L]
    colour: list = [None] * G.n

    def pick() -> int:
        # most constrained uncoloured vertex
        best, best_free = -1, None
        for v in range(G.n):
            if colour[v] is not None:
                continue
            used = {colour[u] for u in bits(G.adj[v]) if colour[u] is not None}
            free = sum(1 for c in lists[v] if c not in used)
            if best_free is None or free < best_free:
                best, best_free = v, free
        return best

    def dfs(left: int) -> bool:
        if left == 0:
            return True
        v = pick()
        used = {colour[u] for u in bits(G.adj[v]) if colour[u] is not None}
        for c in lists[v]:
            if c not in used:
                colour[v] = c
                if dfs(left - 1):
                    return True
        colour[v] = None
        return False

    return tuple(colour) if dfs(G.n) else None


def _reduce(G: Graph, f: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    # a vertex with more colours than neighbours can always be coloured last
    f = tuple(f)
    while True:
        drop = [v for v in range(G.n) if f[v] > G.degrees[v]]
        if not drop:
            return G, f
        keep = [v for v in range(G.n) if v not in set(drop)]
        G, f = G.induced(keep), tuple(f[v] for v in keep)


def _split(G: Graph, f: tuple[int, ...]) -> list[tuple[Graph, tuple[int, ...]]]:
    comps = G.components()
    if len(comps) == 1:
        return [(G, f)]
    return [(G.induced(c), tuple(f[v] for v in c)) for c in comps]


def colour_class_systems(n: int, f: Sequence[int], min_size: int = 2) -> Iterator[tuple[int, ...]]:
    """Multisets of vertex masks, each of size >= min_size, covering v exactly f[v] times.

    A list assignment up to renaming colours is the multiset of its colour
    classes {v : c in L(v)}. Each multiset is produced once: classes are
    chosen through the smallest vertex with remaining demand, in
    non-increasing order while that vertex stays the pivot.
    """
    need = list(f)
    chosen: list[int] = []

    def subsets_with(p: int, avail: int, cap: int | None):
        others = bits(avail & ~(1 << p))
        # larger masks first so the first system found is deterministic
        masks = []
        for r in range(1 << len(others)):
            m = 1 << p
            for i, v in enumerate(others):
                if r >> i & 1:
                    m |= 1 << v
            if bin(m).count("1") >= min_size and (cap is None or m <= cap):
                masks.append(m)
        masks.sort(reverse=True)
        return masks

    def rec(prev_pivot: int, prev_mask: int):
        pivot = next((v for v in range(n) if need[v] > 0), None)
        if pivot is None:
            yield tuple(chosen)
            return
        avail = sum(1 << v for v in range(n) if need[v] > 0)
        cap = prev_mask if pivot == prev_pivot else None
        for m in subsets_with(pivot, avail, cap):
            for v in bits(m):
                need[v] -= 1
            chosen.append(m)
            yield from rec(pivot, m)
            chosen.pop()
            for v in bits(m):
                need[v] += 1

    yield from rec(-1, 0)


def _classes_colourable(G: Graph, classes: Sequence[int]) -> bool:
    of_vertex = [[i for i, c in enumerate(classes) if c >> v & 1] for v in range(G.n)]
    taken = [0] * len(classes)   # vertices already coloured with class i
    order = sorted(range(G.n), key=lambda v: (len(of_vertex[v]), v))

    def dfs(j: int) -> bool:
        if j == len(order):
            return True
        v = order[j]
        for i in of_vertex[v]:
            if not taken[i] & G.adj[v]:
                taken[i] |= 1 << v
                if dfs(j + 1):
                    return True
                taken[i] &= ~(1 << v)
        return False

    return dfs(0)


class ChoosabilitySolver:
    """Decides f-choosability; the memo lives on the instance."""

    def __init__(self, limits: Limits = DEFAULT):
        self.limits = limits
        self.memo: dict = {}

    def is_f_choosable(self, G: Graph, f) -> bool:
        """The palette cap applies to each connected piece left after dropping vertices with f > d."""
        return self._solve(G, as_degree_function(G, f))

    def bad_assignment(self, G: Graph, f) -> tuple[int, ...] | None:
        """Colour classes of an uncolourable f-assignment, searched directly."""
        f = as_degree_function(G, f)
        if any(x == 0 for x in f):
            return ()
        for classes in colour_class_systems(G.n, f, min_size=1):
            if not _classes_colourable(G, classes):
                return classes
        return None

    def _solve(self, G: Graph, f: tuple[int, ...]) -> bool:
        if G.n == 0:
            return True
        if any(x == 0 for x in f):
            return False
        G, f = _reduce(G, f)
        if G.n == 0:
            return True
        parts = _split(G, f)
        if len(parts) > 1:
            return all(self._solve(g, h) for g, h in parts)
        key = canonical_key(G, f)
        if key in self.memo:
            return self.memo[key]
        if sum(f) > self.limits.palette:
            raise CapExceeded("is_f_choosable palette size sum(f)", "palette", sum(f), self.limits.palette)
        ans = self._connected(G, f)
        self.memo[key] = ans
        return ans

    def _connected(self, G: Graph, f: tuple[int, ...]) -> bool:
        # an assignment with a private colour at v is colourable iff G - v is
        for v in range(G.n):
            rest = [u for u in range(G.n) if u != v]
            if not self._solve(G.induced(rest), tuple(f[u] for u in rest)):
                return False
        for classes in colour_class_systems(G.n, f):
            if not _classes_colourable(G, classes):
                return False
        return True


def is_f_choosable(G: Graph, f, limits: Limits = DEFAULT) -> bool:
    return ChoosabilitySolver(limits).is_f_choosable(G, f)


class PaintGame:
    """Exact value of the online list colouring (paint) game, memoised on canonical states."""

    def __init__(self, limits: Limits = DEFAULT):
        self.limits = limits
        self.memo: dict = {}

    def wins(self, G: Graph, f) -> bool:
        f = as_degree_function(G, f)
        if G.n > self.limits.online_vertices:
            raise CapExceeded("paint game order", "online_vertices", G.n, self.limits.online_vertices)
        return self._solve(G, f)

    def _solve(self, G: Graph, f: tuple[int, ...]) -> bool:
        if G.n == 0:
            return True
        if any(x < 1 for x in f):
            return False
        G, f = _reduce(G, f)
        if G.n == 0:
            return True
        parts = _split(G, f)
        if len(parts) > 1:
            return all(self._solve(g, h) for g, h in parts)
        key = canonical_key(G, f)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        ans = self._connected(G, f)
        self.memo[key] = ans
        return ans

    def _connected(self, G: Graph, f: tuple[int, ...]) -> bool:
        n = G.n
        ones = sum(1 << v for v in range(n) if f[v] == 1)
        for S in range(1, 1 << n):
            forced = S & ones
            if any(G.adj[v] & forced for v in bits(forced)):
                return False
            if not any(self._after(G, f, S, I) for I in _maximal_independent(G, S, forced)):
                return False
        return True

    def _after(self, G: Graph, f: tuple[int, ...], S: int, I: int) -> bool:
        keep = [v for v in range(G.n) if not I >> v & 1]
        g = tuple(f[v] - (S >> v & 1) for v in keep)
        return self._solve(G.induced(keep), g)


def _maximal_independent(G: Graph, S: int, base: int) -> Iterator[int]:
    """Maximal independent subsets of G[S] containing the independent set ``base``."""
    def blocked(I: int) -> int:
        m = I
        for v in bits(I):
            m |= G.adj[v]
        return m

    def rec(I: int, cand: int, excluded: int):
        if not cand:
            # maximal iff no excluded vertex could still be added
            if not (excluded & ~blocked(I)):
                yield I
            return
        low = cand & -cand
        v = low.bit_length() - 1
        yield from rec(I | low, cand & ~low & ~G.adj[v], excluded)
        yield from rec(I, cand & ~low, excluded | low)

    yield from rec(base, S & ~blocked(base), 0)


def is_online_f_choosable(G: Graph, f, limits: Limits = DEFAULT) -> bool:
    return PaintGame(limits).wins(G, f)


def compose_online_cut(G: Graph, H, f, limits: Limits = DEFAULT) -> bool:
    """Online choosability of G - H with f and of G[H] with f_H = f + d_H - d_G."""
    f = as_degree_function(G, f)
    hs = sorted(set(H))
    hset = set(hs)
    rest = [v for v in range(G.n) if v not in hset]
    gh = G.induced(hs)
    f_h = tuple(f[v] + gh.degrees[i] - G.degrees[v] for i, v in enumerate(hs))
    if any(x < 1 for x in f_h):
        return False
    game = PaintGame(limits)
    return game.wins(G.induced(rest), tuple(f[v] for v in rest)) and game.wins(gh, f_h)
