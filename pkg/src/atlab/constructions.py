"""Certificate-producing constructions: d_0 orientations, compositions and extensions."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import HypothesisError, InvariantViolation
from .graph import Graph, Multigraph, bits, mask_of
from .graph6 import parse_graph6, to_graph6
from .limits import DEFAULT, Limits
from .orientation import ATCertificate, Orientation, certify as _certify_capped
from .structure import block_decomposition, find_even_cycle_one_chord, in_T_k, w_k_vertices


def certify(D: Orientation, f, limits: Limits = DEFAULT) -> ATCertificate:
    # constructed orientations are self-checked whatever their size
    lifted = limits.replace(eulerian_edges=max(limits.eulerian_edges, len(D.arcs)))
    return _certify_capped(D, f, lifted)


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _from_arc_dict(G: Graph, arcs: Mapping[tuple[int, int], tuple[int, int]]) -> Orientation:
    return Orientation(G, tuple(arcs[e] for e in G.edges))


def _lift(cert: ATCertificate, labels: Sequence[int], into: dict) -> None:
    """Copy the arcs of a certificate on an induced subgraph back to parent labels."""
    for t, h in cert.orientation.arcs:
        a, b = labels[t], labels[h]
        into[_key(a, b)] = (a, b)


def _bfs_order(G: Graph, sources: Sequence[int], within: int) -> list[int]:
    """Sources first, then breadth-first over G[within], smallest neighbour first."""
    order = list(sources)
    seen = mask_of(sources)
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        for w in bits(G.adj[v] & within & ~seen):
            seen |= 1 << w
            order.append(w)
            queue.append(w)
    return order


# -- d_0 orientations and compositions ---------------------------------------

def d0_orientation(G: Graph, limits: Limits = DEFAULT) -> ATCertificate:
    """Orientation with d+(v) < d(v) and (EE, EO) in {2,3} x {0,1} for non-Gallai G.

    An induced even cycle with at most one chord is oriented cyclically (the
    chord from its earlier to its later cycle position); every other edge goes
    from earlier to later in a breadth-first order rooted at the cycle.
    """
    if not G.is_connected():
        raise HypothesisError("connected", "d_0 orientation needs a connected graph")
    hit = find_even_cycle_one_chord(G)
    if hit is None:
        raise HypothesisError("not d_0-AT", "the graph is a Gallai tree")
    cycle, chord = hit
    arcs: dict = {}
    L = len(cycle)
    for i in range(L):
        a, b = cycle[i], cycle[(i + 1) % L]
        arcs[_key(a, b)] = (a, b)
    if chord is not None:
        pos = {v: i for i, v in enumerate(cycle)}
        u, v = chord
        arcs[_key(u, v)] = (u, v) if pos[u] < pos[v] else (v, u)
    rank = {v: i for i, v in enumerate(_bfs_order(G, list(cycle), (1 << G.n) - 1))}
    for u, v in G.edges:
        if (u, v) not in arcs:
            arcs[(u, v)] = (u, v) if rank[u] < rank[v] else (v, u)
    return certify(_from_arc_dict(G, arcs), G.degrees, limits)


def compose_at_cut_vertex(G: Graph, A: Iterable[int], B: Iterable[int],
                          limits: Limits = DEFAULT) -> ATCertificate:
    """f(x) = d(x) - 1 at the shared vertex x and f = d elsewhere, from two d_0 orientations."""
    A, B = frozenset(A), frozenset(B)
    if A | B != frozenset(range(G.n)):
        raise HypothesisError("separation", "A and B must cover V(G)")
    shared = A & B
    if len(shared) != 1:
        raise HypothesisError("separation", f"A and B share {len(shared)} vertices, need exactly 1")
    (x,) = shared
    ma, mb = mask_of(A - shared), mask_of(B - shared)
    for v in bits(ma):
        if G.adj[v] & mb:
            raise HypothesisError("separation", f"edge between the sides at vertex {v}")
    arcs: dict = {}
    for side in (A, B):
        labels = sorted(side)
        sub = G.induced(labels)
        if not sub.is_connected():
            raise HypothesisError("connected", f"side {labels} is disconnected")
        _lift(d0_orientation(sub, limits), labels, arcs)
    f = list(G.degrees)
    f[x] -= 1
    return certify(_from_arc_dict(G, arcs), f, limits)


def compose_at_split(G: Graph, H: Iterable[int], cert_h: ATCertificate, cert_rest: ATCertificate,
                     f: Sequence[int] | None = None, limits: Limits = DEFAULT) -> ATCertificate:
    """Join a certificate for G[H] and one for G - H; crossing edges point out of H.

    The result certifies f with f(v) = f_H(v) + d_G(v) - d_H(v) on H and the
    rest's degree function elsewhere. If ``f`` is supplied, each part must
    certify at most what ``f`` allows there.
    """
    hs = sorted(set(H))
    rest = [v for v in range(G.n) if v not in set(hs)]
    if not hs or not rest:
        raise HypothesisError("split", "H and G - H must both be nonempty")
    gh, gr = G.induced(hs), G.induced(rest)
    if cert_h.graph != gh:
        raise HypothesisError("split", "certificate for H is not on G[H]")
    if cert_rest.graph != gr:
        raise HypothesisError("split", "certificate for the rest is not on G - H")
    derived = [0] * G.n
    for i, v in enumerate(hs):
        derived[v] = cert_h.f[i] + G.degrees[v] - gh.degrees[i]
    for i, v in enumerate(rest):
        derived[v] = cert_rest.f[i]
    if f is not None:
        if len(f) != G.n:
            raise HypothesisError("degree function", "length differs from |V(G)|")
        for v in range(G.n):
            if derived[v] > f[v]:
                raise HypothesisError(
                    "degree function",
                    f"vertex {v}: parts need {derived[v]}, f gives {f[v]}", v)
    arcs: dict = {}
    _lift(cert_h, hs, arcs)
    _lift(cert_rest, rest, arcs)
    hmask = mask_of(hs)
    for u, v in G.edges:
        if (hmask >> u & 1) != (hmask >> v & 1):
            arcs[(u, v)] = (u, v) if hmask >> u & 1 else (v, u)
    return certify(_from_arc_dict(G, arcs), tuple(f) if f is not None else derived, limits)


# -- type-two extension ------------------------------------------------------

@dataclass(frozen=True)
class ExtensionFrame:
    """Multigraph G, degree function f, edge ids F into ``G.edges`` and vertex set Y."""

    G: Multigraph
    f: tuple[int, ...]
    F: frozenset[int]
    Y: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(x) for x in self.f))
        object.__setattr__(self, "F", frozenset(self.F))
        object.__setattr__(self, "Y", frozenset(self.Y))
        if len(self.f) != self.G.n:
            raise ValueError("f must have one value per vertex")
        if any(not 0 <= e < self.G.m for e in self.F):
            raise ValueError("F refers to a missing edge")
        if any(not 0 <= y < self.G.n for y in self.Y):
            raise ValueError("Y contains a missing vertex")

    def to_dict(self) -> dict:
        d = {"f": list(self.f), "F": [list(self.G.edges[e]) for e in sorted(self.F)],
             "Y": mask_of(self.Y), "n": self.G.n}
        if self.G.is_simple():
            d["graph6"] = to_graph6(self.G.underlying())
        else:
            d["multigraph_edges"] = [list(e) for e in self.G.edges]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ExtensionFrame":
        if "graph6" in d:
            G = parse_graph6(d["graph6"]).as_multigraph()
        else:
            G = Multigraph(d["n"], tuple(tuple(e) for e in d["multigraph_edges"]))
        free: dict = {}
        for i, e in enumerate(G.edges):
            free.setdefault(e, []).append(i)
        F = []
        for u, v in d["F"]:
            ids = free.get(_key(u, v))
            if not ids:
                raise ValueError(f"F edge {u}{v} is not an unused edge of G")
            F.append(ids.pop(0))
        return cls(G, tuple(d["f"]), frozenset(F), frozenset(bits(int(d["Y"]))))

    @classmethod
    def from_json(cls, text: str) -> "ExtensionFrame":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TwinWitness:
    """How one component T of G - Y satisfies condition (4)."""

    T: tuple[int, ...]
    case: str            # "4a" or "4b"
    x1: int
    x2: int
    y1: int
    e1: int              # edge id of x1y1 in F
    y2: int | None = None
    e2: int | None = None


def _y_edges(G: Multigraph, Y: frozenset) -> dict[int, list[tuple[int, int]]]:
    """For each non-Y vertex, its edges into Y as (y, edge id)."""
    out: dict[int, list[tuple[int, int]]] = {}
    for i, (u, v) in enumerate(G.edges):
        if (u in Y) != (v in Y):
            x, y = (v, u) if u in Y else (u, v)
            out.setdefault(x, []).append((y, i))
    return out


def _twin_witness(G: Multigraph, T: int, Y: frozenset, F: frozenset, yedges) -> TwinWitness | None:
    adj = G.adj
    verts = bits(T)
    closed = {x: (adj[x] & T) | 1 << x for x in verts}
    pairs = []
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if closed[a] != closed[b]:
                continue
            rest = T & ~(1 << a | 1 << b)
            if rest and len(_components(adj, rest)) != 1:
                continue
            pairs.append((a, b))

    def single_f_edge(x):
        ys = yedges.get(x, [])
        if len({y for y, _ in ys}) != 1:
            return None
        y, e = ys[0]
        return (y, e) if e in F else None

    tuple_t = tuple(verts)
    for a, b in pairs:
        ea, eb = single_f_edge(a), single_f_edge(b)
        if ea and eb and ea[0] != eb[0]:
            return TwinWitness(tuple_t, "4a", a, b, ea[0], ea[1], eb[0], eb[1])
    for a, b in pairs:
        for x1, x2 in ((a, b), (b, a)):
            e1 = single_f_edge(x1)
            if e1 and not yedges.get(x2):
                return TwinWitness(tuple_t, "4b", x1, x2, e1[0], e1[1])
    return None


def _components(adj: Sequence[int], within: int) -> list[int]:
    comps = []
    rest = within
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def check_type_two(frame: ExtensionFrame) -> list[TwinWitness]:
    """Validate hypotheses (1)-(4); returns one witness per component of G - Y."""
    G, f, F, Y = frame.G, frame.f, frame.F, frame.Y
    seen: dict = {}
    for u, v in G.edges:
        seen[(u, v)] = seen.get((u, v), 0) + 1
    for (u, v), mult in sorted(seen.items()):
        if mult > 1 and not (u in Y and v in Y):
            raise HypothesisError("(1)", f"parallel edges {u}{v} outside G[Y]", (u, v))
    for v in range(G.n):
        if v not in Y and f[v] < G.degrees[v]:
            raise HypothesisError("(2)", f"vertex {v}: f={f[v]} < d={G.degrees[v]}", v)
    d_in_y = [0] * G.n
    d_f = [0] * G.n
    for i, (u, v) in enumerate(G.edges):
        if u in Y and v in Y:
            d_in_y[u] += 1
            d_in_y[v] += 1
        if i in F:
            d_f[u] += 1
            d_f[v] += 1
    for y in sorted(Y):
        if f[y] < d_in_y[y] + d_f[y] + 1:
            raise HypothesisError(
                "(3)", f"vertex {y}: f={f[y]} < d_G[Y]={d_in_y[y]} + d_F={d_f[y]} + 1", y)
    ymask = mask_of(Y)
    yedges = _y_edges(G, Y)
    out = []
    for T in _components(G.adj, ((1 << G.n) - 1) & ~ymask):
        w = _twin_witness(G, T, Y, F, yedges)
        if w is None:
            raise HypothesisError("(4)", f"at T={bits(T)}: no twin pair with a valid F pattern", bits(T))
        out.append(w)
    return out


def extend_type_two(frame: ExtensionFrame, limits: Limits = DEFAULT) -> ATCertificate:
    """Build an f-AT orientation of a frame satisfying hypotheses (1)-(4).

    Components of G - Y are excised one at a time (smallest vertex first):
    case (4a) replaces T by a synthetic edge y1y2, case (4b) lowers f(y1).
    The remaining G[Y] gets the acyclic low-to-high orientation, and the
    excisions are unwound in reverse, orienting each T from its twin pair
    outward with y1 -> x1 the only arc entering T.
    """
    witnesses = check_type_two(frame)
    G = frame.G
    m = G.m
    # working edge table: id -> (u, v); synthetic ids start at m
    edges: dict[int, tuple[int, int]] = dict(enumerate(G.edges))
    steps = []
    nxt_id = m
    for w in witnesses:
        tmask = mask_of(w.T)
        for i in [i for i, (u, v) in edges.items() if tmask >> u & 1 or tmask >> v & 1]:
            del edges[i]
        synthetic = None
        if w.case == "4a":
            synthetic = nxt_id
            edges[synthetic] = _key(w.y1, w.y2)
            nxt_id += 1
        steps.append((w, synthetic))
    arcs: dict[int, tuple[int, int]] = {i: e for i, e in edges.items()}
    for w, synthetic in reversed(steps):
        x1, x2, y1, e1, y2, e2 = w.x1, w.x2, w.y1, w.e1, w.y2, w.e2
        if synthetic is not None:
            if arcs.pop(synthetic) == (y2, y1):
                x1, x2, y1, y2, e1, e2 = x2, x1, y2, y1, e2, e1
        tmask = mask_of(w.T)
        order = _bfs_order(G, [x1, x2], tmask)
        rank = {v: i for i, v in enumerate(order)}
        for i, (u, v) in enumerate(G.edges):
            inu, inv = tmask >> u & 1, tmask >> v & 1
            if not (inu or inv):
                continue
            if i == e1:
                arcs[i] = (y1, x1)
            elif inu and inv:
                arcs[i] = (u, v) if rank[u] < rank[v] else (v, u)
            else:
                arcs[i] = (u, v) if inu else (v, u)
        if e2 is not None and arcs[e2] != (x2, y2):
            raise InvariantViolation("twin edge x2y2 not directed into Y")
    D = Orientation(G, tuple(arcs[i] for i in range(m)))
    return certify(D, frame.f, limits)


# -- type-one extensions -----------------------------------------------------

def _components_without(G: Graph, x: int) -> list[int]:
    return G.component_masks(((1 << G.n) - 1) & ~(1 << x))


def _single_failure(G: Graph, x: int, k: int, r: int) -> str | None:
    if r < 0 or k < r + 4:
        return f"needs r >= 0 and k >= r + 4 (k={k}, r={r})"
    if G.n == k and G.is_complete():
        return "G = K_k"
    comps = _components_without(G, x)
    if len(comps) != 1:
        return f"G - x has {len(comps)} components"
    rest = [v for v in range(G.n) if v != x]
    H = G.induced(rest)
    if not in_T_k(H, k):
        return "G - x is not in T_k"
    if G.degrees[x] < r + 2:
        return f"d(x)={G.degrees[x]} < r + 2"
    wk = w_k_vertices(H, k)
    if not any(rest[i] in G.neighbors(x) for i in wk):
        return "x has no neighbour in W^k(G - x)"
    for v in rest:
        if G.degrees[v] > k - 1:
            return f"d({v})={G.degrees[v]} > k - 1"
    return None


def _type_one_single(G: Graph, x: int, k: int, r: int, limits: Limits) -> ATCertificate:
    # peel non-separating vertices of G - x while the hypotheses survive,
    # then close with a type-two frame F = {xz}, Y = {x}
    alive = (1 << G.n) - 1
    peeled: list[int] = []
    while True:
        labels = bits(alive)
        sub = G.induced(labels)
        xs = labels.index(x)
        bt = block_decomposition(sub.remove([xs]))
        others = [v for v in labels if v != x]
        q = sorted(others[i] for i in bt.non_separating)
        moved = False
        for y in q:
            nxt = alive & ~(1 << y)
            nl = bits(nxt)
            if _single_failure(G.induced(nl), nl.index(x), k, r) is None:
                peeled.append(y)
                alive = nxt
                moved = True
                break
        if moved:
            continue
        f_sub = list(sub.degrees)
        f_sub[xs] -= r
        msub = sub.as_multigraph()
        cert = None
        for z in sub.neighbors(xs):
            eid = msub.edges.index(_key(xs, z))
            try:
                cert = extend_type_two(ExtensionFrame(msub, tuple(f_sub), frozenset([eid]), frozenset([xs])),
                                       limits)
                break
            except HypothesisError:
                continue
        if cert is None:
            raise InvariantViolation(f"single-component extension stalled on vertices {labels}")
        break
    arcs: dict = {}
    _lift(cert, labels, arcs)
    when = {y: i for i, y in enumerate(peeled)}
    for u, v in G.edges:
        if (u, v) in arcs:
            continue
        tu, tv = when.get(u, len(peeled)), when.get(v, len(peeled))
        arcs[(u, v)] = (v, u) if tu < tv else (u, v)
    f = list(G.degrees)
    f[x] -= r
    return certify(_from_arc_dict(G, arcs), f, limits)


def _double_failure(G: Graph, x: int, k: int) -> str | None:
    if k < 4:
        return "needs k >= 4"
    comps = _components_without(G, x)
    if len(comps) != 2:
        return f"G - x has {len(comps)} components, need 2"
    nx = G.adj[x]
    for c in comps:
        H = G.induced(bits(c))
        if not in_T_k(H, k):
            return f"component {bits(c)} is not in T_k"
        if bin(nx & c).count("1") != 2:
            return f"x has {bin(nx & c).count('1')} neighbours in {bits(c)}, need 2"
        labels = bits(c)
        if not any(nx >> labels[i] & 1 for i in w_k_vertices(H, k)):
            return f"x has no neighbour in W^k of {labels}"
    return None


def _general_failure(G: Graph, x: int, k: int) -> str | None:
    if k < 5:
        return "needs k >= 5"
    if G.contains_clique(k):
        return "K_k is a subgraph"
    comps = _components_without(G, x)
    nx = G.adj[x]
    for c in comps:
        labels = bits(c)
        H = G.induced(labels)
        if not in_T_k(H, k):
            return f"component {labels} is not in T_k"
        if not any(nx >> labels[i] & 1 for i in w_k_vertices(H, k)):
            return f"x has no neighbour in W^k of {labels}"
    for v in range(G.n):
        if v != x and G.degrees[v] > k - 1:
            return f"d({v})={G.degrees[v]} > k - 1"
    if G.degrees[x] < len(comps) + 2:
        return f"d(x)={G.degrees[x]} < t + 2 with t={len(comps)}"
    return None


def _type_one_general(G: Graph, x: int, k: int, limits: Limits) -> ATCertificate:
    comps = _components_without(G, x)
    nx = G.adj[x]
    counts = [bin(nx & c).count("1") for c in comps]
    core: list[int]
    triple = [i for i, c in enumerate(counts) if c >= 3]
    if triple:
        core = [triple[0]]
    else:
        pairs = [i for i, c in enumerate(counts) if c == 2]
        core = pairs[:2]
    core_mask = 1 << x
    for i in core:
        core_mask |= comps[i]
    labels = bits(core_mask)
    sub = G.induced(labels)
    xs = labels.index(x)
    if len(core) == 1:
        cert = _type_one_single(sub, xs, k, 1, limits)
    else:
        side = [labels.index(v) for v in bits(comps[core[0]])]
        cert = compose_at_cut_vertex(sub, [xs] + side,
                                     [i for i in range(sub.n) if i not in set(side)], limits)
    arcs: dict = {}
    _lift(cert, labels, arcs)
    for i, c in enumerate(comps):
        if i in core:
            continue
        z = bits(nx & c)[0]
        rank = {v: j for j, v in enumerate(_bfs_order(G, [z], c))}
        for u, v in G.edges:
            if c >> u & 1 and c >> v & 1:
                arcs[(u, v)] = (u, v) if rank[u] < rank[v] else (v, u)
            elif (u == x and c >> v & 1) or (v == x and c >> u & 1):
                arcs[(u, v)] = (x, v if u == x else u)
    f = list(G.degrees)
    f[x] -= 1
    return certify(_from_arc_dict(G, arcs), f, limits)


def extend_type_one(G: Graph, x: int, k: int, r: int = 1, limits: Limits = DEFAULT) -> ATCertificate:
    """Certificate for f(x) = d(x) - r and f = d elsewhere, for a high vertex x over Gallai trees.

    Dispatches to the single-component, two-component or general form; the
    latter two need r = 1.
    """
    failures = []
    why = _single_failure(G, x, k, r)
    if why is None:
        return _type_one_single(G, x, k, r, limits)
    failures.append(f"single component: {why}")
    why = _double_failure(G, x, k) if r == 1 else "needs r = 1"
    if why is None:
        comps = _components_without(G, x)
        return compose_at_cut_vertex(G, [x] + bits(comps[0]), [x] + bits(comps[1]), limits)
    failures.append(f"two components: {why}")
    why = _general_failure(G, x, k) if r == 1 else "needs r = 1"
    if why is None:
        return _type_one_general(G, x, k, limits)
    failures.append(f"general: {why}")
    raise HypothesisError("type-one hypotheses", "; ".join(failures), failures)


# -- orientations with in-degree demands ---------------------------------------

@dataclass(frozen=True)
class IncidencePreference:
    """``pref[v]`` is the set of edge ids (into ``base.edges``) preferred at v."""

    base: Multigraph
    pref: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pref", tuple(frozenset(p) for p in self.pref))
        if len(self.pref) != self.base.n:
            raise ValueError("one preference set per vertex")
        for v, p in enumerate(self.pref):
            for e in p:
                if v not in self.base.edges[e]:
                    raise ValueError(f"edge {e} preferred at {v} is not incident to it")

    def d(self, v: int) -> int:
        return len(self.pref[v])

    def good_edges(self, within: Iterable[int] | None = None) -> list[int]:
        keep = None if within is None else set(within)
        return [i for i, (u, v) in enumerate(self.base.edges)
                if i in self.pref[u] and i in self.pref[v]
                and (keep is None or (u in keep and v in keep))]

    def in_degree(self, D: Orientation, v: int) -> int:
        return sum(1 for i, (_, h) in enumerate(D.arcs) if h == v and i in self.pref[v])


@dataclass(frozen=True)
class WitnessSubgraph:
    """Vertex set X of G[S] with sum d(v,A) - |A(G[X])| < sum g(v)."""

    vertices: frozenset[int]
    supply: int
    demand: int


def witness_slack(A: IncidencePreference, X: Iterable[int], g: Mapping[int, int]) -> tuple[int, int]:
    X = set(X)
    supply = sum(A.d(v) for v in X) - len(A.good_edges(X))
    return supply, sum(g[v] for v in X)


def solve_in_orientation(A: IncidencePreference, S: Iterable[int], g) -> Orientation | WitnessSubgraph:
    """An orientation with d^-(v, A) >= g(v) on S, or a subgraph certifying none exists.

    Starts from the low-to-high orientation and repeatedly reverses a
    preference path out of the smallest deficient vertex, found by BFS
    (smallest vertex, then smallest edge id, first). A path may end on an
    arc its head does not prefer (reversing it costs the head nothing, even
    if the head is already on the path), or at a vertex that can afford to
    lose its last in-arc.
    """
    G = A.base
    S = frozenset(S)
    gmap = {v: int(g[v]) for v in S}
    arcs = [list(e) for e in G.edges]
    out_pref: list[list[int]] = [[] for _ in range(G.n)]
    for i, (u, v) in enumerate(G.edges):
        for w in (u, v):
            if i in A.pref[w]:
                out_pref[w].append(i)

    indeg = [0] * G.n
    for i, (t, h) in enumerate(arcs):
        if i in A.pref[h]:
            indeg[h] += 1

    def surplus(v: int) -> bool:
        return v not in S or indeg[v] > gmap[v]

    while True:
        deficient = [v for v in sorted(S) if indeg[v] < gmap[v]]
        if not deficient:
            return Orientation(G, tuple(tuple(a) for a in arcs))
        x0 = deficient[0]
        parent: dict[int, tuple[int, int]] = {x0: (-1, -1)}
        queue = deque([x0])
        end = None
        while queue and end is None:
            v = queue.popleft()
            for e in out_pref[v]:
                t, h = arcs[e]
                if t != v:
                    continue
                if e not in A.pref[h]:
                    end = (h, e, v)
                    break
                if h in parent:
                    continue
                if surplus(h):
                    end = (h, e, v)
                    break
                parent[h] = (v, e)
                queue.append(h)
        if end is None:
            X = frozenset(parent)
            supply, demand = witness_slack(A, X, {v: gmap.get(v, 0) for v in X})
            if not X <= S or supply >= demand:
                raise InvariantViolation("stalled search produced no violated inequality")
            return WitnessSubgraph(X, supply, demand)
        h, e, v = end
        path = [e]
        while v != x0:
            v, e2 = parent[v]
            path.append(e2)
        for e in path:
            t, hh = arcs[e]
            if e in A.pref[hh]:
                indeg[hh] -= 1
            arcs[e] = [hh, t]
            if e in A.pref[t]:
                indeg[t] += 1
