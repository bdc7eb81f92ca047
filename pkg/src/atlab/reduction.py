"""Multiple-high-vertex reductions and the brute-force AT-reducibility search."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .constructions import (ExtensionFrame, IncidencePreference, WitnessSubgraph, extend_type_one,
                            extend_type_two, solve_in_orientation)
from .errors import CapExceeded, HypothesisError, InvariantViolation
from .graph import Graph, Multigraph, bits, mask_of
from .graph6 import to_graph6
from .limits import DEFAULT, Limits
from .orientation import ATCertificate, is_f_at
from .structure import block_decomposition, in_T_k, w_k_vertices

SYMMETRIC = "symmetric"   # k >= 7, delta(B) >= 3, types {1, 2a, 2b, 2c, 3}
LOPSIDED = "lopsided"     # k >= 5, d_B(y) >= 4 and d_B(T) >= 2, types {1, 2a, 2b, 3}
VARIANTS = (SYMMETRIC, LOPSIDED)

TYPE_SIZE = {"1": 1, "2a": 2, "2b": 2, "2c": 2, "3": 3}


@dataclass(frozen=True)
class AuxComponent:
    index: int
    vertices: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]      # blocks of T in G labels
    cut_vertices: frozenset[int]
    wk: frozenset[int]

    def endblocks(self) -> list[tuple[int, ...]]:
        return [b for b in self.blocks if sum(1 for v in b if v in self.cut_vertices) <= 1]

    def interior(self, block) -> tuple[int, ...]:
        """Non-separating vertices of T inside ``block``."""
        return tuple(v for v in block if v not in self.cut_vertices)


@dataclass(frozen=True)
class AuxBipartite:
    """B_k(V(G) - Y, Y) with multiplicities ||y, T|| and W^k witnesses."""

    G: Graph
    Y: frozenset[int]
    k: int
    components: tuple[AuxComponent, ...]
    edges: tuple[tuple[int, int], ...]            # (y, component index), sorted
    multiplicity: dict = field(compare=False)     # (y, t) -> ||y, T||_G for every y, T pair with edges
    witness: dict = field(compare=False)          # (y, t) -> N(y) & W^k(T), B-edges only

    def degree_y(self, y: int) -> int:
        return sum(1 for a, _ in self.edges if a == y)

    def degree_t(self, t: int) -> int:
        return sum(1 for _, b in self.edges if b == t)

    def g_edges(self, y: int, t: int) -> list[tuple[int, int]]:
        """G-edges between y and component t as (x, y), x ascending."""
        return [(x, y) for x in self.components[t].vertices if self.G.adj[y] >> x & 1]


def build_aux_bipartite(G: Graph, Y: Iterable[int], k: int) -> AuxBipartite:
    Y = frozenset(Y)
    if k < 4:
        raise HypothesisError("k >= 4", f"k={k}")
    if Y >= frozenset(range(G.n)):
        raise HypothesisError("Y is a proper subset", "G - Y has no components")
    ymask = mask_of(Y)
    comps = []
    for i, cm in enumerate(G.component_masks(((1 << G.n) - 1) & ~ymask)):
        labels = bits(cm)
        T = G.induced(labels)
        bt = block_decomposition(T)
        comps.append(AuxComponent(
            i, tuple(labels),
            tuple(tuple(labels[v] for v in b) for b in bt.blocks),
            frozenset(labels[v] for v in bt.cut_vertices),
            frozenset(labels[v] for v in w_k_vertices(T, k))))
    edges, mult, wit = [], {}, {}
    for y in sorted(Y):
        for c in comps:
            cm = mask_of(c.vertices)
            mu = bin(G.adj[y] & cm).count("1")
            if mu:
                mult[(y, c.index)] = mu
            w = frozenset(x for x in c.wk if G.adj[y] >> x & 1)
            if w:
                edges.append((y, c.index))
                wit[(y, c.index)] = w
    return AuxBipartite(G, Y, k, tuple(comps), tuple(edges), mult, wit)


# -- hypotheses --------------------------------------------------------------

def check_multiple_high(G: Graph, Y: Iterable[int], k: int, variant: str) -> AuxBipartite:
    """Check hypotheses (1)-(4) of the chosen variant and return B_k."""
    Y = frozenset(Y)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    floor = 7 if variant == SYMMETRIC else 5
    if k < floor:
        raise HypothesisError("k range", f"{variant} variant needs k >= {floor}, got {k}")
    if G.contains_clique(k):
        raise HypothesisError("(1)", f"K_{k} is a subgraph")
    aux = build_aux_bipartite(G, Y, k)
    for c in aux.components:
        if not in_T_k(G.induced(c.vertices), k):
            raise HypothesisError("(2)", f"component {list(c.vertices)} is not in T_{k}", c.vertices)
    for v in range(G.n):
        if v not in Y and G.degrees[v] > k - 1:
            raise HypothesisError("(3)", f"d({v})={G.degrees[v]} > k - 1", v)
    _check_degree_floor(aux, variant)
    return aux


def _check_degree_floor(aux: AuxBipartite, variant: str) -> None:
    ymin, tmin = (3, 3) if variant == SYMMETRIC else (4, 2)
    for y in sorted(aux.Y):
        if aux.degree_y(y) < ymin:
            raise HypothesisError("(4)", f"d_B({y})={aux.degree_y(y)} < {ymin}", y)
    for c in aux.components:
        if aux.degree_t(c.index) < tmin:
            raise HypothesisError("(4)", f"d_B(T{c.index})={aux.degree_t(c.index)} < {tmin}", c.vertices)


# -- component typing --------------------------------------------------------

@dataclass(frozen=True)
class ComponentProfile:
    index: int
    type: str
    u: tuple[tuple[int, int], ...]               # G-edges (x, y), x in T, y in Y
    endblocks: tuple[tuple[int, ...], ...]       # ordered B_1, ..., B_t
    saturated: tuple[bool, ...]
    internal_block: tuple[int, ...] | None = None
    heavy_count: int = 0                         # h'(T)

    @property
    def size(self) -> int:
        return TYPE_SIZE[self.type]

    def to_dict(self) -> dict:
        return {"index": self.index, "type": self.type, "u": [list(e) for e in self.u],
                "endblocks": [list(b) for b in self.endblocks], "saturated": list(self.saturated),
                "internal_block": list(self.internal_block) if self.internal_block else None,
                "heavy_count": self.heavy_count}


def _y_edges(G: Graph, Y: frozenset, verts) -> list[tuple[int, int]]:
    return sorted((x, y) for x in verts for y in bits(G.adj[x]) if y in Y)


def _distinct_ends(edges: list[tuple[int, int]], count: int) -> list[tuple[int, int]] | None:
    picked, ends = [], set()
    for x, y in edges:
        if y not in ends:
            picked.append((x, y))
            ends.add(y)
            if len(picked) == count:
                return picked
    return None


def classify_components(aux: AuxBipartite, variant: str) -> list[ComponentProfile]:
    """Assign type(T) and u(T) by the case tree of the variant in force."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    G, Y, k = aux.G, aux.Y, aux.k
    _check_degree_floor(aux, variant)
    heavy = {e for e in aux.edges if aux.multiplicity.get(e) == 2}
    out = []
    for c in aux.components:
        ends = c.endblocks()
        for b in ends:
            if not (len(b) == k - 1 and G.is_clique(b)):
                raise HypothesisError("endblocks are K_{k-1}", f"block {list(b)} of T{c.index}", b)
            if not _y_edges(G, Y, c.interior(b)):
                raise HypothesisError("endblocks reach Y", f"block {list(b)} of T{c.index} has no edge to Y", b)

        def saturated(b) -> bool:
            return all(G.adj[v] & mask_of(Y) for v in c.interior(b))

        def xy(b, avoid=frozenset()):
            cand = [e for e in _y_edges(G, Y, c.interior(b)) if e[1] not in avoid]
            return cand[0] if cand else None

        ends.sort(key=lambda b: (not saturated(b), b[0]))
        sat = tuple(saturated(b) for b in ends)
        t = len(ends)
        internal = None
        if sat[0]:
            if t == 1:
                typ, u = "2a", _y_edges(G, Y, c.vertices)
            elif sat[1]:
                typ, u = "3", _y_edges(G, Y, c.interior(ends[0]) + c.interior(ends[1]))
            else:
                typ, u = "2b", _y_edges(G, Y, c.interior(ends[0])) + [xy(ends[1])]
        elif variant == LOPSIDED:
            if t == 1:
                u = _distinct_ends(_y_edges(G, Y, c.vertices), 2)
                if u is None:
                    raise HypothesisError("(4)", f"T{c.index} has fewer than 2 distinct Y-neighbours")
                typ = "1"
            else:
                typ, u = "1", [xy(ends[0]), xy(ends[1])]
        else:
            if t == 1:
                u = _distinct_ends(_y_edges(G, Y, c.vertices), 3)
                if u is None:
                    raise HypothesisError("(4)", f"T{c.index} has fewer than 3 distinct Y-neighbours")
                typ = "1"
            elif t == 2:
                pair = None
                for i in (0, 1):
                    two = _distinct_ends(_y_edges(G, Y, c.interior(ends[i])), 2)
                    if two is not None:
                        pair = (i, two)
                        break
                if pair is not None:
                    i, two = pair
                    typ, u = "1", two + [xy(ends[1 - i])]
                else:
                    e1, e2 = xy(ends[0]), xy(ends[1])
                    avoid = frozenset((e1[1], e2[1]))
                    interior_blocks = sorted((b for b in c.blocks if b not in ends), key=lambda b: b[0])
                    b0 = next((b for b in interior_blocks
                               if len(b) == k - 1 and G.is_clique(b) and xy(b, avoid) is not None), None)
                    if b0 is None:
                        raise InvariantViolation(
                            f"T{c.index}: no internal K_{k - 1} block with an edge to Y - {{y_B1, y_B2}}")
                    internal = b0
                    if saturated(b0):
                        typ, u = "2c", [e1, e2] + _y_edges(G, Y, c.interior(b0))
                    else:
                        typ, u = "1", [e1, e2, xy(b0, avoid)]
            else:
                typ, u = "1", [xy(b) for b in ends[:3]]
        u = tuple(sorted(set(u)))
        touched = {(y, c.index) for _, y in u}
        h_prime = sum(1 for e in heavy if e in touched)
        out.append(ComponentProfile(c.index, typ, u, tuple(ends), sat, internal, h_prime))
    return out


def u_property_holds(aux: AuxBipartite, profile: ComponentProfile) -> bool:
    """Every independent type(T)-subset of u(T) hits an unsaturated block or hits one block twice."""
    G, Y = aux.G, aux.Y
    c = aux.components[profile.index]
    block_of = {}
    for b in c.blocks:
        for v in c.interior(b):
            block_of[v] = b
    sat = {b: all(G.adj[v] & mask_of(Y) for v in c.interior(b)) for b in c.blocks}
    for sub in combinations(profile.u, profile.size):
        xs = [x for x, _ in sub]
        ys = [y for _, y in sub]
        if len(set(xs)) < len(xs) or len(set(ys)) < len(ys):
            continue
        blocks = [block_of.get(x) for x in xs]
        if any(b is None or not sat[b] for b in blocks):
            continue
        if len(set(blocks)) < len(blocks):
            continue
        return False
    return True


# -- the reduction -----------------------------------------------------------

@dataclass
class ReductionReport:
    graph: Graph
    Y: frozenset[int]
    k: int
    variant: str
    vertices: tuple[int, ...] = ()
    certificate: ATCertificate | None = None
    shortcut: int | None = None
    trim_trace: list = field(default_factory=list)
    profiles: list = field(default_factory=list)
    b_orientation: list = field(default_factory=list)
    F: list = field(default_factory=list)
    eta_min: int | None = None
    eta_subsets: int = 0
    eta_anchor_ok: bool | None = None

    @property
    def subgraph(self) -> Graph:
        return self.graph.induced(self.vertices)

    def __iter__(self):
        # unpacks as (G', certificate)
        yield self.subgraph
        yield self.certificate

    def to_dict(self) -> dict:
        return {
            "graph6": to_graph6(self.graph), "Y": mask_of(self.Y), "k": self.k, "variant": self.variant,
            "vertices": list(self.vertices), "shortcut": self.shortcut,
            "trim_trace": [list(t) for t in self.trim_trace],
            "profiles": [p.to_dict() for p in self.profiles],
            "b_orientation": [list(a) for a in self.b_orientation],
            "F": [list(e) for e in self.F],
            "eta_min": self.eta_min, "eta_subsets": self.eta_subsets, "eta_anchor_ok": self.eta_anchor_ok,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def _shortcut_vertex(aux: AuxBipartite) -> int | None:
    for y in sorted(aux.Y):
        nbrs = [t for a, t in aux.edges if a == y]
        if any(aux.multiplicity[(y, t)] >= 3 for t in nbrs):
            return y
        if sum(1 for t in nbrs if aux.multiplicity[(y, t)] == 2) >= 2:
            return y
    return None


def _trim_target(aux: AuxBipartite) -> tuple[int, ...] | None:
    G, Y, k = aux.G, aux.Y, aux.k
    for c in aux.components:
        for b in sorted(c.endblocks(), key=lambda b: b[0]):
            good = len(b) == k - 1 and G.is_clique(b)
            if not good or not _y_edges(G, Y, c.interior(b)):
                return c.interior(b)
    return None


def _degree_signature(aux: AuxBipartite, labels: list[int]) -> tuple[dict, dict]:
    """d_B keyed by original labels: y -> degree, vertex set of T -> degree."""
    dy = {labels[y]: aux.degree_y(y) for y in aux.Y}
    dt = {tuple(labels[v] for v in c.vertices): aux.degree_t(c.index) for c in aux.components}
    return dy, dt


def _eta_audit(aux: AuxBipartite, profiles, A_sets, g, variant: str, limit: int):
    """min eta over all nonempty vertex subsets of B, and whether the accounting bound held."""
    nodes = [("y", y) for y in sorted(aux.Y)] + [("T", c.index) for c in aux.components]
    if len(nodes) > limit:
        return None, 0, None
    idx = {v: i for i, v in enumerate(nodes)}
    k = aux.k
    dA = [len(A_sets[v]) for v in nodes]
    good = [(idx[("y", y)], idx[("T", t)]) for y, t in aux.edges
            if (y, t) in A_sets[("y", y)] and (y, t) in A_sets[("T", t)]]
    gv = [g[v] for v in nodes]
    prof = {p.index: p for p in profiles}
    heavy = {e for e in aux.edges if aux.multiplicity.get(e) == 2}
    h = [0] * len(nodes)
    kind = [""] * len(nodes)
    hp = [0] * len(nodes)
    for v, i in idx.items():
        if v[0] == "y":
            h[i] = sum(1 for e in heavy if e[0] == v[1])
        else:
            p = prof[v[1]]
            light = p.size > p.heavy_count
            kind[i] = ("Q" if p.size == 1 else "P" if p.size == 2 else "R") if light else "heavy"
            hp[i] = p.heavy_count
    best, anchor_ok = None, True
    N = len(nodes)
    for mask in range(1, 1 << N):
        members = [i for i in range(N) if mask >> i & 1]
        eta = sum(dA[i] for i in members) - sum(1 for a, b in good if mask >> a & 1 and mask >> b & 1) \
            - sum(gv[i] for i in members)
        best = eta if best is None else min(best, eta)
        P = sum(1 for i in members if kind[i] == "P")
        R = sum(1 for i in members if kind[i] == "R")
        hY = sum(h[i] for i in members if nodes[i][0] == "y")
        hPR = sum(hp[i] for i in members if kind[i] in ("P", "R"))
        if variant == SYMMETRIC:
            ok = 6 * eta >= 2 * (k - 7) * P + (4 * k - 26) * R + 2 * hY + 2 * hPR
        else:
            ok = 2 * eta >= (k - 5) * P + 2 * (k - 5) * R + hY
        anchor_ok = anchor_ok and ok
    return best, (1 << N) - 1, anchor_ok


def multiple_high_reduction(G: Graph, Y: Iterable[int], k: int, variant: str,
                            limits: Limits = DEFAULT) -> ReductionReport:
    """Induced subgraph G' with an f-AT certificate, f = d_{G'} - 1 on Y and d_{G'} elsewhere."""
    Y = frozenset(Y)
    aux = check_multiple_high(G, Y, k, variant)
    report = ReductionReport(G, Y, k, variant)
    alive = (1 << G.n) - 1

    def lift_aux(mask: int) -> tuple[AuxBipartite, list[int]]:
        labels = bits(mask)
        sub = G.induced(labels)
        pos = {v: i for i, v in enumerate(labels)}
        return build_aux_bipartite(sub, [pos[y] for y in Y if mask >> y & 1], k), labels

    aux, labels = lift_aux(alive)
    while True:
        y = _shortcut_vertex(aux)
        if y is not None:
            keep = {y}
            for a, t in aux.edges:
                if a == y:
                    keep.update(aux.components[t].vertices)
            local = sorted(keep)
            sub = aux.G.induced(local)
            cert = extend_type_one(sub, local.index(y), k, 1, limits)
            report.shortcut = labels[y]
            report.vertices = tuple(labels[v] for v in local)
            report.certificate = cert
            _check_contract(report)
            return report
        target = _trim_target(aux)
        if target is None:
            break
        before = _degree_signature(aux, labels)
        removed = [labels[v] for v in target]
        report.trim_trace.append(tuple(removed))
        alive &= ~mask_of(removed)
        aux, labels = lift_aux(alive)
        _check_trim(before, _degree_signature(aux, labels), removed)

    profiles = classify_components(aux, variant)
    for p in profiles:
        if not u_property_holds(aux, p):
            raise InvariantViolation(f"u(T{p.index}) lacks the independent-subset property", p)
    heavy = {e for e in aux.edges if aux.multiplicity.get(e) == 2}
    prof = {p.index: p for p in profiles}
    light = {t for t, p in prof.items() if p.size > p.heavy_count}
    H_edges = {e for y, t in heavy for e in aux.g_edges(y, t)}

    g: dict = {}
    A_sets: dict = {}
    for y in sorted(aux.Y):
        g[("y", y)] = 2 - sum(1 for e in heavy if e[0] == y)
        A_sets[("y", y)] = {(a, t) for a, t in aux.edges if a == y and (a, t) not in heavy}
    for t, p in prof.items():
        node = ("T", t)
        if t in light:
            g[node] = p.size - p.heavy_count
            u = set(p.u)
            A_sets[node] = {(y, tt) for y, tt in aux.edges if tt == t
                            and any(e in u and e not in H_edges for e in aux.g_edges(y, t))}
        else:
            g[node] = 0
            A_sets[node] = set()

    eta_min, count, anchor = _eta_audit(aux, profiles, A_sets, g, variant, limits.eta_vertices)
    report.eta_min, report.eta_subsets, report.eta_anchor_ok = eta_min, count, anchor
    if eta_min is not None and eta_min < 0:
        raise InvariantViolation(f"eta = {eta_min} < 0 on some induced subgraph of B", report)

    # B as a multigraph: Y vertices first (ascending), then components
    ys = sorted(aux.Y)
    node_id = {("y", y): i for i, y in enumerate(ys)}
    for c in aux.components:
        node_id[("T", c.index)] = len(ys) + c.index
    bedges = [(node_id[("y", y)], node_id[("T", t)]) for y, t in aux.edges]
    B = Multigraph(len(node_id), tuple(bedges))
    pref = [set() for _ in range(B.n)]
    for i, (y, t) in enumerate(aux.edges):
        if (y, t) in A_sets[("y", y)]:
            pref[node_id[("y", y)]].add(i)
        if (y, t) in A_sets[("T", t)]:
            pref[node_id[("T", t)]].add(i)
    A = IncidencePreference(B, tuple(frozenset(p) for p in pref))
    gvec = {node_id[v]: val for v, val in g.items()}
    D = solve_in_orientation(A, range(B.n), gvec)
    if isinstance(D, WitnessSubgraph):
        raise InvariantViolation("in-orientation demands are infeasible", D)
    name = {i: (f"y{labels[v[1]]}" if v[0] == "y" else f"T{v[1]}") for v, i in node_id.items()}
    report.b_orientation = [(name[a], name[b]) for a, b in D.arcs]
    report.profiles = profiles

    F = set()
    for i, (y, t) in enumerate(aux.edges):
        tail, head = D.arcs[i]
        p = prof[t]
        gs = aux.g_edges(y, t)
        if (y, t) in heavy:
            in_u = [e for e in gs if e in set(p.u)]
            F.add((in_u or gs)[0])
        elif (y, t) in A_sets[("T", t)] and head == node_id[("T", t)]:
            F.add(next(e for e in gs if e in set(p.u) and e not in H_edges))
    report.F = sorted((labels[x], labels[y]) for x, y in F)

    sub = aux.G
    mg = sub.as_multigraph()
    f = [sub.degrees[v] - (1 if v in aux.Y else 0) for v in range(sub.n)]
    F_ids = frozenset(mg.edges.index((min(x, y), max(x, y))) for x, y in F)
    try:
        cert = extend_type_two(ExtensionFrame(mg, tuple(f), F_ids, aux.Y), limits)
    except HypothesisError as exc:
        raise InvariantViolation(f"constructed frame fails the type-two hypotheses: {exc}", report) from exc
    report.vertices = tuple(labels)
    report.certificate = cert
    _check_contract(report)
    return report


def _check_trim(before, after, removed) -> None:
    dy0, dt0 = before
    dy1, dt1 = after
    gone = set(removed)
    shrunk = {tuple(v for v in verts if v not in gone): d for verts, d in dt0.items()}
    if dy0 != dy1 or shrunk != dt1:
        raise InvariantViolation(f"trimming {removed} changed degrees in B")


def _check_contract(report: ReductionReport) -> None:
    sub = report.subgraph
    cert = report.certificate
    want = tuple(sub.degrees[i] - (1 if v in report.Y else 0) for i, v in enumerate(report.vertices))
    if cert.graph.n != sub.n or tuple(cert.f) != want:
        raise InvariantViolation("certificate does not match f = d - 1 on Y, d elsewhere", report)


# -- brute-force reducibility --------------------------------------------------

@dataclass(frozen=True)
class ATReduction:
    vertices: tuple[int, ...]
    certificate: ATCertificate

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "certificate": self.certificate.to_dict()}


def find_at_reduction(G: Graph, limits: Limits = DEFAULT) -> ATReduction | None:
    """Smallest nonempty H (then lexicographically first) that is f_H-AT, f_H = delta + d_H - d_G.

    ``None`` means G is AT-irreducible.
    """
    if G.n > limits.reduction_vertices:
        raise CapExceeded("find_at_reduction order", "reduction_vertices", G.n, limits.reduction_vertices)
    if G.n == 0:
        return None
    delta = G.min_degree
    for size in range(1, G.n + 1):
        for H in combinations(range(G.n), size):
            sub = G.induced(H)
            f = [delta + sub.degrees[i] - G.degrees[v] for i, v in enumerate(H)]
            if min(f) < 1:
                continue
            cert = is_f_at(sub, f, limits)
            if cert is not None:
                return ATReduction(H, cert)
    return None
