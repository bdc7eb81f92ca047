"""Orientations, Eulerian parity counts and Alon-Tarsi certificates."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .errors import CapExceeded, InvariantViolation
from .graph import Graph, Multigraph, as_degree_function
from .graph6 import parse_graph6, to_graph6
from .limits import DEFAULT, Limits

Base = Union[Graph, Multigraph]


@dataclass(frozen=True)
class Orientation:
    """``arcs[i]`` is ``(tail, head)`` for edge instance ``base.edge_list[i]``."""

    base: Base
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        el = self.base.edge_list
        if len(self.arcs) != len(el):
            raise ValueError(f"{len(self.arcs)} arcs for {len(el)} edges")
        for (t, h), (u, v) in zip(self.arcs, el):
            if (min(t, h), max(t, h)) != (u, v):
                raise ValueError(f"arc {t}->{h} does not orient edge {u}{v}")
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))

    @classmethod
    def from_tails(cls, base: Base, tails: Sequence[int]) -> "Orientation":
        arcs = []
        for (u, v), t in zip(base.edge_list, tails):
            arcs.append((u, v) if t == u else (v, u))
        return cls(base, tuple(arcs))

    @classmethod
    def lexicographic(cls, base: Base) -> "Orientation":
        """Every edge directed from its smaller to its larger endpoint (acyclic)."""
        return cls(base, tuple(base.edge_list))

    @classmethod
    def from_arc_map(cls, base: Base, arc_map: dict) -> "Orientation":
        """Build from ``{edge_index: (tail, head)}`` covering every edge instance."""
        return cls(base, tuple(arc_map[i] for i in range(len(base.edge_list))))

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        out = [0] * self.base.n
        for t, _ in self.arcs:
            out[t] += 1
        return tuple(out)

    @cached_property
    def in_degrees(self) -> tuple[int, ...]:
        inn = [0] * self.base.n
        for _, h in self.arcs:
            inn[h] += 1
        return tuple(inn)


def _incidence_order(edges) -> list[int]:
    # edges sorted by larger endpoint keeps the set of half-processed vertices small
    return sorted(range(len(edges)), key=lambda i: (max(edges[i]), min(edges[i]), i))


def strong_components(n: int, arcs) -> list[int]:
    """Strongly connected component id per vertex (iterative Tarjan)."""
    out: list[list[int]] = [[] for _ in range(n)]
    for t, h in arcs:
        out[t].append(h)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(out[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(out[w])))
                    pushed = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _count_component(arcs, n: int) -> tuple[int, int]:
    remaining = [0] * n
    for t, h in arcs:
        remaining[t] += 1
        remaining[h] += 1
    states: dict[tuple, list[int]] = {(0,) * n: [1, 0]}
    for i in _incidence_order(arcs):
        t, h = arcs[i]
        remaining[t] -= 1
        remaining[h] -= 1
        rt, rh = remaining[t], remaining[h]
        nxt: dict[tuple, list[int]] = defaultdict(lambda: [0, 0])
        for bal, (ev, od) in states.items():
            bt, bh = bal[t], bal[h]
            if abs(bt) <= rt and abs(bh) <= rh:
                acc = nxt[bal]
                acc[0] += ev
                acc[1] += od
            if abs(bt + 1) <= rt and abs(bh - 1) <= rh:
                b = list(bal)
                b[t] += 1
                b[h] -= 1
                acc = nxt[tuple(b)]
                acc[0] += od
                acc[1] += ev
        states = nxt
    ee, eo = states.get((0,) * n, [0, 0])
    return ee, eo


def count_eulerian(D: Orientation, limits: Limits = DEFAULT) -> tuple[int, int]:
    """(EE, EO): spanning Eulerian sub-digraphs of D with an even / odd number of arcs.

    Arcs joining different strong components lie on no directed cycle, so the
    count factorises over strong components; each factor is a balance DP over
    arc subsets. The cap applies to the arcs that reach the subset counter.
    """
    n = D.base.n
    comp = strong_components(n, D.arcs)
    groups: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for t, h in D.arcs:
        if comp[t] == comp[h]:
            groups[comp[t]].append((t, h))
    inside = sum(len(g) for g in groups.values())
    if inside > limits.eulerian_edges:
        raise CapExceeded("count_eulerian arcs on directed cycles (use graph_poly_coefficient instead)",
                          "eulerian_edges", inside, limits.eulerian_edges)
    ee, eo = 1, 0
    for cid in sorted(groups):
        arcs = groups[cid]
        verts = sorted({v for a in arcs for v in a})
        pos = {v: i for i, v in enumerate(verts)}
        ce, co = _count_component([(pos[t], pos[h]) for t, h in arcs], len(verts))
        ee, eo = ee * ce + eo * co, ee * co + eo * ce
    return ee, eo


def graph_poly_coefficient(G: Base, e: Sequence[int]) -> int:
    """Coefficient of prod x_v^e(v) in prod over edges u<v of (x_u - x_v)."""
    e = tuple(int(x) for x in e)
    if len(e) != G.n:
        raise ValueError("exponent vector length differs from vertex count")
    if sum(e) != G.m:
        raise ValueError(f"exponent sum {sum(e)} differs from edge count {G.m}")
    edges = list(G.edge_list)
    remaining = [0] * G.n
    for u, v in edges:
        remaining[u] += 1
        remaining[v] += 1
    poly: dict[tuple, int] = {(0,) * G.n: 1}
    for u, v in edges:
        remaining[u] -= 1
        remaining[v] -= 1
        nxt: dict[tuple, int] = defaultdict(int)
        for mono, c in poly.items():
            for w, sign in ((u, 1), (v, -1)):
                x = list(mono)
                x[w] += 1
                # prune monomials that can no longer hit the target
                if x[w] > e[w] or x[u] + remaining[u] < e[u] or x[v] + remaining[v] < e[v]:
                    continue
                nxt[tuple(x)] += sign * c
        poly = {k: c for k, c in nxt.items() if c}
    return poly.get(e, 0)


@dataclass(frozen=True)
class ATCertificate:
    orientation: Orientation
    ee: int
    eo: int
    f: tuple[int, ...]

    @property
    def graph(self) -> Base:
        return self.orientation.base

    def to_dict(self) -> dict:
        base = self.orientation.base
        d = {"n": base.n, "arcs": [list(a) for a in self.orientation.arcs],
             "f": list(self.f), "ee": self.ee, "eo": self.eo}
        if isinstance(base, Graph):
            d["graph6"] = to_graph6(base)
        else:
            d["multigraph_edges"] = [list(e) for e in base.edges]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ATCertificate":
        if "graph6" in d:
            base: Base = parse_graph6(d["graph6"])
        else:
            base = Multigraph(d["n"], tuple(tuple(e) for e in d["multigraph_edges"]))
        if base.n != d["n"]:
            raise ValueError("vertex count disagrees with graph encoding")
        D = Orientation(base, tuple(tuple(a) for a in d["arcs"]))
        return cls(D, int(d["ee"]), int(d["eo"]), tuple(int(x) for x in d["f"]))

    @classmethod
    def from_json(cls, text: str) -> "ATCertificate":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: ATCertificate, limits: Limits = DEFAULT) -> Verdict:
    """Recount (EE, EO) from the orientation and recheck the out-degree caps."""
    D = cert.orientation
    if len(cert.f) != D.base.n:
        return Verdict(False, "degree function length")
    for v, (out, fv) in enumerate(zip(D.out_degrees, cert.f)):
        if fv < out + 1:
            return Verdict(False, f"out-degree cap at vertex {v}: d+={out}, f={fv}")
    ee, eo = count_eulerian(D, limits)
    if (ee, eo) != (cert.ee, cert.eo):
        return Verdict(False, f"count mismatch: recount ({ee},{eo}) vs claimed ({cert.ee},{cert.eo})")
    if ee < 1:
        return Verdict(False, "count mismatch: EE must be positive")
    if ee == eo:
        return Verdict(False, "EE equals EO")
    return Verdict(True)


def certify(D: Orientation, f: Sequence[int], limits: Limits = DEFAULT) -> ATCertificate:
    """Count D and package it; raises if the result is not a valid certificate."""
    ee, eo = count_eulerian(D, limits)
    cert = ATCertificate(D, ee, eo, tuple(f))
    verdict = verify_certificate(cert, limits)
    if not verdict:
        raise InvariantViolation(f"constructed orientation is not a certificate: {verdict.reason}", cert)
    return cert


# -- f-AT search -------------------------------------------------------------

def _caps(G: Base, f) -> list[int] | None:
    caps = []
    for v in range(G.n):
        if f[v] < 1:
            return None
        caps.append(min(f[v] - 1, G.degrees[v]))
    return caps


def signed_outdegree_counts(G: Base, caps: Sequence[int], limits: Limits = DEFAULT) -> dict[tuple, int]:
    """Signed number of orientations per out-degree vector within ``caps``.

    Orientations are enumerated edge by edge with running out-degree pruning;
    each is weighted by (-1)^(number of edges directed from larger to smaller
    endpoint). For every orientation D with out-degree vector d the entry for
    d equals +-(EE(D) - EO(D)).
    """
    edges = G.edge_list
    states: dict[tuple, int] = {(0,) * G.n: 1}
    for i in _incidence_order(edges):
        u, v = edges[i]
        nxt: dict[tuple, int] = defaultdict(int)
        cu, cv = caps[u], caps[v]
        for out, c in states.items():
            if out[u] < cu:
                x = list(out)
                x[u] += 1
                nxt[tuple(x)] += c
            if out[v] < cv:
                x = list(out)
                x[v] += 1
                nxt[tuple(x)] -= c
        states = nxt
        if len(states) > limits.orientation_states:
            raise CapExceeded("f-AT search out-degree states", "orientation_states",
                              len(states), limits.orientation_states)
    return {k: c for k, c in states.items() if c}


def realize_outdegrees(G: Base, target: Sequence[int]) -> Orientation | None:
    """Lexicographically least orientation (smaller tail first) with the given out-degrees."""
    edges = G.edge_list
    need = list(target)
    rem = list(G.degrees)
    if sum(need) != len(edges) or any(x < 0 for x in need):
        return None
    tails = [0] * len(edges)

    def dfs(i: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        rem[u] -= 1
        rem[v] -= 1
        for t, o in ((u, v), (v, u)):
            if need[t] > 0 and need[o] <= rem[o] and need[t] - 1 <= rem[t]:
                need[t] -= 1
                tails[i] = t
                if dfs(i + 1):
                    return True
                need[t] += 1
        rem[u] += 1
        rem[v] += 1
        return False

    # an early vertex whose demand cannot be met is caught by the rem bounds
    if any(need[v] > rem[v] for v in range(G.n)):
        return None
    return Orientation.from_tails(G, tails) if dfs(0) else None


def _is_f_at_sequences(G: Base, f, caps, limits: Limits) -> ATCertificate | None:
    # one orientation per out-degree vector, counted directly
    n = G.n

    def gen(v: int, left: int, prefix: list[int]):
        if v == n:
            if left == 0:
                yield tuple(prefix)
            return
        for d in range(0, min(caps[v], left) + 1):
            prefix.append(d)
            yield from gen(v + 1, left - d, prefix)
            prefix.pop()

    for seq in gen(0, G.m, []):
        D = realize_outdegrees(G, seq)
        if D is None:
            continue
        ee, eo = count_eulerian(D, limits)
        if ee != eo:
            return ATCertificate(D, ee, eo, tuple(f))
    return None


def is_f_at(G: Base, f, limits: Limits = DEFAULT, method: str = "dp") -> ATCertificate | None:
    """A verified f-AT certificate for G, or ``None`` if G is not f-AT.

    ``method="dp"`` groups orientations by out-degree vector in one sweep and
    then counts the lexicographically least candidate; ``method="sequences"``
    realises and counts every admissible out-degree vector in turn. Both
    return the certificate for the lexicographically least out-degree vector.
    """
    f = as_degree_function(G, f)
    caps = _caps(G, f)
    if caps is None:
        return None
    if sum(caps) < G.m:
        return None
    if method == "sequences":
        return _is_f_at_sequences(G, f, caps, limits)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    counts = signed_outdegree_counts(G, caps, limits)
    if not counts:
        return None
    best = min(counts)
    D = realize_outdegrees(G, best)
    if D is None:
        raise InvariantViolation(f"out-degree vector {best} has orientations but none was realised")
    ee, eo = count_eulerian(D, limits.replace(eulerian_edges=max(limits.eulerian_edges, G.m)))
    if abs(ee - eo) != abs(counts[best]):
        raise InvariantViolation(f"signed orientation count {counts[best]} disagrees with EE-EO={ee - eo}")
    return ATCertificate(D, ee, eo, tuple(f))


def at_number(G: Base, limits: Limits = DEFAULT) -> int:
    """Least k with G f-AT for f = k everywhere."""
    if G.n == 0:
        return 0
    k = 1
    while True:
        if is_f_at(G, (k,) * G.n, limits) is not None:
            return k
        k += 1
