"""Edge-bound functionals, criticality tests and verification scans."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .enumeration import canonical_key, enumerate_graphs
from .errors import CapExceeded, HypothesisError
from .graph import Graph, as_degree_function, bits
from .graph6 import to_graph6
from .limits import DEFAULT, Limits
from .orientation import is_f_at
from .structure import in_T_k, w_k_vertices

Rational = Fraction | int

TABLE1_KS = (5, 6, 7, 8, 9, 10, 15, 20)

# Average-degree bounds from earlier work, as printed; not recomputed.
TABLE1_HISTORY: dict[int, dict[str, str | None]] = {
    4: {"Gallai": "3.0769", "Kriv": "3.1429", "KS": None, "KY": "3.3333", "KS-list": None},
    5: {"Gallai": "4.0909", "Kriv": "4.1429", "KS": None, "KY": "4.5000", "KS-list": None},
    6: {"Gallai": "5.0909", "Kriv": "5.1304", "KS": "5.0976", "KY": "5.6000", "KS-list": None},
    7: {"Gallai": "6.0870", "Kriv": "6.1176", "KS": "6.0990", "KY": "6.6667", "KS-list": None},
    8: {"Gallai": "7.0820", "Kriv": "7.1064", "KS": "7.0980", "KY": "7.7143", "KS-list": None},
    9: {"Gallai": "8.0769", "Kriv": "8.0968", "KS": "8.0959", "KY": "8.7500", "KS-list": "8.0838"},
    10: {"Gallai": "9.0722", "Kriv": "9.0886", "KS": "9.0932", "KY": "9.7778", "KS-list": "9.0793"},
    15: {"Gallai": "14.0541", "Kriv": "14.0618", "KS": "14.0785", "KY": "14.8571", "KS-list": "14.0610"},
    20: {"Gallai": "19.0428", "Kriv": "19.0474", "KS": "19.0666", "KY": "19.8947", "KS-list": "19.0490"},
}


def rational_str(x: Rational) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def alpha(k: int) -> Fraction:
    return Fraction(1, 2) - Fraction(1, (k - 1) * (k - 2))


def g_bound(k: int, n: int, c: Rational) -> Fraction:
    """g_k(n, c), the target value for 2||G||."""
    c = Fraction(c)
    return (k - 1 + Fraction(k - 3, (k - c) * (k - 1) + k - 3)) * n


def critical_c(k: int) -> Fraction:
    """c for k-critical, k-list-critical and k-AT-critical graphs: (k-3)alpha_k if k >= 7, else (k-4)alpha_k."""
    if k < 5:
        raise ValueError("the edge bound is stated for k >= 5")
    return (k - 3 if k >= 7 else k - 4) * alpha(k)


def irreducible_c(delta: int) -> Fraction:
    """c for AT-irreducible graphs of minimum degree delta >= 4."""
    if delta < 4:
        raise ValueError("the edge bound is stated for minimum degree >= 4")
    return (delta - 2 if delta >= 6 else delta - 3) * alpha(delta + 1)


def low_high(G: Graph, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    low = tuple(v for v in range(G.n) if G.degrees[v] < k)
    high = tuple(v for v in range(G.n) if G.degrees[v] >= k)
    return low, high


def sigma(G: Graph, k: int) -> Fraction:
    low, _ = low_high(G, k)
    return (k - 2 + Fraction(2, k - 1)) * len(low) - 2 * G.induced(low).m


def tau(G: Graph, k: int, c: Rational, sign: int = -1) -> Fraction:
    """tau_{k,c}; ``sign=+1`` gives the per-vertex expansion used inside the main proof."""
    _, high = low_high(G, k)
    surplus = sum(G.degrees[y] - k for y in high)
    return 2 * G.induced(high).m + (k - Fraction(c) + sign * Fraction(2, k - 1)) * surplus


def q(G: Graph, k: int) -> Fraction:
    wk = w_k_vertices(G, k)
    return alpha(k) * sum(k - 1 - G.degrees[v] for v in range(G.n) if v not in wk)


@dataclass(frozen=True)
class BoundParams:
    k: int
    c: Fraction

    def __post_init__(self):
        if self.k < 4:
            raise ValueError("k must be at least 4")
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def alpha_k(self) -> Fraction:
        return alpha(self.k)

    @property
    def in_lemma_range(self) -> bool:
        return 0 <= self.c <= self.k - Fraction(2, self.k - 1)


@dataclass(frozen=True)
class FunctionalReport:
    k: int
    c: Fraction
    n: int
    m: int
    sigma: Fraction
    tau: Fraction
    tau_proof: Fraction
    q: Fraction
    low_part: tuple[int, ...]
    high_part: tuple[int, ...]
    g_bound: Fraction

    @property
    def bound_holds(self) -> bool:
        return 2 * self.m >= self.g_bound

    def to_dict(self) -> dict:
        return {"k": self.k, "c": rational_str(self.c), "n": self.n, "m": self.m,
                "alpha": rational_str(alpha(self.k)), "sigma": rational_str(self.sigma),
                "tau": rational_str(self.tau), "tau_proof": rational_str(self.tau_proof),
                "q": rational_str(self.q), "low_part": list(self.low_part), "high_part": list(self.high_part),
                "g_bound": rational_str(self.g_bound), "bound_holds": self.bound_holds}


def bound_functionals(G: Graph, k: int, c: Rational) -> FunctionalReport:
    p = BoundParams(k, c)
    low, high = low_high(G, k)
    return FunctionalReport(k, p.c, G.n, G.m, sigma(G, k), tau(G, k, p.c), tau(G, k, p.c, +1),
                            q(G, k), low, high, g_bound(k, G.n, p.c))


def table1_here_column() -> dict[int, Decimal]:
    """Average-degree bound g_k(n, c)/n at 4 decimals, rounded half-even."""
    out = {}
    for k in TABLE1_KS:
        r = round(g_bound(k, 1, critical_c(k)), 4)   # Fraction rounding is exact half-even
        out[k] = Decimal(r.numerator) / Decimal(r.denominator)
    return out


def degenerate_subgraph(G: Graph, f) -> tuple[int, ...] | None:
    """Peel vertices with d(v) <= f(v); the residue (if any) has d_H(v) > f(v) throughout."""
    f = as_degree_function(G, f)
    alive = (1 << G.n) - 1
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if bin(G.adj[v] & alive).count("1") <= f[v]:
                alive &= ~(1 << v)
                changed = True
    return tuple(bits(alive)) if alive else None


# -- colouring and criticality -----------------------------------------------

def _colourable(G: Graph, k: int) -> bool:
    colour = [-1] * G.n
    order = sorted(range(G.n), key=lambda v: -G.degrees[v])

    def dfs(i: int, used: int) -> bool:
        if i == G.n:
            return True
        v = order[i]
        taken = {colour[u] for u in bits(G.adj[v]) if colour[u] >= 0}
        # a colour never used before is interchangeable with any other unused one
        for c in range(min(used + 1, k)):
            if c not in taken:
                colour[v] = c
                if dfs(i + 1, max(used, c + 1)):
                    return True
        colour[v] = -1
        return False

    return dfs(0, 0)


def chromatic_number(G: Graph, limits: Limits = DEFAULT) -> int:
    if G.n > limits.chromatic_vertices:
        raise CapExceeded("chromatic_number order", "chromatic_vertices", G.n, limits.chromatic_vertices)
    if G.n == 0:
        return 0
    k = max(1, G.clique_number())
    while not _colourable(G, k):
        k += 1
    return k


def is_k_critical(G: Graph, k: int, limits: Limits = DEFAULT) -> bool:
    """chi(G) >= k while every proper subgraph is (k-1)-colourable."""
    if G.n > limits.chromatic_vertices:
        raise CapExceeded("is_k_critical order", "chromatic_vertices", G.n, limits.chromatic_vertices)
    if G.n == 0 or G.degeneracy() + 1 < k or chromatic_number(G, limits) < k:
        return False
    for v in range(G.n):
        if chromatic_number(G.remove([v]), limits) >= k:
            return False
    for u, v in G.edge_list:
        adj = list(G.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        if chromatic_number(Graph(G.n, tuple(adj)), limits) >= k:
            return False
    return True


def is_k_vertex_critical(G: Graph, k: int, limits: Limits = DEFAULT) -> bool:
    """chi(G) >= k and chi(G - v) <= k - 1 for every vertex v."""
    if G.n > limits.chromatic_vertices:
        raise CapExceeded("is_k_vertex_critical order", "chromatic_vertices", G.n, limits.chromatic_vertices)
    if G.n == 0 or chromatic_number(G, limits) < k:
        return False
    return all(chromatic_number(G.remove([v]), limits) < k for v in range(G.n))


class ATCriticality:
    """Decides k-AT-criticality over all proper induced subgraphs, with a canonical memo."""

    def __init__(self, limits: Limits = DEFAULT):
        self.limits = limits
        self.memo: dict = {}

    def at_least(self, G: Graph, k: int) -> bool:
        """AT(G) >= k."""
        if G.n == 0 or G.degeneracy() + 1 < k:
            # an acyclic orientation with out-degree <= degeneracy certifies AT <= col
            return False
        key = (k, canonical_key(G))
        hit = self.memo.get(key)
        if hit is None:
            hit = is_f_at(G, [k - 1] * G.n, self.limits) is None
            self.memo[key] = hit
        return hit

    def is_critical(self, G: Graph, k: int) -> bool:
        if G.n > self.limits.at_critical_vertices:
            raise CapExceeded("is_k_at_critical order", "at_critical_vertices", G.n,
                              self.limits.at_critical_vertices)
        if not self.at_least(G, k):
            return False
        for size in range(G.n - 1, 0, -1):
            for H in combinations(range(G.n), size):
                if self.at_least(G.induced(H), k):
                    return False
        return True


def is_k_at_critical(G: Graph, k: int, limits: Limits = DEFAULT) -> bool:
    return ATCriticality(limits).is_critical(G, k)


# -- audits ------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaTauAudit:
    report: FunctionalReport
    lhs: Fraction            # sigma + tau
    rhs: Fraction            # c |H|
    two_m: int
    bound: Fraction          # g_{delta+1}(n, c)
    proof_lhs: Fraction      # sigma + tau with the proof's sign

    @property
    def hypothesis(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def conclusion(self) -> bool:
        return self.two_m >= self.bound

    @property
    def status(self) -> str:
        if not self.hypothesis:
            return "hypothesis false, implication vacuous"
        return "ok" if self.conclusion else "FAIL"

    @property
    def proof_status(self) -> str:
        if self.proof_lhs < self.rhs:
            return "hypothesis false, implication vacuous"
        return "ok" if self.conclusion else "FAIL"

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def to_dict(self) -> dict:
        return {"functionals": self.report.to_dict(), "lhs": rational_str(self.lhs), "rhs": rational_str(self.rhs),
                "two_m": self.two_m, "bound": rational_str(self.bound), "hypothesis": self.hypothesis,
                "conclusion": self.conclusion, "status": self.status,
                "proof_lhs": rational_str(self.proof_lhs), "proof_status": self.proof_status}


def audit_sigma_tau(G: Graph, k: int, c: Rational) -> SigmaTauAudit:
    """Evaluate both sides of the sigma+tau implication for k = delta(G) + 1."""
    delta = G.min_degree
    c = Fraction(c)
    if G.n == 0 or delta < 3:
        raise HypothesisError("minimum degree >= 3", f"delta={delta}")
    if k != delta + 1:
        raise HypothesisError("k = delta + 1", f"k={k}, delta={delta}")
    if not 0 <= c <= delta + 1 - Fraction(2, delta):
        raise HypothesisError("0 <= c <= delta + 1 - 2/delta", f"c={rational_str(c)}")
    rep = bound_functionals(G, k, c)
    rhs = c * len(rep.high_part)
    return SigmaTauAudit(rep, rep.sigma + rep.tau, rhs, 2 * G.m, rep.g_bound, rep.sigma + rep.tau_proof)


@dataclass(frozen=True)
class SigmaBoundAudit:
    k: int
    sigma: Fraction
    q: Fraction
    has_clique: bool
    required: Fraction

    @property
    def ok(self) -> bool:
        return self.sigma >= self.required

    def to_dict(self) -> dict:
        return {"k": self.k, "sigma": rational_str(self.sigma), "q": rational_str(self.q),
                "has_clique": self.has_clique, "required": rational_str(self.required), "ok": self.ok}


def audit_sigma_bound(T: Graph, k: int) -> SigmaBoundAudit:
    """sigma_k(T) >= 2 + q_k(T) when K_{k-1} is a subgraph, else >= 2 - alpha_k + q_k(T)."""
    if k < 4:
        raise ValueError("k must be at least 4")
    if not in_T_k(T, k):
        raise HypothesisError("T in T_k", f"graph is not a Gallai tree of maximum degree <= {k - 1} other than K_{k}")
    s, qq = sigma(T, k), q(T, k)
    clique = T.contains_clique(k - 1)
    need = 2 + qq if clique else 2 - alpha(k) + qq
    return SigmaBoundAudit(k, s, qq, clique, need)


# -- scans -------------------------------------------------------------------

MODES = ("at-critical", "critical", "irreducible")


@dataclass
class ScanRecord:
    graph6: str
    n: int
    m: int
    k: int
    c: Fraction
    bound: Fraction
    ok: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"graph6": self.graph6, "n": self.n, "m": self.m, "k": self.k, "c": rational_str(self.c),
             "two_m": 2 * self.m, "bound": rational_str(self.bound), "ok": self.ok}
        d.update(self.extra)
        return d


@dataclass
class ScanReport:
    mode: str
    k: int | None
    n_max: int | None
    examined: int = 0
    excluded: list = field(default_factory=list)     # graph6 of K_k when met
    records: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [r for r in self.records if not r.ok]

    def summary(self) -> dict:
        return {"mode": self.mode, "k": self.k, "n_max": self.n_max, "examined": self.examined,
                "qualifying": len(self.records), "excluded": self.excluded,
                "violations": len(self.violations)}


def _scan_one(args) -> tuple[str, ScanRecord | str | None]:
    from .reduction import find_at_reduction

    G, k, mode, limits = args
    if mode == "at-critical":
        if G.degeneracy() + 1 < k or not ATCriticality(limits).is_critical(G, k):
            return "skip", None
        if G.n == k and G.is_complete():
            return "excluded", to_graph6(G)
        c = critical_c(k)
        bound = g_bound(k, G.n, c)
        red = find_at_reduction(G, limits)
        extra = {"irreducible": red is None}
        if red is not None:
            extra["reduction"] = list(red.vertices)
        return "record", ScanRecord(to_graph6(G), G.n, G.m, k, c, bound, 2 * G.m >= bound and red is None, extra)
    if mode == "critical":
        if G.degeneracy() + 1 < k or not is_k_critical(G, k, limits):
            return "skip", None
        if G.n == k and G.is_complete():
            return "excluded", to_graph6(G)
        c = critical_c(k)
        bound = g_bound(k, G.n, c)
        return "record", ScanRecord(to_graph6(G), G.n, G.m, k, c, bound, 2 * G.m >= bound)
    delta = G.min_degree
    if delta < 4 or G.clique_number() > delta or find_at_reduction(G, limits) is not None:
        return "skip", None
    kk = delta + 1
    c = irreducible_c(delta)
    bound = g_bound(kk, G.n, c)
    ok = 2 * G.m >= bound
    extra: dict = {"delta": delta}
    _, high = low_high(G, kk)
    if delta >= 6 and G.induced(high).m == 0:
        low, _ = low_high(G, kk)
        a = alpha(kk)
        need = (delta - 2) * a * len(high) + 2 * (1 - a) * len(G.induced(low).components())
        s = sigma(G, kk)
        extra.update({"sigma": rational_str(s), "sigma_required": rational_str(need)})
        ok = ok and s >= need
    return "record", ScanRecord(to_graph6(G), G.n, G.m, kk, c, bound, ok, extra)


def scan_graphs(graphs: Iterable[Graph], k: int | None, mode: str, limits: Limits = DEFAULT,
                jobs: int = 1, n_max: int | None = None) -> ScanReport:
    """Check the edge bound on every qualifying graph of the stream, in stream order."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode != "irreducible" and (k is None or k < 5):
        raise ValueError("k >= 5 is required for this mode")
    report = ScanReport(mode, k, n_max)
    work = ((G, k, mode, limits) for G in graphs)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results: Iterator = pool.map(_scan_one, work, chunksize=16)
            _collect(report, results)
    else:
        _collect(report, map(_scan_one, work))
    return report


def _collect(report: ScanReport, results) -> None:
    for kind, payload in results:
        report.examined += 1
        if kind == "record":
            report.records.append(payload)
        elif kind == "excluded":
            report.excluded.append(payload)


def scan_edge_bound(k: int | None, n_max: int, mode: str, limits: Limits = DEFAULT,
                    jobs: int = 1) -> ScanReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    cap_name = {"at-critical": "at_critical_vertices", "critical": "chromatic_vertices",
                "irreducible": "reduction_vertices"}[mode]
    for name in (cap_name, "enumerate_vertices"):
        cap = getattr(limits, name)
        if n_max > cap:
            raise CapExceeded(f"scan_edge_bound n_max ({mode})", name, n_max, cap)
    graphs = (G for n in range(1, n_max + 1) for G in enumerate_graphs(n, limits))
    return scan_graphs(graphs, k, mode, limits, jobs, n_max)

