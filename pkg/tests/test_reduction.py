import random
from itertools import combinations

import pytest

from atlab import CapExceeded, Graph, HypothesisError, Limits
from atlab.graph import complete_graph, cycle_graph
from atlab.orientation import graph_poly_coefficient, is_f_at, verify_certificate
from atlab.reduction import (LOPSIDED, SYMMETRIC, build_aux_bipartite, check_multiple_high,
                             classify_components, find_at_reduction, multiple_high_reduction,
                             u_property_holds)

from . import oracles
from .instances import cliques_with_high, lopsided_reference, random_high_instance, symmetric_reference


def assert_reduction_sound(G, Y, report):
    sub, cert = report
    labels = report.vertices
    assert sub == G.induced(labels)
    want = tuple(sub.degrees[i] - (v in Y) for i, v in enumerate(labels))
    assert cert.f == want
    # certificate checks that do not reuse the Eulerian counter
    assert all(d < f for d, f in zip(cert.orientation.out_degrees, cert.f))
    coeff = graph_poly_coefficient(sub, cert.orientation.out_degrees)
    assert coeff != 0 and abs(coeff) == abs(cert.ee - cert.eo)


def test_aux_examples():
    G = Graph.from_edges(5, list(complete_graph(4).edges) + [(4, 0), (4, 1)])
    aux = build_aux_bipartite(G, {4}, 5)
    assert aux.edges == ((4, 0),) and aux.multiplicity[(4, 0)] == 2
    # y on a pendant path off the K_4: neighbour not in W^5
    G = Graph.from_edges(6, list(complete_graph(4).edges) + [(3, 4), (4, 5)])
    aux = build_aux_bipartite(G, {5}, 5)
    assert aux.edges == () and aux.multiplicity[(5, 0)] == 1
    G = Graph.from_edges(6, list(complete_graph(4).edges) + [(4, 5)])
    assert build_aux_bipartite(G, {4, 5}, 5).edges == ()
    with pytest.raises(HypothesisError):
        build_aux_bipartite(G, range(6), 5)


def test_aux_matches_clique_oracle():
    rng = random.Random(3)
    for _ in range(20):
        G = random_high_instance(rng, 5, 3, 3, 2, 0.3)
        Y = set(range(3))
        aux = build_aux_bipartite(G, Y, 5)
        for c in aux.components:
            for y in Y:
                # y - T is a B-edge iff y has a neighbour in some K_4 of T
                in_k4 = any(all(G.has_edge(a, b) for a, b in combinations(Q, 2)) and
                            any(G.has_edge(y, x) for x in Q) for Q in combinations(c.vertices, 4))
                assert ((y, c.index) in aux.edges) == in_k4


def test_classify_saturated_single_block_is_2a():
    # T = K_4 whose every vertex has a Y-neighbour (k = 5, lopsided)
    G, Y, k = lopsided_reference()
    extra = [(0, 4), (1, 5)]
    G = Graph.from_edges(G.n, list(G.edges) + extra)
    aux = check_multiple_high(G, Y, k, LOPSIDED)
    prof = classify_components(aux, LOPSIDED)
    assert prof[0].type == "2a"
    assert set(prof[0].u) == {(x, y) for x in range(2, 6) for y in Y if G.has_edge(x, y)}
    assert all(u_property_holds(aux, p) for p in prof)


def test_classify_two_saturated_endblocks_is_3():
    # T = two K_4's joined by a bridge; every non-bridge vertex has a Y-neighbour
    k = 5
    ny = 4
    edges = []
    blocks = [[ny + i for i in range(4)], [ny + 4 + i for i in range(4)]]
    for b in blocks:
        edges += list(combinations(b, 2))
    edges.append((blocks[0][3], blocks[1][0]))
    ys = list(range(ny))
    for b in blocks:
        for j, x in enumerate(b):
            if x not in (blocks[0][3], blocks[1][0]):
                edges.append((ys[j % ny], x))
    # three more K_4's so every y has d_B >= 4
    off = ny + 8
    for c in range(3):
        Q = [off + 4 * c + i for i in range(4)]
        edges += list(combinations(Q, 2))
        for y in ys:
            edges.append((y, Q[y % 4]))
    G = Graph.from_edges(off + 12, edges)
    aux = check_multiple_high(G, set(ys), k, LOPSIDED)
    prof = {p.index: p for p in classify_components(aux, LOPSIDED)}
    comp = next(c.index for c in aux.components if blocks[0][0] in c.vertices)
    assert prof[comp].type == "3"


def test_classify_symmetric_unsaturated_single_block_is_1():
    G, Y, k = symmetric_reference()
    aux = check_multiple_high(G, Y, k, SYMMETRIC)
    prof = classify_components(aux, SYMMETRIC)
    assert [p.type for p in prof] == ["1", "1", "1"]
    assert all(len(p.u) == 3 and len({y for _, y in p.u}) == 3 for p in prof)


@pytest.mark.parametrize("ref,variant", [(symmetric_reference, SYMMETRIC), (lopsided_reference, LOPSIDED)])
def test_reference_instances(ref, variant):
    G, Y, k = ref()
    report = multiple_high_reduction(G, Y, k, variant)
    assert report.shortcut is None
    assert report.eta_min is not None and report.eta_min >= 0
    assert_reduction_sound(G, Y, report)
    assert verify_certificate(report.certificate, Limits(eulerian_edges=200))


def test_shortcut_instance():
    # y = 0 has three edges into one K_4 component; k = 5
    G, Y, k = lopsided_reference()
    G = Graph.from_edges(G.n, list(G.edges) + [(0, 4), (0, 5)])
    report = multiple_high_reduction(G, Y, k, LOPSIDED)
    assert report.shortcut == 0
    sub, cert = report
    # N_B[0] is y = 0 with all four components it sees
    assert set(report.vertices) == {0} | set(range(2, G.n))
    assert_reduction_sound(G, Y, report)


def test_hypothesis_errors():
    G = cliques_with_high(2, [5, 4, 4, 4], [(y, c, y) for y in range(2) for c in range(4)])
    with pytest.raises(HypothesisError, match=r"\(1\) failed"):
        multiple_high_reduction(G, {0, 1}, 5, LOPSIDED)
    G, Y, k = lopsided_reference()
    with pytest.raises(HypothesisError, match="k range"):
        multiple_high_reduction(G, Y, k, SYMMETRIC)
    G = cliques_with_high(2, [4, 4, 4], [(y, c, y) for y in range(2) for c in range(3)])
    with pytest.raises(HypothesisError, match=r"\(4\) failed"):
        multiple_high_reduction(G, {0, 1}, 5, LOPSIDED)
    G = cliques_with_high(2, [4, 4, 4, 4], [(y, c, 0) for y in range(2) for c in range(4)])
    with pytest.raises(HypothesisError, match=r"\(3\) failed"):
        multiple_high_reduction(G, {0, 1}, 5, LOPSIDED)


def harvest(seed, count):
    """Random instances passing the hypotheses of a randomly chosen variant."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        variant = rng.choice([SYMMETRIC, LOPSIDED])
        k = rng.choice([7, 8]) if variant == SYMMETRIC else rng.choice([5, 6, 7])
        ymin = 3 if variant == SYMMETRIC else 4
        ny, nc = rng.choice([3, 4, 5, 6]), rng.choice([2, 3, 4, 5])
        G = random_high_instance(rng, k, ny, nc, ymin, rng.choice([0, 0.3, 0.7]))
        try:
            check_multiple_high(G, range(ny), k, variant)
        except HypothesisError:
            continue
        out.append((G, set(range(ny)), k, variant))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_random_instances(seed):
    for G, Y, k, variant in harvest(seed, 5):
        report = multiple_high_reduction(G, Y, k, variant)
        assert_reduction_sound(G, Y, report)
        if report.shortcut is None:
            assert all(p.type in (("1", "2a", "2b", "2c", "3") if variant == SYMMETRIC else ("1", "2a", "2b", "3"))
                       for p in report.profiles)
            if report.eta_min is not None:
                assert report.eta_min >= 0


def test_report_serialises():
    G, Y, k = lopsided_reference()
    d = multiple_high_reduction(G, Y, k, LOPSIDED).to_dict()
    assert d["Y"] == 0b11 and d["certificate"]["f"]


def test_find_at_reduction_examples():
    red = find_at_reduction(cycle_graph(4))
    assert red is not None
    assert red.vertices == (0, 1, 2, 3) and verify_certificate(red.certificate)
    assert find_at_reduction(complete_graph(4)) is None
    assert find_at_reduction(cycle_graph(5)) is None
    with pytest.raises(CapExceeded, match="reduction_vertices"):
        find_at_reduction(cycle_graph(9))


def test_find_at_reduction_matches_exhaustive():
    from atlab.enumeration import enumerate_connected
    for n in range(2, 6):
        for G in enumerate_connected(n):
            delta = G.min_degree
            want = False
            for size in range(1, n + 1):
                for H in combinations(range(n), size):
                    sub = G.induced(H)
                    f = [delta + sub.degrees[i] - G.degrees[v] for i, v in enumerate(H)]
                    if min(f) >= 1 and oracles.is_f_at(sub.n, sub.edges, f):
                        want = True
                        break
                if want:
                    break
            red = find_at_reduction(G)
            assert (red is not None) == want
            if red:
                assert verify_certificate(red.certificate)
                assert is_f_at(G.induced(red.vertices), red.certificate.f) is not None
