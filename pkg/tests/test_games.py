import pytest
from hypothesis import given, settings, strategies as st

from atlab import CapExceeded, Graph, Limits
from atlab.games import (ChoosabilitySolver, PaintGame, compose_online_cut, is_f_choosable, is_l_colorable,
                         is_online_f_choosable)
from atlab.graph import complete_graph, cycle_graph, path_graph

from . import oracles
from .strategies import graphs, graphs_with_f


def test_list_colouring_examples():
    K2 = complete_graph(2)
    assert is_l_colorable(K2, ({1}, {1})) is None
    assert tuple(is_l_colorable(K2, ({1}, {2}))) == (1, 2)
    assert is_l_colorable(complete_graph(3), [{1, 2}] * 3) is None


@settings(max_examples=150)
@given(graphs(max_n=6), st.data())
def test_list_colouring_matches_backtracking_oracle(G, data):
    L = [data.draw(st.sets(st.integers(0, 3), max_size=3)) for _ in range(G.n)]
    col = is_l_colorable(G, L)
    assert (col is not None) == oracles.colourable(G.n, G.edges, [sorted(x) for x in L])
    if col is not None:
        assert all(col[v] in L[v] for v in range(G.n))
        assert all(col[u] != col[v] for u, v in G.edges)


def test_choosability_examples():
    assert is_f_choosable(cycle_graph(4), 2)
    assert not is_f_choosable(cycle_graph(5), 2)
    assert is_f_choosable(complete_graph(3), 3)


@settings(max_examples=60, deadline=None)
@given(graphs_with_f(max_n=4))
def test_choosability_matches_all_assignments(Gf):
    G, f = Gf
    if sum(f) > 8:
        return
    assert is_f_choosable(G, f) == oracles.is_f_choosable(G.n, G.edges, f)


def test_bad_assignment_is_bad():
    solver = ChoosabilitySolver()
    classes = solver.bad_assignment(cycle_graph(5), 2)
    lists = [[c for c, cls in enumerate(classes) if cls >> v & 1] for v in range(5)]
    assert all(len(x) == 2 for x in lists)
    assert not oracles.colourable(5, cycle_graph(5).edges, lists)
    assert solver.bad_assignment(cycle_graph(4), 2) is None


def test_palette_cap():
    with pytest.raises(CapExceeded, match="palette"):
        is_f_choosable(complete_graph(5), 4, Limits(palette=19))
    # f > d everywhere: nothing left to enumerate, so the cap never bites
    assert is_f_choosable(complete_graph(5), 5, Limits(palette=1))
    # the cap applies per component after the reduction
    two_k3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_f_choosable(two_k3, 2, Limits(palette=6))
    # K_{2,4} is not 2-choosable; small enough for the default palette
    K24 = Graph.from_edges(6, [(a, b) for a in (0, 1) for b in range(2, 6)])
    assert not is_f_choosable(K24, 2)


def test_online_examples():
    assert is_online_f_choosable(Graph.from_edges(1, []), 1)
    assert is_online_f_choosable(cycle_graph(4), 2)
    assert not is_online_f_choosable(complete_graph(3), 2)
    assert is_online_f_choosable(complete_graph(3), 3)


@settings(max_examples=60, deadline=None)
@given(graphs_with_f(max_n=4))
def test_paint_game_matches_naive_game(Gf):
    G, f = Gf
    assert is_online_f_choosable(G, f) == oracles.online_wins(G.n, G.edges, f)


@settings(max_examples=60, deadline=None)
@given(graphs_with_f(max_n=5))
def test_online_implies_offline_and_is_monotone(Gf):
    G, f = Gf
    game = PaintGame()
    if game.wins(G, f):
        if sum(f) <= 12:
            assert is_f_choosable(G, f)
        for v in range(G.n):
            g = list(f)
            g[v] += 1
            assert game.wins(G, g)


def test_online_cap():
    with pytest.raises(CapExceeded, match="online_vertices"):
        is_online_f_choosable(path_graph(9), 2)


def test_compose_online_cut_examples():
    G = Graph.from_edges(5, list(cycle_graph(4).edges) + [(0, 4), (2, 4)])
    f = [2, 2, 2, 2, 3]
    assert compose_online_cut(G, [4], f)
    assert is_online_f_choosable(G, f)
    assert not compose_online_cut(complete_graph(2), [0], 1)
    # disjoint union: f_H = f
    U = Graph.from_edges(7, list(cycle_graph(4).edges) + [(4, 5), (5, 6), (4, 6)])
    assert compose_online_cut(U, [4, 5, 6], [2, 2, 2, 2, 3, 3, 3])
    assert not compose_online_cut(U, [4, 5, 6], [2, 2, 2, 2, 2, 2, 2])


@settings(max_examples=60, deadline=None)
@given(graphs_with_f(max_n=6, spread=2), st.data())
def test_compose_online_cut_is_sound(Gf, data):
    G, f = Gf
    H = data.draw(st.sets(st.integers(0, G.n - 1), min_size=1))
    if compose_online_cut(G, H, f):
        assert is_online_f_choosable(G, f)
