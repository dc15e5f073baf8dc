import itertools

import numpy as np
import pytest
from graphs import path_with_chord, star
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import dijkstra_all_pairs
from strategies import connected_graphs

from centdian.errors import DisconnectedGraph, EmptySet, InvalidInstance, NegativeWeight
from centdian.graph import Graph, distance_to_set, evaluate, metric_closure


def test_closure_prefers_two_hop_path():
    dm = metric_closure(Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)]))
    assert dm[0, 2] == 2


def test_closure_path_beats_heavy_chord():
    dm = metric_closure(path_with_chord())
    assert dm[0, 3] == 3


def test_closure_single_vertex():
    dm = metric_closure(Graph(1, []))
    assert dm.d.tolist() == [[0.0]]


def test_closure_is_read_only():
    dm = metric_closure(path_with_chord())
    with pytest.raises(ValueError):
        dm.d[0, 1] = 7


def test_disconnected_graph_rejected():
    with pytest.raises(DisconnectedGraph):
        Graph(4, [(0, 1, 1), (2, 3, 1)])


@pytest.mark.parametrize("edges, exc", [
    ([(0, 1, -1)], NegativeWeight),
    ([(0, 0, 1), (0, 1, 1)], InvalidInstance),
    ([(0, 2, 1)], InvalidInstance),
])
def test_invalid_graphs(edges, exc):
    with pytest.raises(exc):
        Graph(2, edges)


def test_distance_to_set():
    dm = metric_closure(Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]))
    assert distance_to_set(dm, 2, {2, 0}) == 0
    assert distance_to_set(dm, 3, {0, 1}) == 2
    sdm = metric_closure(star(4))
    assert distance_to_set(sdm, 1, {2}) == 2
    with pytest.raises(EmptySet):
        distance_to_set(dm, 0, set())


def test_evaluate_examples():
    dm = metric_closure(path_with_chord())
    assert (evaluate(dm, range(4)).eccentricity, evaluate(dm, range(4)).median) == (0, 0)
    ev = evaluate(dm, {1})
    assert (ev.eccentricity, ev.median, ev.centdian) == (2, 4, 6)
    ev = evaluate(dm, {0, 2})
    assert (ev.eccentricity, ev.median, ev.centdian) == (1, 2, 3)
    ev = evaluate(metric_closure(star(4)), {0})
    assert (ev.eccentricity, ev.median, ev.centdian) == (1, 4, 5)
    with pytest.raises(EmptySet):
        evaluate(dm, [])


@settings(max_examples=150, deadline=None)
@given(connected_graphs())
def test_closure_matches_dijkstra(g):
    dm = metric_closure(g)
    ref = dijkstra_all_pairs(g.n, g.edges)
    assert np.array_equal(dm.d, np.array(ref))
    assert np.array_equal(dm.d, dm.d.T)
    assert np.all(np.diag(dm.d) == 0)


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=7))
def test_triangle_inequality(g):
    d = metric_closure(g).d
    for i, j, k in itertools.product(range(g.n), repeat=3):
        assert d[i, k] <= d[i, j] + d[j, k] + 1e-9


@settings(max_examples=100, deadline=None)
@given(connected_graphs(min_n=2), st.data())
def test_evaluation_monotone_under_growth(g, data):
    dm = metric_closure(g)
    h2 = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    h1 = data.draw(st.sets(st.sampled_from(sorted(h2)), min_size=1))
    e1, e2 = evaluate(dm, h1), evaluate(dm, h2)
    assert e2.eccentricity <= e1.eccentricity
    assert e2.median <= e1.median


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_singleton_matches_matrix_row(g):
    dm = metric_closure(g)
    for v in range(g.n):
        ev = evaluate(dm, {v})
        assert ev.median == pytest.approx(dm.d[:, v].sum())
        assert ev.eccentricity == dm.d[:, v].max()
        assert ev.centdian == ev.eccentricity + ev.median
