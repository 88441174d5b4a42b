import pytest
from hypothesis import given, settings

from cyclepack.extremal import g0, kky_exception, wheel
from cyclepack.graph import complete_bipartite, complete_graph, cycle_graph, empty_graph, path_graph
from cyclepack.packing import (
    Config,
    CyclePacking,
    ExactLimitError,
    SearchExhausted,
    Status,
    TrianglePacking,
    exact_cycle_search,
    find_disjoint_cycles,
    greedy_cycle_packing,
    max_cycle_packing,
    max_triangle_packing,
    maximum_cycle_packing,
    normalize_cycle,
    remove_packing,
    shortest_cycle,
    triangle_number,
    verify_cycle_packing,
    verify_triangle_packing,
)

from conftest import graphs
from oracles import brute_triangles, cycle_packing_number, edges_of, max_disjoint


def test_verify_cycle_packing_examples():
    k6 = complete_graph(6)
    assert verify_cycle_packing(k6, [[0, 1, 2], [3, 4, 5]])
    assert not verify_cycle_packing(k6, [[0, 1, 2], [2, 3, 4]])
    assert not verify_cycle_packing(cycle_graph(5), [[0, 1, 2]])


def test_verify_rejects_short_or_repeated():
    k4 = complete_graph(4)
    assert not verify_cycle_packing(k4, [[0, 1]])
    assert not verify_cycle_packing(k4, [[0, 1, 0]])
    assert not verify_cycle_packing(k4, [[0, 1, 9]])


def test_verify_triangle_packing():
    k6 = complete_graph(6)
    assert verify_triangle_packing(k6, [(0, 1, 2), (3, 4, 5)])
    assert not verify_triangle_packing(k6, [(0, 1, 2), (2, 3, 4)])
    assert not verify_triangle_packing(cycle_graph(6), [(0, 1, 2)])


def test_normalize_cycle():
    assert normalize_cycle([3, 1, 2]) == normalize_cycle([1, 3, 2]) == (1, 2, 3)
    assert CyclePacking.of([[2, 0, 1]]).to_json() == {"cycles": [[0, 1, 2]]}


def test_find_k6():
    r = find_disjoint_cycles(complete_graph(6), 2)
    assert r.status is Status.FOUND
    assert len(r.packing) == 2 and verify_cycle_packing(complete_graph(6), r.packing)


def test_find_g0_not_exist():
    for mode in ("exact", "heuristic"):
        assert find_disjoint_cycles(g0(2), 2, mode=mode).status is Status.NOT_EXIST


def test_find_zero_cycles():
    r = find_disjoint_cycles(path_graph(3), 0)
    assert r.found and len(r.packing) == 0


def test_budget_exhausted():
    g = complete_graph(12)
    r = exact_cycle_search(g, 4, budget=1)
    assert r.status is Status.EXHAUSTED


def test_kernel_size_cap():
    with pytest.raises(ValueError):
        exact_cycle_search(empty_graph(64), 1)


def test_max_cycle_packing_examples():
    assert max_cycle_packing(complete_graph(5)) == 1
    assert max_cycle_packing(wheel(7)) == 1
    assert max_cycle_packing(kky_exception(3)) == 2
    assert max_cycle_packing(empty_graph(0)) == 0


def test_exact_limit():
    with pytest.raises(ExactLimitError):
        max_cycle_packing(complete_graph(9), Config(exact_limit=8))


def test_maximum_raises_when_budget_runs_out():
    with pytest.raises(SearchExhausted):
        maximum_cycle_packing(complete_bipartite(3, 9), Config(node_budget=1))


def test_config_validation():
    with pytest.raises(ValueError):
        Config(exact_limit=2)
    with pytest.raises(ValueError):
        Config(jobs=0)


def test_triangle_packing_examples():
    assert len(max_triangle_packing(complete_graph(6))) == 2
    assert len(max_triangle_packing(cycle_graph(6))) == 0
    assert len(max_triangle_packing(g0(2), "good", 2)) == 0


def test_triangle_packing_union():
    p = TrianglePacking(((0, 1, 2), (3, 4, 5)))
    assert p.union == frozenset(range(6))
    assert len(p.as_cycles()) == 2


def test_good_filter_requires_k():
    with pytest.raises(ValueError):
        max_triangle_packing(complete_graph(4), "good")


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_cycle_packing_matches_oracle(g):
    p = maximum_cycle_packing(g)
    assert verify_cycle_packing(g, p)
    assert len(p) == cycle_packing_number(g.n, edges_of(g))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_triangle_packing_matches_brute_force(g):
    edges = edges_of(g)
    assert triangle_number(g) == max_disjoint(brute_triangles(g.n, edges))
    good = max_triangle_packing(g, "good", 2)
    assert verify_triangle_packing(g, good)
    assert len(good) == max_disjoint(brute_triangles(g.n, edges, k=2))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9))
def test_heuristic_agrees_with_exact(g):
    for k in (1, 2, 3):
        a = find_disjoint_cycles(g, k, mode="exact").status
        b = find_disjoint_cycles(g, k, mode="heuristic").status
        assert a == b


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9))
def test_shortest_cycle_is_girth(g):
    c = shortest_cycle(g)
    tri = brute_triangles(g.n, edges_of(g))
    if c is None:
        assert cycle_packing_number(g.n, edges_of(g)) == 0
        return
    assert verify_cycle_packing(g, [c])
    if tri:
        assert len(c) == 3


@given(graphs(max_n=9))
def test_greedy_packing_valid(g):
    p = greedy_cycle_packing(g)
    assert verify_cycle_packing(g, p)


def test_remove_packing():
    g = complete_graph(7)
    h, mapping = remove_packing(g, CyclePacking.of([[0, 1, 2]]))
    assert h == complete_graph(4)
    assert sorted(mapping) == [3, 4, 5, 6]
