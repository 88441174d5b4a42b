import random

import pytest
from hypothesis import given, settings

from cyclepack.augment import (
    RotationError,
    RotationPlan,
    attachment_heavy_vertices,
    build_aux_digraph,
    grow_good_packing,
    reachable_sources,
    rotate_augment,
    rotation_plans,
)
from cyclepack.extremal import g0
from cyclepack.graph import Graph, complete_graph, cycle_graph, disjoint_union, empty_graph
from cyclepack.packing import TrianglePacking, greedy_triangles, verify_triangle_packing

from conftest import graphs


def two_triangles(extra=()):
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), *extra]
    return Graph.from_edges(6, edges)


S2 = TrianglePacking(((0, 1, 2), (3, 4, 5)))


def test_single_arc():
    H = build_aux_digraph(two_triangles([(0, 3), (0, 4), (0, 5)]), S2)
    assert H.arcs == {(0, 1)}
    assert H.witness[(0, 1)] == 0


def test_k6_arcs_both_ways():
    H = build_aux_digraph(complete_graph(6), S2)
    assert H.arcs == {(0, 1), (1, 0)}


def test_no_arcs_with_sparse_cross_edges():
    H = build_aux_digraph(two_triangles([(0, 3), (0, 4), (1, 5), (2, 5)]), S2)
    assert H.arcs == frozenset()


def test_aux_digraph_rejects_invalid_packing():
    with pytest.raises(ValueError):
        build_aux_digraph(cycle_graph(6), S2)


def test_reachable_sources():
    H = build_aux_digraph(two_triangles([(0, 3), (0, 4), (0, 5)]), S2)
    assert reachable_sources(H, 1) == {0, 1}
    assert reachable_sources(H, 0) == {0}
    g = Graph.from_edges(9, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (6, 8),
                             (0, 3), (0, 4), (0, 5), (3, 6), (3, 7), (3, 8)])
    H3 = build_aux_digraph(g, TrianglePacking(((0, 1, 2), (3, 4, 5), (6, 7, 8))))
    assert reachable_sources(H3, 2) == {0, 1, 2}
    with pytest.raises(ValueError):
        reachable_sources(H3, 7)


def test_attachment_heavy_examples():
    assert attachment_heavy_vertices(complete_graph(5), [0, 1, 2], 1) == {3, 4}
    assert attachment_heavy_vertices(cycle_graph(6), [0, 1, 2], 1) == frozenset()
    star = Graph.from_edges(6, [(0, v) for v in range(1, 6)])
    assert attachment_heavy_vertices(star, [], 0) == frozenset()
    with pytest.raises(ValueError):
        attachment_heavy_vertices(complete_graph(5), [0, 1], 1)


def j1_instance():
    # z=0 p=1 q=2 w=3 x=4 y=5
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2), (4, 5), (4, 0), (5, 0)])


def test_rotate_j1():
    g = j1_instance()
    S = TrianglePacking(((0, 1, 2),))
    out = rotate_augment(g, S, RotationPlan((0,), (), 3, (4, 5, 0)))
    assert set(map(frozenset, out.triangles)) == {frozenset({1, 2, 3}), frozenset({0, 4, 5})}


def test_rotate_j2():
    a, b, c, z, p, q, w, x, y = range(9)
    edges = [(a, b), (b, c), (a, c), (z, p), (p, q), (z, q), (a, z), (a, p), (a, q),
             (w, a), (w, b), (w, c), (x, y), (x, z), (y, z)]
    g = Graph.from_edges(9, edges)
    S = TrianglePacking(((a, b, c), (z, p, q)))
    out = rotate_augment(g, S, RotationPlan((0, 1), (a,), w, (x, y, z)))
    assert out.triangles == ((b, c, w), (a, p, q), (z, x, y))
    assert verify_triangle_packing(g, out)


def test_rotate_rejects_w_inside_packing():
    g = j1_instance()
    S = TrianglePacking(((0, 1, 2),))
    with pytest.raises(RotationError):
        rotate_augment(g, S, RotationPlan((0,), (), 1, (4, 5, 0)))


def test_rotate_rejects_high_x():
    g = j1_instance()
    S = TrianglePacking(((0, 1, 2),))
    with pytest.raises(RotationError):
        rotate_augment(g, S, RotationPlan((0,), (), 3, (4, 5, 0)), k=1)


def test_grow_examples():
    assert len(grow_good_packing(g0(2), 2)) == 0
    assert len(grow_good_packing(disjoint_union(complete_graph(4), complete_graph(4)), 2)) == 0
    assert len(grow_good_packing(j1_instance(), 3)) == 2


def test_grow_uses_rotation():
    g = j1_instance()
    # greedy alone stops at one triangle
    assert len(greedy_triangles(g.triangles())) == 1
    assert next(rotation_plans(g, TrianglePacking(((0, 1, 2),)), 3)).w == 3


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_grow_is_valid_and_good(g):
    for k in (2, 3):
        p = grow_good_packing(g, k)
        assert verify_triangle_packing(g, p)
        assert all(min(g.degree(v) for v in t) <= 2 * k - 2 for t in p.triangles)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_found_plans_rotate(g):
    S = TrianglePacking(tuple(greedy_triangles(g.triangles())))
    for plan in list(rotation_plans(g, S, 3))[:5]:
        out = rotate_augment(g, S, plan, k=3)
        assert len(out) == len(S) + 1
        assert verify_triangle_packing(g, out)


def test_empty_packing_has_no_plans():
    assert list(rotation_plans(empty_graph(3), TrianglePacking(()), 2)) == []


def random_instance(rng: random.Random):
    """Graph, packing and valid plan built around a random rotation path."""
    s = rng.randint(1, 6)
    j = rng.randint(1, s)
    n = 3 * s + 3 + rng.randint(0, 4)
    order = list(range(n))
    rng.shuffle(order)
    tris = [tuple(sorted(order[3 * c: 3 * c + 3])) for c in range(s)]
    w, x, y = order[3 * s: 3 * s + 3]
    edges = set()
    for t in tris:
        edges |= {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])}
    path = rng.sample(range(s), j)
    pivots = []
    for a, b in zip(path, path[1:]):
        piv = rng.choice(tris[a])
        pivots.append(piv)
        edges |= {(piv, u) for u in tris[b]}
    edges |= {(w, u) for u in tris[path[0]]}
    z = rng.choice(tris[path[-1]])
    edges |= {(x, y), (x, z), (y, z)}
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(range(n), 2)
        edges.add((u, v))
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    g = Graph.from_edges(n, sorted(edges))
    return g, TrianglePacking(tuple(tris)), RotationPlan(tuple(path), tuple(pivots), w, (x, y, z))


def check_rotation(g, S, plan):
    out = rotate_augment(g, S, plan)
    assert len(out) == len(S) + 1
    assert verify_triangle_packing(g, out)
    for c in plan.path:
        assert len(set(out.triangles[c]) & set(S.triangles[c])) == 2
    for c in range(len(S)):
        if c not in plan.path:
            assert out.triangles[c] == S.triangles[c]


def test_random_constructed_plans():
    rng = random.Random(11)
    for _ in range(200):
        check_rotation(*random_instance(rng))


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9))
def test_exact_grow_matches_brute_force(g):
    from oracles import brute_triangles, edges_of, max_disjoint

    for k in (2, 3):
        p = grow_good_packing(g, k, exact=True)
        assert verify_triangle_packing(g, p)
        assert len(p) == max_disjoint(brute_triangles(g.n, edges_of(g), k))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_new_triangle_is_good(g):
    k = 3
    good = [t for t in g.triangles() if min(g.degree(v) for v in t) <= 2 * k - 2]
    S = TrianglePacking(tuple(greedy_triangles(good)))
    for plan in list(rotation_plans(g, S, k))[:5]:
        out = rotate_augment(g, S, plan, k=k)
        assert min(g.degree(v) for v in out.triangles[-1]) <= 2 * k - 2
