import pytest

from cyclepack.classify import classify, sk_graph
from cyclepack.extremal import FAMILIES, FamilySpec, expected_profile, g0, generate, wheel
from cyclepack.graph import complete_bipartite, cycle_graph
from cyclepack.packing import max_cycle_packing

from oracles import cycle_packing_number, edges_of


def test_g0_numbering_and_size():
    g = generate(FamilySpec("g0", 2))
    assert (g.n, g.m) == (6, 11)
    assert g.neighbors(5) == [0, 1]
    assert not g.has_edge(0, 1)


def test_wheel_degrees():
    g = generate(FamilySpec("wheel", n=7))
    assert g.degree(0) == 6 and all(g.degree(v) == 3 for v in range(1, 7))


def test_sk5_size():
    g = generate(FamilySpec("sk", m=5))
    assert (g.n, g.m) == (6, 11)
    assert g == sk_graph(5)


def test_bipartite_sharp_is_kn():
    g = generate(FamilySpec("bipartite_sharp", 2, 12))
    assert g == complete_bipartite(9, 3)


def test_clique_minus_layout():
    g = generate(FamilySpec("clique_minus", 2, 8))
    assert all(not g.has_edge(u, v) for u in range(5) for v in range(u + 1, 5))
    assert g.min_degree == 3


def test_kky_layout():
    g = generate(FamilySpec("kky_exception", 3))
    assert g.degrees == (5,) * 6 + (6,) * 3


def test_expected_profile_examples():
    e = expected_profile(FamilySpec("g1", 2))
    assert (e.n, e.h_minus_ell, e.c_exact) == (8, 4, 1)
    e = expected_profile(FamilySpec("g0", 3))
    assert (e.n, e.h_minus_ell, e.c_exact) == (9, 7, 2)
    e = expected_profile(FamilySpec("kky_exception", 3))
    assert (e.n, e.h_minus_ell, e.c_exact) == (9, 3, 2)


@pytest.mark.parametrize("spec", [
    FamilySpec("g0", 2), FamilySpec("g0", 3), FamilySpec("g1", 2), FamilySpec("g1", 3),
    FamilySpec("clique_minus", 2, 7), FamilySpec("bipartite_sharp", 2, 8),
    FamilySpec("kky_exception", 3), FamilySpec("wheel", n=6), FamilySpec("sk", m=6),
    FamilySpec("complete", n=7), FamilySpec("complete_bipartite", n=3, m=4),
    FamilySpec("cycle", n=5),
])
def test_profiles_match_generated_graphs(spec):
    g = generate(spec)
    e = expected_profile(spec)
    assert g.n == e.n
    assert classify(g, e.k).h_minus_ell == e.h_minus_ell
    if e.c_exact is not None:
        assert cycle_packing_number(g.n, edges_of(g)) == e.c_exact
        assert max_cycle_packing(g) == e.c_exact


@pytest.mark.parametrize("spec", [
    FamilySpec("g0"), FamilySpec("g0", 1), FamilySpec("clique_minus", 2, 5),
    FamilySpec("bipartite_sharp", 2, 7), FamilySpec("wheel", n=3), FamilySpec("sk", m=2),
    FamilySpec("cycle", n=2), FamilySpec("complete_bipartite", n=2),
])
def test_invalid_parameters(spec):
    with pytest.raises(ValueError):
        generate(spec)


def test_unknown_family():
    with pytest.raises(ValueError):
        FamilySpec("petersen")
    assert "wheel" in FAMILIES


def test_helpers_agree_with_generate():
    assert wheel(5) == generate(FamilySpec("wheel", n=5))
    assert g0(3) == generate(FamilySpec("g0", 3))
    assert generate(FamilySpec("cycle", n=6)) == cycle_graph(6)
