import functools
import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.cuts import Cut, CutError, complex_graph, crosses, enumerate_cuts, make_cut
from cutcomplex.pants import (
    PantsDecomposition,
    adjacency_graph,
    adjacent,
    crossing_set,
    enumerate_pants_finite,
    is_outermost,
    is_peripheral_pair,
    peripheral_pair_check,
    peripheral_pair_via_links,
    restrict_pants,
    standard_cantor_pants,
    valence_criterion_check,
    valence_one_check,
    verify_pants_bounded,
)
from cutcomplex.space import Cantor, Convergent, Finite, finite_points


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@pytest.mark.parametrize("n", [5, 6, 7])
def test_pants_are_maximal_cliques(n):
    g = complex_graph(Finite(n))
    oracle = {frozenset(g.vertices[i] for i in c) for c in nx.find_cliques(nx.Graph(g.edges()))}
    ours = {frozenset(p.cuts) for p in enumerate_pants_finite(n)}
    assert ours == oracle
    assert len(ours) == double_factorial(2 * n - 5)
    assert all(len(p) == n - 3 for p in enumerate_pants_finite(n))


def test_frozen_pants_counts():
    # (2n-5)!! for n = 5..8, confirmed against networkx above for n <= 7
    assert [len(enumerate_pants_finite(n)) for n in (5, 6, 7, 8)] == [15, 105, 945, 10395]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_standard_cantor_pants_size(d):
    # γ_0 and γ_1 name the same cut
    assert len(standard_cantor_pants(d)) == 2 ** (d + 1) - 3


def test_pants_validation():
    a = make_cut(Finite(6), finite_points(6, [0, 1]).strings)
    b = make_cut(Finite(6), finite_points(6, [1, 2]).strings)
    with pytest.raises(CutError):
        PantsDecomposition(Finite(6), (a, b))
    with pytest.raises(CutError):
        PantsDecomposition(Finite(6), (a, a))
    with pytest.raises(CutError):
        PantsDecomposition(Finite(6), (make_cut(Finite(6), finite_points(6, [0]).strings),))


def test_bounded_certificate_depth_six():
    rep = verify_pants_bounded(standard_cantor_pants(6), Cantor(), 4)
    assert rep.ok
    assert rep.probes_checked == 32738
    assert rep.max_crossing == 13


def test_bounded_certificate_small_probe_exhaustive():
    # brute force: every depth-3 probe outside Γ crosses some member
    pants = standard_cantor_pants(4)
    members = set(pants.cuts)
    for probe in enumerate_cuts(Cantor(), 3):
        if probe not in members:
            assert crossing_set(probe, pants)


def test_restrictions():
    conv = restrict_pants(Convergent(), standard_cantor_pants(3))
    assert conv.provenance == ("11", "111")
    assert len(restrict_pants(Finite(4), standard_cantor_pants(3))) == 1


def test_finite_adjacency_witnesses():
    pants = enumerate_pants_finite(5)[0]
    ag = adjacency_graph(pants)
    for (i, j), w in ag.witnesses.items():
        assert crossing_set(w, pants) == [i, j]
    for i, j in itertools.combinations(range(len(pants)), 2):
        w = adjacent(pants, i, j, Finite(5))
        assert (w is not None) == bool(ag.adj[i] >> j & 1)


def test_infinite_adjacency_witness():
    pants = standard_cantor_pants(2)
    i = pants.cuts.index(Cut.from_side(pants.cuts[0].first))
    w = None
    for j in range(len(pants)):
        if j != i:
            w = w or adjacent(pants, i, j, Cantor(), 4)
    assert w is not None
    assert len(crossing_set(w, pants)) == 2


def test_valence_lemma():
    r7 = valence_criterion_check(7)
    assert r7.decompositions == 945 and r7.biconditional_holds
    r6 = valence_criterion_check(6)
    assert not r6.biconditional_holds and r6.valence_at_most_two_always


_pants = functools.cache(enumerate_pants_finite)


@given(st.integers(6, 7), st.data())
def test_adjacency_valence_at_most_two_for_outermost(n, data):
    pants = data.draw(st.sampled_from(_pants(n)))
    ag = adjacency_graph(pants)
    for i, c in enumerate(pants.cuts):
        if is_outermost(c):
            assert ag.valence(i) <= 2


def test_peripheral_pairs():
    r7 = peripheral_pair_check(7)
    assert (r7.pairs_checked, r7.peripheral_pairs, r7.ok) == (70, 70, True)
    r8 = peripheral_pair_check(8)
    assert (r8.pairs_checked, r8.peripheral_pairs, r8.ok) == (560, 280, True)


def test_peripheral_pair_via_links_matches_definition():
    g = complex_graph(Finite(7))
    a = make_cut(Finite(7), finite_points(7, [0, 1, 2]).strings)
    b = make_cut(Finite(7), finite_points(7, [0, 1, 2, 3]).strings)
    assert is_peripheral_pair(a, b)
    assert peripheral_pair_via_links(g, a, b) == 2
    with pytest.raises(CutError):
        is_peripheral_pair(a, a)
    crossing = make_cut(Finite(7), finite_points(7, [2, 3, 4]).strings)
    assert crosses(a, crossing)
    with pytest.raises(CutError):
        is_peripheral_pair(a, crossing)


def test_valence_one():
    r = valence_one_check(7)
    assert r.ok and r.cases == 1575
