import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.cuts import (
    Cut,
    CutError,
    build_graph,
    complex_graph,
    components,
    compatible,
    crosses,
    diameter,
    enumerate_cuts,
    is_nonperipheral,
    join_split,
    link,
    link_intersection,
    make_cut,
    masks_cross,
    opposite_graph,
    short_path,
    verify_link_join,
)
from cutcomplex.space import Cantor, Convergent, Finite, Frame, Union, canonicalize, finite_points


def brute_cut_count(n):
    # unordered bipartitions with both sides of size >= 2
    seen = set()
    for r in range(2, n - 1):
        for side in itertools.combinations(range(n), r):
            other = tuple(i for i in range(n) if i not in side)
            seen.add(min(side, other))
    return len(seen)


@pytest.mark.parametrize("n", range(1, 10))
def test_finite_cut_counts(n):
    assert len(enumerate_cuts(Finite(n))) == brute_cut_count(n)


def test_frozen_cut_counts():
    # frozen from brute_cut_count
    assert [brute_cut_count(n) for n in range(4, 10)] == [3, 10, 25, 56, 119, 246]


def test_four_points_three_isolated_vertices():
    g = complex_graph(Finite(4))
    assert len(g) == 3 and g.edge_count() == 0
    assert diameter(g) is None
    assert len(components(g)) == 3


def test_petersen():
    g = complex_graph(Finite(5))
    h = nx.Graph(g.edges())
    assert nx.is_isomorphic(h, nx.petersen_graph())
    assert diameter(g) == 2


def _set_cross(a, b, n):
    full = set(range(n))
    return all(q for q in (a & b, a - b, b - a, full - a - b))


@given(st.integers(4, 8), st.data())
def test_crossing_matches_set_oracle(n, data):
    a = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    b = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    ca, cb = Cut.from_side(finite_points(n, a)), Cut.from_side(finite_points(n, b))
    assert crosses(ca, cb) == _set_cross(a, b, n)
    assert crosses(ca, cb) == crosses(cb, ca)
    assert compatible(ca, cb) != crosses(ca, cb)
    ma = sum(1 << i for i in a)
    mb = sum(1 << i for i in b)
    assert masks_cross(ma, mb, (1 << n) - 1) == _set_cross(a, b, n)


@given(st.integers(4, 8), st.data())
def test_cut_is_unordered(n, data):
    a = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    u = finite_points(n, a)
    assert Cut.from_side(u) == Cut.from_side(u.complement())
    assert is_nonperipheral(Cut.from_side(u)) == (2 <= len(a) <= n - 2)


def test_degenerate_cut_rejected():
    with pytest.raises(CutError):
        Cut.from_side(Cantor().whole())


@pytest.mark.parametrize("depth,count", [(1, 1), (2, 7), (3, 127)])
def test_cantor_truncation_counts(depth, count):
    # every union of depth-d cylinders except the trivial ones, halved
    assert len(enumerate_cuts(Cantor(), depth)) == count == 2 ** (2**depth - 1) - 1


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_convergent_truncation_matches_oracle(depth):
    frame = Frame(Convergent(), depth)
    expected = 0
    for m in range(1, 1 << (frame.size - 1)):
        sides = (m, frame.full & ~m)
        if all(frame.count(s).at_least(2) for s in sides):
            expected += 1
    assert len(enumerate_cuts(Convergent(), depth)) == expected


@pytest.mark.parametrize("depth", [2, 3])
def test_infinite_diameter_two(depth):
    assert diameter(complex_graph(Cantor(), depth)) == 2
    assert diameter(complex_graph(Convergent(), depth + 1)) == 2


@given(st.integers(5, 8), st.data())
def test_short_path_valid(n, data):
    cuts = enumerate_cuts(Finite(n))
    a = data.draw(st.sampled_from(cuts))
    b = data.draw(st.sampled_from(cuts))
    path = short_path(a, b)
    assert path[0] == a and path[-1] == b
    assert len(path) - 1 <= 4
    assert all(x != y and compatible(x, y) and is_nonperipheral(x) for x, y in zip(path, path[1:]))


@given(st.data())
def test_short_path_infinite_at_most_two(data):
    cuts = enumerate_cuts(Cantor(), 3)
    a = data.draw(st.sampled_from(cuts))
    b = data.draw(st.sampled_from(cuts))
    path = short_path(a, b)
    assert len(path) - 1 <= 2
    assert all(compatible(x, y) for x, y in zip(path, path[1:]))


def test_build_graph_rejects_bad_input():
    with pytest.raises(CutError):
        build_graph([])
    c = enumerate_cuts(Finite(5))[0]
    with pytest.raises(CutError):
        build_graph([c, c])


def test_vertex_order_is_canonical():
    cuts = enumerate_cuts(Finite(6))
    g1 = build_graph(cuts)
    g2 = build_graph(list(reversed(cuts)))
    assert g1.vertices == g2.vertices and g1.adj == g2.adj


def test_link_and_opposite():
    g = complex_graph(Finite(6))
    v = g.vertices[0]
    lk = link(g, v)
    assert len(lk) == g.degree(0)
    assert all(compatible(v, w) for w in lk.vertices)
    both = link_intersection(g, [g.vertices[0], lk.vertices[0]])
    assert set(both.vertices) <= set(lk.vertices)
    opp = opposite_graph(lk)
    assert opp.kind == "opposite"
    assert opp.edge_count() + lk.edge_count() == len(lk) * (len(lk) - 1) // 2


def test_join_split_and_link_join():
    spec = Finite(7)
    gamma = make_cut(spec, [s for s in finite_points(7, [0, 1, 2]).strings])
    left, right = join_split(spec, gamma)
    assert {left.size.value, right.size.value} == {4, 5}
    assert verify_link_join(spec, gamma, 6)


def test_link_join_cantor():
    gamma = Cut.from_side(canonicalize(Cantor(), ["0"]))
    assert verify_link_join(Cantor(), gamma, 3)


def test_mixed_space_truncation():
    g = complex_graph(Union(Cantor(), Finite(3)), 2)
    assert len(g) > 0 and diameter(g) == 2
