import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex import graphs


@st.composite
def random_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return adj, g


@given(st.integers(0, 2**40))
def test_bits_and_popcount(m):
    assert list(graphs.bits(m)) == [i for i in range(41) if m >> i & 1]
    assert graphs.popcount(m) == bin(m).count("1")


@given(random_graphs())
def test_edge_count_and_simple(args):
    adj, g = args
    assert graphs.edge_count(adj) == g.number_of_edges()
    assert graphs.is_simple(adj)


@given(random_graphs())
def test_components_match_networkx(args):
    adj, g = args
    ours = sorted(sorted(c) for c in graphs.components(adj))
    theirs = sorted(sorted(c) for c in nx.connected_components(g))
    assert ours == theirs


@given(random_graphs())
def test_diameter_matches_networkx(args):
    adj, g = args
    d = graphs.diameter(adj)
    if nx.is_connected(g):
        assert d == (nx.diameter(g) if len(adj) > 1 else d)
    else:
        assert d is None


@given(random_graphs(), st.data())
def test_shortest_path_is_shortest(args, data):
    adj, g = args
    s = data.draw(st.integers(0, len(adj) - 1))
    t = data.draw(st.integers(0, len(adj) - 1))
    path = graphs.shortest_path(adj, s, t)
    if nx.has_path(g, s, t):
        assert path[0] == s and path[-1] == t
        assert len(path) - 1 == nx.shortest_path_length(g, s, t)
        assert all(adj[a] >> b & 1 for a, b in zip(path, path[1:]))
        assert graphs.bfs_distances(adj, s)[t] == len(path) - 1
    else:
        assert path is None


@given(random_graphs())
def test_cliques_match_networkx(args):
    adj, g = args
    theirs = sorted(sorted(c) for c in nx.find_cliques(g))
    assert sorted(sorted(c) for c in graphs.maximal_cliques(adj)) == theirs
    assert graphs.max_clique_size(adj) == max(len(c) for c in theirs)


@given(random_graphs())
def test_triangles_and_opposite(args):
    adj, g = args
    assert graphs.triangle_free(adj) == (sum(nx.triangles(g).values()) == 0)
    opp = graphs.opposite(adj)
    assert graphs.edge_count(opp) == nx.complement(g).number_of_edges()
    assert graphs.opposite(opp) == list(adj)


@given(random_graphs(), st.data())
def test_induced_subgraph(args, data):
    adj, g = args
    vs = data.draw(st.lists(st.integers(0, len(adj) - 1), unique=True))
    sub = graphs.induced(adj, vs)
    assert graphs.edge_count(sub) == g.subgraph(vs).number_of_edges()


def test_regular():
    cycle = [0b0110, 0b1001, 0b1001, 0b0110]
    assert graphs.is_regular(cycle, 2)
    assert not graphs.is_regular(cycle, 3)
