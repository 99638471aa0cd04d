import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcount.caps import CapExceeded
from entcount.graphs import (
    Graph,
    GraphFormatError,
    LatticeBody,
    SetFamily,
    ZeroOneMatrix,
    canonical_form,
    canonical_form_bruteforce,
    canonical_graph,
    complete,
    complete_bipartite,
    cycle,
    empty,
    enumerate_bipartite_regular,
    enumerate_graphs,
    enumerate_regular,
    h_ind,
    h_wr,
    is_isomorphic,
    k_nd,
    make_named,
    parse_graph,
    parse_matrix,
    parse_named,
    prism,
    read_graph,
    write_graph,
    write_matrix,
)


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def from_nx(h):
    mapping = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(h.number_of_nodes(), [(mapping[u], mapping[v]) for u, v in h.edges()])


@st.composite
def graphs(draw, max_n=8, loops=False):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen, loops_allowed=loops)


# ---------------------------------------------------------------------------
# the Graph type

def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))


def test_graph_rejects_loops_unless_allowed():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    assert Graph.from_edges(2, [(0, 0)], loops_allowed=True).has_loop(0)


def test_graph_rejects_edges_inside_a_bipartition_class():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1)], bipartition=0b011)


def test_graph_vertex_cap():
    with pytest.raises(CapExceeded):
        empty(65)


def test_loop_counts_once_in_degree():
    assert h_wr().degrees() == [2, 3, 2]


def test_adjacency_matrix_puts_loops_on_diagonal():
    assert h_ind().adjacency_matrix().to_lists() == [[0, 1], [1, 1]]


# ---------------------------------------------------------------------------
# named graphs

def test_k22_shape():
    g = make_named("k_dd", 2)
    assert (g.n, g.num_edges, g.bipartition is not None) == (4, 4, True)


def test_h_ind_shape():
    g = h_ind()
    assert (g.n, g.num_edges, len(g.loop_vertices())) == (2, 1, 1)


def test_h_wr_is_looped_path():
    g = h_wr()
    assert g.edges() == [(0, 1), (1, 2)] and g.loop_vertices() == [0, 1, 2]


def test_k_nd_is_disjoint_copies():
    g = parse_named("knd:6,3")
    assert g.n == 12 and g.num_edges == 18 and g.is_regular(3)
    assert sorted(bin(c).count("1") for c in g.components()) == [6, 6]


def test_k_nd_needs_divisibility():
    with pytest.raises(ValueError):
        k_nd(5, 3)


def test_parse_named_variants():
    assert parse_named("kn:5").num_edges == 10
    assert parse_named("cycle:6").is_regular(2)
    assert parse_named("k_ab:2,3").num_edges == 6
    with pytest.raises(ValueError):
        parse_named("petersen")


# ---------------------------------------------------------------------------
# canonical form

def test_canonical_form_same_for_relabelled_triangle():
    forms = {canonical_form(complete(3).relabel(p)) for p in ([0, 1, 2], [2, 0, 1], [1, 2, 0])}
    assert len(forms) == 1


def test_canonical_form_separates_c4_from_two_edges():
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert canonical_form(cycle(4)) != canonical_form(two_k2)


def test_canonical_form_separates_the_cubic_graphs_on_six_vertices():
    assert canonical_form(complete_bipartite(3, 3)) != canonical_form(prism(3))


def test_canonical_form_sees_loops():
    a = Graph.from_edges(2, [(0, 1), (0, 0)], loops_allowed=True)
    b = Graph.from_edges(2, [(0, 1)], loops_allowed=True)
    assert canonical_form(a) != canonical_form(b)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8, loops=True), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_canonical_form_matches_exhaustive_permutation_search(g):
    # both are complete invariants, so they agree on whether two graphs match
    h = Graph.from_edges(g.n, g.edges()[:-1]) if g.edges() else g
    assert (canonical_form(g) == canonical_form(h)) == (canonical_form_bruteforce(g) == canonical_form_bruteforce(h))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_agrees_with_networkx(g, h):
    if g.n != h.n:
        return
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_form_hundred_relabellings():
    rng = random.Random(7)
    for g in [prism(3), complete_bipartite(3, 4), parse_named("knd:4,2"), h_wr()]:
        base = canonical_form(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == base


def test_canonical_graph_is_a_fixed_point():
    g = canonical_graph(prism(3))
    assert canonical_graph(g) == g


# ---------------------------------------------------------------------------
# enumeration

def test_enumerate_regular_small_cases():
    assert len(list(enumerate_regular(4, 3))) == 1
    six = list(enumerate_regular(6, 3))
    assert len(six) == 2
    assert {canonical_form(g) for g in six} == {canonical_form(complete_bipartite(3, 3)), canonical_form(prism(3))}


def test_enumerate_regular_cubic_on_eight():
    graphs8 = list(enumerate_regular(8, 3))
    assert len(graphs8) == 6                                 # including 2 K4
    assert sum(1 for g in graphs8 if g.is_connected()) == 5


def test_enumerate_regular_parity_error():
    with pytest.raises(ValueError):
        list(enumerate_regular(5, 3))


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_regular_matches_networkx_atlas(n):
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n]
    for d in range(n):
        if n * d % 2:
            continue
        expected = sum(1 for h in atlas if all(deg == d for _, deg in h.degree()))
        assert len(list(enumerate_regular(n, d))) == expected


def test_enumerate_regular_n8_matches_filtered_all_graphs():
    all8 = list(enumerate_graphs(8))
    for d in range(8):
        if 8 * d % 2:
            continue
        expected = sum(1 for g in all8 if g.is_regular(d))
        assert len(list(enumerate_regular(8, d))) == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_graphs_matches_networkx_atlas(n):
    expected = sum(1 for h in nx.graph_atlas_g() if h.number_of_nodes() == n)
    assert len(list(enumerate_graphs(n))) == expected


def test_enumerated_graphs_are_pairwise_non_isomorphic():
    gs = [to_nx(g) for g in enumerate_regular(10, 3)]
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            assert not nx.is_isomorphic(gs[i], gs[j])


def test_enumerate_bipartite_small_cases():
    assert len(list(enumerate_bipartite_regular(2, 2))) == 1
    three = list(enumerate_bipartite_regular(3, 2))
    assert len(three) == 1 and is_isomorphic(three[0], cycle(6))
    four = list(enumerate_bipartite_regular(4, 2))
    assert len(four) == 2
    assert {canonical_form(g) for g in four} == {
        canonical_form(cycle(8)), canonical_form(cycle(4).disjoint_union(cycle(4)))}


def test_enumerate_bipartite_rejects_large_degree():
    with pytest.raises(ValueError):
        list(enumerate_bipartite_regular(2, 3))


@pytest.mark.parametrize("half,d", [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_enumerate_bipartite_matches_filtered_regular(half, d):
    # every d-regular bipartite graph with equal classes appears among all
    # d-regular graphs; filter those and compare counts
    expected = sum(1 for g in enumerate_regular(2 * half, d) if g.two_colouring() is not None)
    got = list(enumerate_bipartite_regular(half, d))
    assert len(got) == expected
    assert all(g.is_regular(d) and g.bipartition is not None for g in got)


# ---------------------------------------------------------------------------
# file formats

def test_graph_round_trip(tmp_path):
    p = tmp_path / "k22.graph"
    g = complete_bipartite(2, 2)
    write_graph(g, p)
    assert read_graph(p) == g


def test_graph_round_trip_with_loops():
    g = h_wr()
    assert parse_graph(write_graph(g)) == g


def test_empty_graph_file():
    g = parse_graph("graph 3 loops=0 bipartition=none\n")
    assert g.n == 3 and g.num_edges == 0


def test_loop_line_rejected_without_loops():
    with pytest.raises(GraphFormatError):
        parse_graph("graph 2 loops=0 bipartition=none\n0 0\n")


@pytest.mark.parametrize("text", [
    "grph 2 loops=0 bipartition=none\n",
    "graph 2 loops=2 bipartition=none\n",
    "graph 2 loops=0\n",
    "graph 2 loops=0 bipartition=none\n0 2\n",
    "graph 2 loops=0 bipartition=none\n1 0\n",
    "graph 2 loops=0 bipartition=none\n0 1\n0 1\n",
    "graph 2 loops=0 bipartition=none\n0 x\n",
    "",
])
def test_malformed_graph_files(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_matrix_round_trip():
    a = ZeroOneMatrix.from_lists([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert parse_matrix(write_matrix(a)) == a


@pytest.mark.parametrize("text", ["matrix 2\n10\n", "matrix 2\n12\n01\n", "mat 2\n10\n01\n"])
def test_malformed_matrix_files(text):
    with pytest.raises(GraphFormatError):
        parse_matrix(text)


# ---------------------------------------------------------------------------
# other containers

def test_lattice_body_limits():
    with pytest.raises(ValueError):
        LatticeBody.of([(0,)])
    with pytest.raises(ValueError):
        LatticeBody.of([(0, 10**7)])
    assert len(LatticeBody.box([2, 3]).cells) == 6


def test_set_family_members_in_range():
    with pytest.raises(ValueError):
        SetFamily(2, (0b100,))
    assert SetFamily.from_sets(3, [{0, 2}]).as_sets() == [{0, 2}]
