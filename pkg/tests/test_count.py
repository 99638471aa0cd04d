import random
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcount.caps import CapExceeded
from entcount.count import (
    CountResult,
    body_volume_and_projections,
    colorings,
    colorings_kdd_closed,
    cycle_cover_sums,
    embed_count,
    hom_count,
    hom_kdd_closed,
    independence_polynomial,
    independent_sets_of_size,
    independent_sets_total,
    is_distinguishing,
    matching_polynomial,
    matchings_kdd_formula,
    matchings_of_size,
    matchings_total,
    max_clique,
    max_triangle_intersecting,
    min_distinguishing,
    perfect_matchings,
    permanent,
    surjections,
    trace,
)
from entcount.graphs import (
    Graph,
    LatticeBody,
    SetFamily,
    ZeroOneMatrix,
    complete,
    complete_bipartite,
    cycle,
    empty,
    enumerate_bipartite_regular,
    enumerate_graphs,
    h_ind,
    h_wr,
    k_nd,
    path,
)

from oracles import (
    cycle_covers_bruteforce,
    embed_bruteforce,
    hom_bruteforce,
    independent_bruteforce,
    is_distinguishing_bruteforce,
    matchings_bruteforce,
    min_distinguishing_bruteforce,
    perfect_matchings_bruteforce,
    perm_bruteforce,
)


@st.composite
def graphs(draw, min_n=0, max_n=7, loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen, loops_allowed=loops)


@st.composite
def matrices(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rows = [[draw(st.integers(0, 1)) for _ in range(n)] for _ in range(n)]
    return ZeroOneMatrix.from_lists(rows)


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def bipartite_half_matrix(g):
    left = g.two_colouring()
    lefts = [v for v in range(g.n) if left >> v & 1]
    rights = [v for v in range(g.n) if not left >> v & 1]
    return ZeroOneMatrix.from_lists([[g.adj[u] >> v & 1 for v in rights] for u in lefts])


# ---------------------------------------------------------------------------
# result type

def test_count_result_is_an_exact_int():
    r = permanent(ZeroOneMatrix.ones(3))
    assert isinstance(r, CountResult) and isinstance(r, int)
    assert r == 6 and r.what == "permanent" and r.key


def test_count_result_rejects_negative():
    with pytest.raises(ValueError):
        CountResult(-1)


# ---------------------------------------------------------------------------
# permanent and perfect matchings

def test_permanent_examples():
    assert permanent(ZeroOneMatrix.identity(3)) == 1
    assert permanent(ZeroOneMatrix.ones(3)) == 6
    block = ZeroOneMatrix.block_diagonal([2, 2])
    assert permanent(block) == 4


def test_permanent_of_all_ones_is_factorial():
    for n in range(1, 9):
        assert permanent(ZeroOneMatrix.ones(n)) == factorial(n)


def test_permanent_of_derangement_matrix():
    # J - I counts derangements: 0, 1, 2, 9, 44, 265
    for n, expected in zip(range(1, 7), [0, 1, 2, 9, 44, 265]):
        rows = [[int(i != j) for j in range(n)] for i in range(n)]
        assert permanent(ZeroOneMatrix.from_lists(rows)) == expected


@settings(max_examples=80, deadline=None)
@given(matrices(max_n=6))
def test_permanent_matches_bruteforce(a):
    assert permanent(a) == perm_bruteforce(a.to_lists())


def test_permanent_cap():
    with pytest.raises(CapExceeded):
        permanent(ZeroOneMatrix.identity(25))


def test_perfect_matchings_examples():
    assert perfect_matchings(cycle(5)) == 0
    assert perfect_matchings(k_nd(4, 2)) == 4
    assert perfect_matchings(complete(4)) == 3


def test_perfect_matchings_of_complete_graph_is_double_factorial():
    for m in range(1, 6):
        expected = factorial(2 * m) // (2 ** m * factorial(m))
        assert perfect_matchings(complete(2 * m)) == expected


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_perfect_matchings_matches_bruteforce(g):
    assert perfect_matchings(g) == perfect_matchings_bruteforce(g)


def test_permanent_of_half_matrix_counts_perfect_matchings():
    for half in range(1, 7):
        for d in range(1, min(half, 3) + 1):
            for g in enumerate_bipartite_regular(half, d):
                assert permanent(bipartite_half_matrix(g)) == perfect_matchings(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_permanent_half_matrix_random_bipartite(a, b, rnd):
    half = max(a, b)
    edges = [(u, half + v) for u in range(half) for v in range(half) if rnd.random() < 0.5]
    g = Graph.from_edges(2 * half, edges)
    rows = [[int(g.adj[u] >> (half + v) & 1) for v in range(half)] for u in range(half)]
    assert permanent(ZeroOneMatrix.from_lists(rows)) == perfect_matchings(g)


# ---------------------------------------------------------------------------
# matchings

def test_matchings_examples():
    g = complete_bipartite(3, 3)
    assert matchings_of_size(g, 0) == 1
    assert matchings_of_size(g, 1) == 9
    assert matchings_of_size(g, 2) == 18


def test_matchings_size_out_of_range():
    with pytest.raises(ValueError):
        matchings_of_size(cycle(4), 3)


def test_matchings_kdd_formula_examples():
    assert matchings_kdd_formula(6, 3, 0) == 1
    assert matchings_kdd_formula(3, 3, 2) == 18
    # two copies of K_{2,2}: per component (1, 4, 2), so t = 2 gives 2*2 + 4*4
    assert matchings_kdd_formula(4, 2, 2) == 20
    assert matchings_kdd_formula(4, 2, 2) == matchings_bruteforce(k_nd(4, 2), 2)


def test_matchings_kdd_formula_needs_divisibility():
    with pytest.raises(ValueError):
        matchings_kdd_formula(5, 2, 1)


def test_matchings_kdd_formula_single_block_closed_form():
    for d in range(1, 7):
        for t in range(d + 1):
            assert matchings_kdd_formula(d, d, t) == comb(d, t) ** 2 * factorial(t)


def test_matchings_kdd_formula_agrees_with_dp():
    for n in range(1, 13):
        for d in range(1, n + 1):
            if n % d:
                continue
            poly = matching_polynomial(k_nd(n, d))
            for t in range(n + 1):
                expected = poly[t] if t < len(poly) else 0
                assert matchings_kdd_formula(n, d, t) == expected, (n, d, t)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_matchings_match_bruteforce(g):
    for t in range(g.n // 2 + 1):
        assert matchings_of_size(g, t) == matchings_bruteforce(g, t)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_matching_sizes_sum_to_total(g):
    assert sum(matchings_of_size(g, t) for t in range(g.n // 2 + 1)) == matchings_total(g)
    if g.n >= 2:
        assert matchings_of_size(g, 1) == g.num_edges


def test_matchings_reject_loops():
    with pytest.raises(ValueError):
        matchings_total(h_wr())


# ---------------------------------------------------------------------------
# independent sets

def test_independent_set_examples():
    assert independent_sets_total(complete_bipartite(3, 3)) == 15
    assert independent_sets_of_size(cycle(5), 0) == 1
    assert independent_sets_total(cycle(4)) == 7


def test_looped_vertex_is_never_independent():
    assert independence_polynomial(h_ind()) == [1, 1]
    assert independent_sets_total(h_wr()) == 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8, loops=True))
def test_independent_sets_match_bruteforce(g):
    for t in range(g.n + 1):
        assert independent_sets_of_size(g, t) == independent_bruteforce(g, t)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_independent_sizes_sum_to_total(g):
    assert sum(independent_sets_of_size(g, t) for t in range(g.n + 1)) == independent_sets_total(g)


def test_independent_sets_of_empty_graph():
    assert independent_sets_total(empty(6)) == 64


# ---------------------------------------------------------------------------
# colourings and homomorphisms

def test_coloring_examples():
    for q in range(1, 6):
        assert colorings(empty(1), q) == q
    assert colorings(cycle(5), 2) == 0
    assert colorings(complete_bipartite(2, 2), 3) == 18


def test_colorings_of_cycle_match_chromatic_polynomial():
    for n in range(3, 10):
        for q in range(1, 5):
            assert colorings(cycle(n), q) == (q - 1) ** n + (-1) ** n * (q - 1)


def test_colorings_of_path_and_complete():
    assert colorings(path(6), 3) == 3 * 2 ** 5
    assert colorings(complete(4), 5) == 5 * 4 * 3 * 2
    assert colorings(complete(5), 4) == 0


def test_colorings_with_loop_is_zero():
    assert colorings(h_wr(), 3) == 0


def test_colorings_of_kdd_closed_form():
    for d in range(1, 11):
        g = complete_bipartite(d, d)
        assert colorings(g, 3) == 6 * (2 ** d - 1) == colorings_kdd_closed(3, d)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7), st.integers(1, 4))
def test_colorings_equal_homs_to_complete_graph(g, q):
    assert colorings(g, q) == hom_count(g, complete(q))


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6), graphs(min_n=1, max_n=3, loops=True))
def test_hom_count_matches_bruteforce(g, h):
    assert hom_count(g, h) == hom_bruteforce(g, h)


def test_hom_examples():
    for h in [h_ind(), h_wr(), complete(3), cycle(5)]:
        assert hom_count(empty(1), h) == h.n
    assert hom_count(complete_bipartite(3, 3), h_ind()) == 15
    # brute force over the 81 maps gives 35, not 41
    assert hom_count(cycle(4), h_wr()) == 35 == hom_bruteforce(cycle(4), h_wr())


def test_hom_into_h_ind_counts_independent_sets():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 10))
        assert hom_count(g, h_ind()) == independent_sets_total(g)


def test_hom_count_rejects_looped_source():
    with pytest.raises(ValueError):
        hom_count(h_wr(), complete(3))


def test_hom_kdd_closed_examples():
    for d in range(1, 11):
        assert hom_kdd_closed(h_ind(), d) == 2 ** (d + 1) - 1
    assert hom_kdd_closed(h_wr(), 2) == hom_count(complete_bipartite(2, 2), h_wr())
    assert hom_kdd_closed(h_wr(), 0) == 1


def test_hom_kdd_closed_matches_backtracking_on_all_small_targets():
    targets = [g for n in range(1, 4) for g in _all_looped_graphs(n)]
    targets += [complete(4), cycle(4), path(4)]
    for h in targets:
        for d in range(1, 5):
            assert hom_kdd_closed(h, d) == hom_count(complete_bipartite(d, d), h)


def _all_looped_graphs(n):
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1], loops_allowed=True)


def test_hom_kdd_closed_on_all_four_vertex_targets_with_loops():
    rng = random.Random(11)
    pairs = [(u, v) for u in range(4) for v in range(u, 4)]
    for _ in range(40):
        h = Graph.from_edges(4, [p for p in pairs if rng.random() < 0.5], loops_allowed=True)
        for d in range(1, 5):
            assert hom_kdd_closed(h, d) == hom_count(complete_bipartite(d, d), h)


def test_surjections_small_values():
    assert [surjections(3, a) for a in range(5)] == [0, 1, 6, 6, 0]
    assert surjections(0, 0) == 1


def test_colorings_kdd_closed_matches_backtracking():
    for q in range(1, 6):
        for d in range(0, 6):
            assert colorings_kdd_closed(q, d) == colorings(complete_bipartite(d, d), q)


# ---------------------------------------------------------------------------
# embeddings

def test_embed_examples():
    assert embed_count(complete(3), complete(3)) == 6
    assert embed_count(complete(3), complete(4)) == 24
    g = cycle(7)
    assert embed_count(complete(2), g) == 2 * g.num_edges


def test_embed_larger_pattern_is_zero():
    assert embed_count(complete(4), complete(3)) == 0


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=1, max_n=4), graphs(max_n=7))
def test_embed_matches_bruteforce_and_is_at_most_hom(h, g):
    e = embed_count(h, g)
    assert e == embed_bruteforce(h, g)
    assert e <= hom_count(h, g)


# ---------------------------------------------------------------------------
# cycle covers

def test_cycle_cover_examples():
    even, every = cycle_cover_sums(complete(4))
    assert even == 9 and every == 9
    assert cycle_cover_sums(cycle(5))[0] == 0


def test_cycle_covers_of_k4_adjacency_permanent():
    rows = [[int(i != j) for j in range(4)] for i in range(4)]
    assert cycle_cover_sums(complete(4))[1] == permanent(ZeroOneMatrix.from_lists(rows))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_cycle_covers_match_permutation_enumeration(g):
    even, every = cycle_cover_sums(g)
    assert (even, every) == cycle_covers_bruteforce(g)


def test_cycle_cover_identities_exhaustive_small():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            even, every = cycle_cover_sums(g)
            assert even == perfect_matchings(g) ** 2
            assert every == permanent(g.adjacency_matrix())


def test_cycle_cover_identities_random_ten_vertices():
    rng = random.Random(5)
    for _ in range(25):
        g = random_graph(rng, rng.randint(7, 10), rng.choice([0.3, 0.5, 0.7]))
        even, every = cycle_cover_sums(g)
        assert even == perfect_matchings(g) ** 2
        assert every == permanent(g.adjacency_matrix())


# ---------------------------------------------------------------------------
# set families and distinguishing families

def test_trace_deduplicates():
    fam = SetFamily(3, (0b001, 0b011, 0b101, 0b111))
    assert trace(fam, 0b001).members == (0b001,)
    assert trace(fam, 0b110).members == (0b000, 0b010, 0b100, 0b110)


def test_distinguishing_examples():
    assert is_distinguishing(SetFamily(1, (0b1,)))
    assert min_distinguishing(1) == 1
    assert min_distinguishing(2) == 2
    assert not is_distinguishing(SetFamily(2, (0b11,)))


def test_min_distinguishing_matches_independent_search():
    for n in range(1, 5):
        assert min_distinguishing(n) == min_distinguishing_bruteforce(n)


def test_min_distinguishing_n5_is_four():
    # three sets give at most 6^3 = 216 vectors but the search finds none
    assert min_distinguishing(5) == 4
    assert min_distinguishing(3) == 3


def test_min_distinguishing_respects_counting_bound():
    from math import log2
    for n in range(1, 6):
        assert min_distinguishing(n) >= n / log2(n + 1)


def test_is_distinguishing_matches_injectivity_oracle():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(1, 12)
        size = rng.randint(1, n + 1)
        members = tuple(rng.randrange(1 << n) for _ in range(size))
        assert is_distinguishing(SetFamily(n, members)) == is_distinguishing_bruteforce(n, members)


def test_singleton_family_is_distinguishing():
    for n in range(1, 10):
        assert is_distinguishing(SetFamily(n, tuple(1 << i for i in range(n))))


# ---------------------------------------------------------------------------
# lattice bodies

def test_body_examples():
    vol, projs = body_volume_and_projections(LatticeBody.of([(0, 0, 0)]))
    assert vol == 1 and projs == [1, 1, 1]
    vol, projs = body_volume_and_projections(LatticeBody.box([2, 2, 2]))
    assert vol == 8 and projs == [4, 4, 4]
    vol, projs = body_volume_and_projections(LatticeBody.of([(0, 0), (1, 0), (0, 1)]))
    assert vol == 3 and projs == [2, 2]


# ---------------------------------------------------------------------------
# triangle-intersecting families

def test_max_triangle_intersecting_values():
    assert max_triangle_intersecting(3) == 1
    assert max_triangle_intersecting(4) == 8
    with pytest.raises(CapExceeded):
        max_triangle_intersecting(5)


def test_max_clique_small_graphs():
    # C5 has clique number 2, K4 has 4, empty graph 1
    c5 = [g for g in cycle(5).adj]
    assert max_clique(c5) == 2
    assert max_clique(list(complete(4).adj)) == 4
    assert max_clique([0, 0, 0]) == 1
    assert max_clique([]) == 0
