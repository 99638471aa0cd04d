"""Deliberately naive reference implementations used as test oracles.

Nothing here shares code with the package beyond the Graph container.
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import log2


def perm_bruteforce(rows):
    n = len(rows)
    return sum(all(rows[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def edge_list(g):
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u] >> v & 1]


def adjacent(g, u, v):
    if u == v:
        return bool(g.loops >> u & 1)
    return bool(g.adj[u] >> v & 1)


def hom_bruteforce(g, h):
    edges = edge_list(g)
    loops = [v for v in range(g.n) if g.loops >> v & 1]
    total = 0
    for f in product(range(h.n), repeat=g.n):
        if all(adjacent(h, f[u], f[v]) for u, v in edges) and all(adjacent(h, f[v], f[v]) for v in loops):
            total += 1
    return total


def embed_bruteforce(h, g):
    edges = edge_list(h)
    return sum(1 for f in permutations(range(g.n), h.n) if all(adjacent(g, f[u], f[v]) for u, v in edges))


def matchings_bruteforce(g, t):
    edges = edge_list(g)
    count = 0
    for m in combinations(edges, t):
        used = [v for e in m for v in e]
        if len(set(used)) == 2 * t:
            count += 1
    return count


def independent_bruteforce(g, t):
    count = 0
    for s in combinations(range(g.n), t):
        if all(not adjacent(g, u, v) for u in s for v in s if u <= v):
            count += 1
    return count


def perfect_matchings_bruteforce(g):
    if g.n % 2:
        return 0
    return matchings_bruteforce(g, g.n // 2)


def is_distinguishing_bruteforce(n, family):
    vectors = set()
    for a in range(1 << n):
        vec = tuple(bin(a & d).count("1") for d in family)
        vectors.add(vec)
    return len(vectors) == 1 << n


def min_distinguishing_bruteforce(n):
    """f(n) by trying every family of every size, in a different order
    (families as multisets of arbitrary subsets, including the empty set)."""
    subsets = list(range(1 << n))
    size = 0
    while True:
        size += 1
        for fam in combinations(subsets, size):
            if is_distinguishing_bruteforce(n, fam):
                return size


def entropy_direct(probs):
    return -sum(float(p) * log2(float(p)) for p in probs if p)


def _solve(rows, rhs):
    """Exact Gaussian elimination; None if singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def lp_vertex_enumeration(c, constraints, maximise=False):
    """Optimise c.x over {x : a.x <= b for (a, b) in constraints} by trying
    every basis of tight constraints. Returns the optimal value."""
    k = len(c)
    best = None
    for basis in combinations(constraints, k):
        x = _solve([a for a, _ in basis], [b for _, b in basis])
        if x is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in constraints):
            val = sum(ci * xi for ci, xi in zip(c, x))
            if best is None or (val > best if maximise else val < best):
                best = val
    return best


def fractional_cover_oracle(g):
    edges = edge_list(g)
    k = len(edges)
    cons = []
    for v in range(g.n):
        cons.append(([-1 if v in e else 0 for e in edges], -1))
    for i in range(k):
        unit = [0] * k
        unit[i] = 1
        cons.append((unit, 1))
        cons.append(([-x for x in unit], 0))
    return lp_vertex_enumeration([1] * k, cons)


def fractional_independence_oracle(g):
    cons = []
    for u, v in edge_list(g):
        cons.append(([1 if w in (u, v) else 0 for w in range(g.n)], 1))
    for v in range(g.n):
        unit = [0] * g.n
        unit[v] = 1
        cons.append((unit, 1))
        cons.append(([-x for x in unit], 0))
    return lp_vertex_enumeration([1] * g.n, cons, maximise=True)


def cycle_covers_bruteforce(g):
    """(even sum, all sum) by enumerating permutations: each permutation
    whose cycles are graph cycles or 2-cycles (edges) is one oriented
    cycle cover; collapsing orientations gives the 2^c(S) weights."""
    even = every = 0
    for s in permutations(range(g.n)):
        if any(s[v] == v or not adjacent(g, v, s[v]) for v in range(g.n)):
            continue
        every += 1
        seen = set()
        ok = True
        for v in range(g.n):
            if v in seen:
                continue
            length = 0
            w = v
            while w not in seen:
                seen.add(w)
                w = s[w]
                length += 1
            if length % 2:
                ok = False
        if ok:
            even += 1
    return even, every
