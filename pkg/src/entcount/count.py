"""Exact big-integer counters.

Every counter returns a :class:`CountResult`, an ``int`` subclass that
also records what was counted and a short identity hash of the input.
No counter ever produces a float.
"""

import hashlib
from collections import Counter
from itertools import combinations, combinations_with_replacement
from math import comb, factorial

from .caps import CapExceeded, check_cap
from .graphs import (
    Graph,
    SetFamily,
    ZeroOneMatrix,
    bits,
    popcount,
)


class CountResult(int):
    """Nonnegative exact count with provenance."""

    def __new__(cls, value, what="", key=""):
        value = int(value)
        if value < 0:
            raise ValueError("counts are nonnegative")
        obj = super().__new__(cls, value)
        obj.what = what
        obj.key = key
        return obj

    def __repr__(self):
        return f"CountResult({int(self)}, what={self.what!r})"

    def __reduce__(self):
        return (CountResult, (int(self), self.what, self.key))


def identity_hash(obj):
    if isinstance(obj, Graph):
        payload = f"G{obj.n}:{obj.adj}:{obj.loops}"
    elif isinstance(obj, ZeroOneMatrix):
        payload = f"M{obj.n}:{obj.rows}"
    else:
        payload = repr(obj)
    return hashlib.blake2b(payload.encode(), digest_size=6).hexdigest()


def _result(value, what, *inputs):
    return CountResult(value, what, "-".join(identity_hash(x) for x in inputs))


# ---------------------------------------------------------------------------
# permanents and perfect matchings

def permanent(a):
    """Permanent of a 0-1 matrix by Ryser's formula over a Gray code.

    perm(A) = (-1)^n sum_S (-1)^|S| prod_i (sum_{j in S} a_ij)
    """
    n = a.n
    check_cap("permanent", n)
    if n == 0:
        return _result(1, "permanent", a)
    # column j contributes +1 to row i's running sum when toggled in
    cols = [[a.rows[i] >> j & 1 for i in range(n)] for j in range(n)]
    sums = [0] * n
    total = 0
    subset = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        subset ^= 1 << j
        col = cols[j]
        if subset >> j & 1:
            for i in range(n):
                sums[i] += col[i]
        else:
            for i in range(n):
                sums[i] -= col[i]
        prod = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += -prod if popcount(subset) & 1 else prod
    if n & 1:
        total = -total
    return _result(total, "permanent", a)


def _no_loops(g, what):
    if g.loops:
        raise ValueError(f"{what} is defined for loop-free graphs only")


def perfect_matchings(g):
    """Perfect matchings by branching on the lowest uncovered vertex."""
    _no_loops(g, "perfect_matchings")
    check_cap("perfect_matchings", g.n)
    if g.n % 2:
        return _result(0, "perfect_matchings", g)
    adj = g.adj
    memo = {0: 1}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        total = 0
        cand = adj[v] & rest
        while cand:
            w = cand & -cand
            cand ^= w
            total += rec(rest ^ w)
        memo[mask] = total
        return total

    return _result(rec((1 << g.n) - 1), "perfect_matchings", g)


def _matching_poly(g):
    adj = g.adj
    memo = {0: (1,)}

    def add(p, q, shift):
        out = list(p) + [0] * max(0, len(q) + shift - len(p))
        for i, c in enumerate(q):
            out[i + shift] += c
        return out

    def rec(mask):
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        poly = list(rec(rest))
        cand = adj[v] & rest
        while cand:
            w = cand & -cand
            cand ^= w
            poly = add(poly, rec(rest ^ w), 1)
        memo[mask] = tuple(poly)
        return memo[mask]

    return rec((1 << g.n) - 1)


def matching_polynomial(g):
    """Coefficient list: entry t is the number of t-edge matchings."""
    _no_loops(g, "matchings")
    return [int(c) for c in _matching_poly(g)]


def matchings_of_size(g, t):
    _no_loops(g, "matchings_of_size")
    if t < 0 or 2 * t > g.n:
        raise ValueError(f"matching size {t} out of range for {g.n} vertices")
    poly = _matching_poly(g)
    return _result(poly[t] if t < len(poly) else 0, f"matchings_of_size[{t}]", g)


def matchings_total(g):
    _no_loops(g, "matchings_total")
    return _result(sum(_matching_poly(g)), "matchings_total", g)


def matchings_kdd_formula(n, d, t):
    """Matchings of size t in K(n,d) from the component-profile sum.

    Sum over (a_1..a_{n/d}) with sum t of prod C(d,a_i)^2 a_i!, done as a
    convolution over the n/d components.
    """
    if d < 1 or n % d:
        raise ValueError(f"K(n,d) needs d | n, got n={n}, d={d}")
    single = [comb(d, a) ** 2 * factorial(a) for a in range(d + 1)]
    poly = [1]
    for _ in range(n // d):
        out = [0] * (len(poly) + d)
        for i, x in enumerate(poly):
            if x:
                for a, y in enumerate(single):
                    out[i + a] += x * y
        poly = out
    value = poly[t] if 0 <= t < len(poly) else 0
    return CountResult(value, f"matchings_kdd_formula[{n},{d},{t}]", f"K({n},{d})")


# ---------------------------------------------------------------------------
# independent sets

def _independence_poly(g):
    adj = g.adj
    blocked = g.loops
    memo = {0: (1,)}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        skip = rec(rest)
        if blocked >> v & 1:
            memo[mask] = skip
            return skip
        take = rec(rest & ~adj[v])
        out = list(skip) + [0] * max(0, len(take) + 1 - len(skip))
        for i, c in enumerate(take):
            out[i + 1] += c
        memo[mask] = tuple(out)
        return memo[mask]

    return rec((1 << g.n) - 1)


def independence_polynomial(g):
    return [int(c) for c in _independence_poly(g)]


def independent_sets_of_size(g, t):
    """i_t(G); a looped vertex is self-adjacent and never included."""
    poly = _independence_poly(g)
    return _result(poly[t] if 0 <= t < len(poly) else 0, f"independent_sets_of_size[{t}]", g)


def independent_sets_total(g):
    return _result(sum(_independence_poly(g)), "independent_sets_total", g)


# ---------------------------------------------------------------------------
# colourings and homomorphisms

def _frontier_order(g):
    """Vertex order for the backtracking counters: BFS from low degree."""
    order = []
    seen = 0
    for comp in g.components():
        start = min(bits(comp), key=lambda v: (popcount(g.adj[v]), v))
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(bits(g.adj[v] & ~seen), key=lambda x: (-popcount(g.adj[x] & seen), x)):
                seen |= 1 << w
                queue.append(w)
    return order


def _frontiers(g, order):
    """For position k, the placed vertices that still have unplaced neighbours."""
    pos = {v: i for i, v in enumerate(order)}
    last = [max([pos[w] for w in bits(g.adj[v])] + [pos[v]]) for v in order]
    fronts = []
    for k in range(len(order)):
        fronts.append(tuple(i for i in range(k + 1) if last[i] > k))
    return fronts


def colorings(g, q):
    """Proper q-colourings by backtracking over colours.

    Completions depend only on the colours of the frontier, and only up to
    renaming colours, so the frontier colouring is normalised before
    memoising. A looped vertex admits no proper colour: the count is 0.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if g.loops:
        return _result(0, f"colorings[{q}]", g)
    n = g.n
    if n == 0:
        return _result(1, f"colorings[{q}]", g)
    order = _frontier_order(g)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in bits(g.adj[v]) if pos[w] < i] for i, v in enumerate(order)]
    fronts = _frontiers(g, order)
    colour = [0] * n
    memo = {}
    full = (1 << q) - 1

    def rec(k):
        if k == n:
            return 1
        front = fronts[k - 1] if k else ()
        seen = {}
        key = (k,) + tuple(seen.setdefault(colour[i], len(seen)) for i in front)
        hit = memo.get(key)
        if hit is not None:
            return hit
        banned = 0
        for i in earlier[k]:
            banned |= 1 << colour[i]
        free = full & ~banned
        total = 0
        while free:
            c = free & -free
            free ^= c
            colour[k] = c.bit_length() - 1
            total += rec(k + 1)
        memo[key] = total
        return total

    return _result(rec(0), f"colorings[{q}]", g)


def hom_count(g, h):
    """Homomorphisms G -> H (H may carry loops) by memoised backtracking.

    Vertex images are assigned in a BFS order; the number of completions
    depends only on the images of the current frontier, which is the memo
    key. G must be loop-free.
    """
    if g.loops:
        raise ValueError("hom_count needs a loop-free source graph")
    n = g.n
    if n == 0:
        return _result(1, "hom", g, h)
    hadj = [h.adj[x] | (h.loops & (1 << x)) for x in range(h.n)]
    order = _frontier_order(g)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in bits(g.adj[v]) if pos[w] < i] for i, v in enumerate(order)]
    fronts = _frontiers(g, order)
    image = [0] * n
    memo = {}
    everything = (1 << h.n) - 1

    def rec(k):
        if k == n:
            return 1
        front = fronts[k - 1] if k else ()
        key = (k,) + tuple(image[i] for i in front)
        hit = memo.get(key)
        if hit is not None:
            return hit
        allowed = everything
        for i in earlier[k]:
            allowed &= hadj[image[i]]
        total = 0
        while allowed:
            x = allowed & -allowed
            allowed ^= x
            image[k] = x.bit_length() - 1
            total += rec(k + 1)
        memo[key] = total
        return total

    return _result(rec(0), "hom", g, h)


def hom_kdd_closed(h, d):
    """hom(K_{d,d}, H) = sum over colourings C of one side of e(C)^d.

    Grouped by the multiset of colours used: multinomial(d; c) times
    (number of common neighbours of the support of c)^d.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return CountResult(1, "hom_kdd_closed[0]", identity_hash(h))
    hadj = [h.adj[x] | (h.loops & (1 << x)) for x in range(h.n)]
    everything = (1 << h.n) - 1
    total = 0
    for combo in combinations_with_replacement(range(h.n), d):
        counts = Counter(combo)
        ways = factorial(d)
        common = everything
        for x, c in counts.items():
            ways //= factorial(c)
            common &= hadj[x]
        total += ways * popcount(common) ** d
    return CountResult(total, f"hom_kdd_closed[{d}]", identity_hash(h))


def surjections(d, a):
    """Number of surjections from a d-set onto an a-set (inclusion-exclusion)."""
    return sum((-1) ** i * comb(a, i) * (a - i) ** d for i in range(a + 1))


def colorings_kdd_closed(q, d):
    """c_q(K_{d,d}) = sum_a C(q,a) Surj(d,a) (q-a)^d."""
    if d == 0:
        return CountResult(1, f"colorings_kdd_closed[{q},0]", "")
    total = sum(comb(q, a) * surjections(d, a) * (q - a) ** d for a in range(1, q + 1))
    return CountResult(total, f"colorings_kdd_closed[{q},{d}]", "")


def embed_count(h, g):
    """Injective homomorphisms from H into G."""
    if h.loops or g.loops:
        raise ValueError("embed_count needs loop-free graphs")
    if h.n > g.n:
        return _result(0, "embed", h, g)
    order = _frontier_order(h)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in bits(h.adj[v]) if pos[w] < i] for i, v in enumerate(order)]
    everything = (1 << g.n) - 1
    image = [0] * h.n

    def rec(k, used):
        if k == h.n:
            return 1
        allowed = everything & ~used
        for i in earlier[k]:
            allowed &= g.adj[image[i]]
        total = 0
        while allowed:
            x = allowed & -allowed
            allowed ^= x
            image[k] = x.bit_length() - 1
            total += rec(k + 1, used | x)
        return total

    return _result(rec(0, 0), "embed", h, g)


# ---------------------------------------------------------------------------
# cycle covers

def cycle_cover_sums(g):
    """(even_sum, all_sum) over spanning subgraphs made of isolated edges
    and vertex-disjoint cycles (length >= 3).

    even_sum = sum of 2^{#cycles} over covers whose cycles are all even,
    all_sum = the same over every cover. Expected: even_sum equals the
    squared perfect-matching count and all_sum equals perm(Adj(G)).
    """
    _no_loops(g, "cycle_cover_sums")
    check_cap("cycle_covers", g.n)
    adj = g.adj
    memo = {0: (1, 1)}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        even = 0
        every = 0
        # v in an isolated edge
        cand = adj[v] & rest
        while cand:
            w = cand & -cand
            cand ^= w
            e, a = rec(rest ^ w)
            even += e
            every += a
        # v on a cycle: walk v -> first -> ... -> last -> v, first < last
        for first in bits(adj[v] & rest):
            stack = [(first, rest ^ (1 << first), 2)]
            while stack:
                x, avail, length = stack.pop()
                nxt = adj[x] & avail
                for y in bits(nxt):
                    left = avail ^ (1 << y)
                    if length + 1 >= 3 and adj[y] >> v & 1 and y > first:
                        e, a = rec(left)
                        every += 2 * a
                        if (length + 1) % 2 == 0:
                            even += 2 * e
                    stack.append((y, left, length + 1))
        memo[mask] = (even, every)
        return memo[mask]

    even, every = rec((1 << g.n) - 1)
    return _result(even, "even_cycle_cover_sum", g), _result(every, "cycle_cover_sum", g)


# ---------------------------------------------------------------------------
# set families, distinguishing families

def trace(family, f):
    """trace_F(A) = {A & F : A in family}, duplicates removed."""
    return SetFamily(family.n, tuple(sorted({m & f for m in family.members})))


def _intersection_vector(a, members):
    return tuple(popcount(a & d) for d in members)


def is_distinguishing(family):
    """True iff A -> (|A & D_i|)_i is injective on all subsets of [n]."""
    check_cap("distinguishing_n", family.n)
    seen = set()
    members = family.members
    for a in range(1 << family.n):
        vec = _intersection_vector(a, members)
        if vec in seen:
            return False
        seen.add(vec)
    return True


def min_distinguishing(n):
    """f(n): least size of a distinguishing family for [n].

    Families are tried by increasing size, members as combinations of the
    nonempty subsets in lexicographic order; the first success is returned.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_cap("min_distinguishing_n", n)
    subsets = list(range(1, 1 << n))
    everything = range(1 << n)
    size = 1
    while True:
        # an l-member family has at most prod (|D_i|+1) distinct vectors
        for fam in combinations(subsets, size):
            cap_vectors = 1
            for d in fam:
                cap_vectors *= popcount(d) + 1
            if cap_vectors < (1 << n):
                continue
            seen = set()
            for a in everything:
                vec = tuple(popcount(a & d) for d in fam)
                if vec in seen:
                    break
                seen.add(vec)
            else:
                return CountResult(size, f"min_distinguishing[{n}]", str(fam))
        size += 1


# ---------------------------------------------------------------------------
# lattice bodies

def body_volume_and_projections(body):
    """Number of unit cells and the sizes of the n coordinate projections."""
    vol = CountResult(len(body.cells), "volume", identity_hash(sorted(body.cells)))
    projs = []
    for j in range(body.dim):
        shadow = {c[:j] + c[j + 1:] for c in body.cells}
        projs.append(CountResult(len(shadow), f"projection[{j}]", vol.key))
    return vol, projs


# ---------------------------------------------------------------------------
# triangle-intersecting families

def _triangle_graphs(n):
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    triangles = [(1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)])
                 for a, b, c in combinations(range(n), 3)]
    return len(pairs), triangles


def max_clique(adj):
    """Maximum clique size of a graph given as a list of bitmasks.

    Branch and bound; the bound is a greedy colouring of the candidates.
    """
    best = 0

    def colour_bound(cand):
        order = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(size, cand):
        nonlocal best
        for v, c in reversed(colour_bound(cand)):
            if size + c <= best:
                return
            expand(size + 1, cand & adj[v])
            cand &= ~(1 << v)
        if size > best:
            best = size

    expand(0, (1 << len(adj)) - 1)
    return best


def max_triangle_intersecting(n):
    """Largest family of graphs on [n] in which every two members (a member
    with itself included) share a triangle, by maximum-clique search."""
    if n not in (3, 4):
        raise CapExceeded("max_triangle_intersecting supports n in {3, 4}")
    m, triangles = _triangle_graphs(n)

    def has_triangle(x):
        return any(x & t == t for t in triangles)

    nodes = [x for x in range(1 << m) if has_triangle(x)]
    adj = []
    for x in nodes:
        row = 0
        for j, y in enumerate(nodes):
            if y != x and has_triangle(x & y):
                row |= 1 << j
        adj.append(row)
    return CountResult(max_clique(adj), f"max_triangle_intersecting[{n}]", "")


__all__ = [
    "CountResult",
    "body_volume_and_projections",
    "colorings",
    "colorings_kdd_closed",
    "cycle_cover_sums",
    "embed_count",
    "hom_count",
    "hom_kdd_closed",
    "independence_polynomial",
    "independent_sets_of_size",
    "independent_sets_total",
    "is_distinguishing",
    "matching_polynomial",
    "matchings_kdd_formula",
    "matchings_of_size",
    "matchings_total",
    "max_clique",
    "max_triangle_intersecting",
    "min_distinguishing",
    "perfect_matchings",
    "permanent",
    "surjections",
    "trace",
]
