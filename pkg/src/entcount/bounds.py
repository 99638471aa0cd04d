"""Bounds stated as products of rational roots, compared exactly.

A :class:`RootProductBound` represents ``scalar * prod_i a_i^(1/m_i)``.
Comparing it with an integer count never touches floating point: both
sides are raised to ``M = lcm(m_i)`` and compared as big integers.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb, factorial, floor, lcm, log2

from mpmath import iv

from .caps import CapExceeded, cap
from .count import (
    CountResult,
    body_volume_and_projections,
    colorings_kdd_closed,
    hom_kdd_closed,
    trace,
)
from .graphs import Graph, bits, complete
from .lp import Infeasible, maximise, minimise


class Verdict(enum.Enum):
    """Where a count sits relative to its bound."""

    BELOW = "BelowStrict"
    EQUAL = "Equal"
    ABOVE = "AboveStrict"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RootProductBound:
    factors: tuple = ()
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        clean = []
        for base, m in self.factors:
            base, m = int(base), int(m)
            if base < 1 or m < 1:
                raise ValueError(f"invalid factor ({base}, {m}): need base >= 1, root >= 1")
            clean.append((base, m))
        object.__setattr__(self, "factors", tuple(clean))
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if self.scalar <= 0:
            raise ValueError("scalar multiplier must be positive")

    @classmethod
    def integer(cls, value):
        value = int(value)
        if value < 1:
            raise ValueError("integer bound must be positive")
        return cls(((value, 1),))

    def root_lcm(self):
        m = 1
        for _, r in self.factors:
            m = lcm(m, r)
        return m

    def merged(self):
        """Same value with one factor per root degree and no unit factors."""
        by_root = {}
        for base, m in self.factors:
            if base != 1:
                by_root[m] = by_root.get(m, 1) * base
        return RootProductBound(tuple((b, m) for m, b in sorted(by_root.items())), self.scalar)

    def power(self, m):
        """The bound raised to the m-th power, as an exact Fraction.

        ``m`` must be a multiple of every root degree.
        """
        value = self.scalar ** m
        for base, r in self.merged().factors:
            if m % r:
                raise ValueError(f"{m} is not a multiple of root {r}")
            value *= base ** (m // r)
        return value

    def exact_value(self):
        """The value as a Fraction when it is rational, else None."""
        m = self.root_lcm()
        p = self.power(m)
        num, den = _integer_root(p.numerator, m), _integer_root(p.denominator, m)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def log2(self):
        return log2(self.scalar) + sum(log2(b) / m for b, m in self.factors)

    def value(self):
        return 2.0 ** self.log2()

    def __mul__(self, other):
        return RootProductBound(self.factors + other.factors, self.scalar * other.scalar)

    def same_value(self, other):
        m = lcm(self.root_lcm(), other.root_lcm())
        return self.power(m) == other.power(m)

    def to_json(self):
        return {
            "factors": [[str(b), m] for b, m in self.factors],
            "scalar": f"{self.scalar.numerator}/{self.scalar.denominator}",
        }

    @classmethod
    def from_json(cls, obj):
        return cls(tuple((int(b), int(m)) for b, m in obj["factors"]), Fraction(obj["scalar"]))

    def __str__(self):
        parts = [f"{b}^(1/{m})" if m != 1 else str(b) for b, m in self.factors]
        if self.scalar != 1:
            parts.insert(0, str(self.scalar))
        return " * ".join(parts) if parts else "1"


def _integer_root(x, m):
    """The integer k with k**m == x, or None."""
    if x < 2 or m == 1:
        return x
    lo, hi = 1, 1 << (x.bit_length() // m + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid ** m
        if v == x:
            return mid
        if v < x:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    count: int
    bound: object
    slack_bits: float

    @property
    def ok(self):
        return self.verdict is not Verdict.ABOVE


def compare_exact(count, bound):
    """Compare ``count`` with ``bound`` in exact integer arithmetic."""
    count = int(count)
    if count < 0:
        raise ValueError("count must be nonnegative")
    merged = bound.merged()
    m = merged.root_lcm()
    if m > cap("root_lcm"):
        raise CapExceeded(f"root lcm {m} exceeds cap {cap('root_lcm')}")
    rhs = merged.power(m)
    lhs = count ** m
    # rhs is a Fraction p/q; compare lhs * q with p
    left = lhs * rhs.denominator
    right = rhs.numerator
    if left < right:
        verdict = Verdict.BELOW
    elif left == right:
        verdict = Verdict.EQUAL
    else:
        verdict = Verdict.ABOVE
    slack = bound.log2() - (log2(count) if count else float("-inf"))
    return Comparison(verdict, count, bound, slack)


# ---------------------------------------------------------------------------
# permanents and perfect matchings

def bregman_bound(row_sums):
    """prod_i (d_i!)^(1/d_i); a zero row contributes the unit factor."""
    return RootProductBound(tuple((factorial(d), d) if d else (1, 1) for d in row_sums))


def kahn_lovasz_bound(degrees):
    """prod_i (d_i!)^(1/(2 d_i)) over all 2n vertices."""
    return RootProductBound(tuple((factorial(d), 2 * d) if d else (1, 1) for d in degrees))


# ---------------------------------------------------------------------------
# binomial sums, coin weighing

def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def binary_entropy_interval(alpha, prec=128):
    """Enclosure of H(alpha) in bits as an mpmath interval."""
    alpha = _as_fraction(alpha)
    if alpha in (0, 1):
        return iv.mpf(0)
    iv.prec = prec
    a = iv.mpf(alpha.numerator) / alpha.denominator
    b = 1 - a
    return -(a * iv.log(a) + b * iv.log(b)) / iv.log(2)


def binom_sum(n, alpha):
    alpha = _as_fraction(alpha)
    return sum(comb(n, i) for i in range(floor(alpha * n) + 1))


def binom_sum_bound(n, alpha):
    """Check sum_{i <= alpha n} C(n,i) <= 2^(H(alpha) n).

    The left side is exact. The right side is enclosed in an interval and
    the precision raised until the comparison is decided, so an
    AboveStrict verdict is certain. H(1/2) = 1 is handled exactly.
    """
    alpha = _as_fraction(alpha)
    if not (0 < alpha <= Fraction(1, 2)):
        raise ValueError("alpha must lie in (0, 1/2]")
    left = binom_sum(n, alpha)
    if alpha == Fraction(1, 2):
        right = 2 ** n
        verdict = Verdict.BELOW if left < right else Verdict.EQUAL if left == right else Verdict.ABOVE
        return Comparison(verdict, left, right, n - log2(left))
    prec = 96
    while True:
        iv.prec = prec
        exponent = binary_entropy_interval(alpha, prec) * n
        lhs_log = iv.log(iv.mpf(left)) / iv.log(2)
        if lhs_log.b < exponent.a:
            verdict = Verdict.BELOW
            break
        if lhs_log.a > exponent.b:
            verdict = Verdict.ABOVE
            break
        if prec > 4096:
            verdict = Verdict.EQUAL
            break
        prec *= 2
    slack = float(exponent.mid) - log2(left)
    iv.prec = 53
    return Comparison(verdict, left, float(exponent.mid), slack)


DEFAULT_BINOMIAL_C = 1.2


def coin_lower_bounds(n, c=DEFAULT_BINOMIAL_C):
    """(n / log2(n+1), n / (log2(n)/2 + c)) for the distinguishing-family size."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return n / log2(n + 1), n / (log2(n) / 2 + c)


# ---------------------------------------------------------------------------
# projections and traces

def loomis_whitney_bound(body):
    vol, projs = body_volume_and_projections(body)
    bound = RootProductBound(tuple((int(p), body.dim - 1) for p in projs))
    return vol, bound


def loomis_whitney_check(body):
    vol, bound = loomis_whitney_bound(body)
    return compare_exact(vol, bound)


def trace_bound(family, cover):
    """prod_F |trace_F(family)|^(1/t) for a cover of depth t."""
    t = cover.depth
    if t < 1:
        raise ValueError("cover depth must be positive")
    factors = []
    for f in cover.members:
        size = len(trace(family, f).members)
        factors.append((max(size, 1), t))
    return RootProductBound(tuple(factors))


def triangle_family_bound(n):
    """Upper bound 2^(C(n,2)-2) on triangle-intersecting families."""
    return 2 ** (comb(n, 2) - 2)


def triangle_family_sharp(n):
    return 2 ** (comb(n, 2) - 3)


# ---------------------------------------------------------------------------
# fractional covers and independence

@dataclass(frozen=True)
class FractionalWeights:
    kind: str
    weights: dict = field(compare=False)
    objective: Fraction

    def check(self, h):
        """Verify feasibility of the stored weights on ``h``."""
        if self.kind == "cover":
            for v in range(h.n):
                total = sum(w for (a, b), w in self.weights.items() if v in (a, b))
                if total < 1:
                    return False
        else:
            for u, v in h.edges():
                if self.weights[u] + self.weights[v] > 1:
                    return False
        return all(0 <= w <= 1 for w in self.weights.values())


def fractional_cover(h):
    """rho*(H): least total edge weight covering every vertex to weight 1."""
    if h.loops:
        raise ValueError("fractional cover needs a loop-free graph")
    edges = h.edges()
    if h.n == 0:
        return FractionalWeights("cover", {}, Fraction(0))
    if not edges:
        raise Infeasible("graph has no edges, so no fractional cover exists")
    isolated = [v for v in range(h.n) if not h.adj[v]]
    if isolated:
        raise Infeasible(f"isolated vertex {isolated[0]} cannot be covered")
    rows, senses, rhs = [], [], []
    for v in range(h.n):
        rows.append([1 if v in e else 0 for e in edges])
        senses.append(">=")
        rhs.append(1)
    for k in range(len(edges)):
        rows.append([1 if j == k else 0 for j in range(len(edges))])
        senses.append("<=")
        rhs.append(1)
    value, x = minimise([1] * len(edges), rows, senses, rhs)
    return FractionalWeights("cover", dict(zip(edges, x)), value)


def fractional_independence(h):
    """alpha*(H): largest total vertex weight with every edge carrying <= 1."""
    if h.loops:
        raise ValueError("fractional independence needs a loop-free graph")
    if h.n == 0:
        return FractionalWeights("independence", {}, Fraction(0))
    rows, senses, rhs = [], [], []
    for u, v in h.edges():
        rows.append([1 if w in (u, v) else 0 for w in range(h.n)])
        senses.append("<=")
        rhs.append(1)
    for v in range(h.n):
        rows.append([1 if w == v else 0 for w in range(h.n)])
        senses.append("<=")
        rhs.append(1)
    value, x = maximise([1] * h.n, rows, senses, rhs)
    return FractionalWeights("independence", dict(enumerate(x)), value)


def automorphisms(h):
    """All automorphisms of a small graph, by brute force."""
    out = []
    for perm in permutations(range(h.n)):
        if all(h.adj[perm[v]] == _image(h.adj[v], perm) for v in range(h.n)) and \
                all(h.has_loop(v) == h.has_loop(perm[v]) for v in range(h.n)):
            out.append(perm)
    return out


def _image(mask, perm):
    out = 0
    for w in bits(mask):
        out |= 1 << perm[w]
    return out


def symmetric_independence(h):
    """An optimal fractional independence function averaged over Aut(H).

    The average of optimal solutions is optimal, and the result does not
    depend on how H happens to be labelled.
    """
    base = fractional_independence(h)
    auts = automorphisms(h)
    weights = {v: sum(base.weights[p[v]] for p in auts) / len(auts) for v in range(h.n)}
    return FractionalWeights("independence", weights, base.objective)


# ---------------------------------------------------------------------------
# embeddings

def embed_upper_bound(h, ell):
    """(2 ell)^(rho*(H)) as a root-product bound."""
    if ell < 1:
        raise ValueError("ell must be positive")
    rho = fractional_cover(h).objective
    return RootProductBound((((2 * ell) ** rho.numerator, rho.denominator),))


def _floor_rational_power(x, e):
    """Largest integer s with s <= x**e for rationals x >= 1, 0 <= e."""
    x, e = Fraction(x), Fraction(e)
    p, q = e.numerator, e.denominator
    target = x ** p          # need s^q <= target
    lo, hi = 1, 1
    while Fraction(hi) ** q <= target:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(mid) ** q <= target:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class BlowUp:
    graph: Graph
    sizes: tuple
    guaranteed: CountResult
    weights: dict = field(compare=False)


def hstar_build(h, ell):
    """Blow-up of H: vertex v becomes floor((ell/|E(H)|)^psi(v)) copies,
    copies of adjacent vertices are joined completely.

    psi is the automorphism-averaged optimal fractional independence
    function. The result has at most ``ell`` edges and at least
    prod(sizes) embeddings of H.
    """
    e = h.num_edges
    if e == 0:
        if h.n != 1:
            raise ValueError("hstar_build needs a graph with edges (or a single vertex)")
        sizes = (int(ell),)
        weights = {0: Fraction(1)}
    else:
        if ell < e:
            raise ValueError(f"ell={ell} is smaller than |E(H)|={e}")
        psi = symmetric_independence(h).weights
        weights = psi
        sizes = tuple(_floor_rational_power(Fraction(ell, e), psi[v]) for v in range(h.n))
    total = sum(sizes)
    if total > cap("graph_vertices"):
        raise CapExceeded(f"H* would have {total} vertices")
    start = [0]
    for s in sizes:
        start.append(start[-1] + s)
    edges = []
    for u, v in h.edges():
        for a in range(start[u], start[u + 1]):
            for b in range(start[v], start[v + 1]):
                edges.append((a, b))
    blown = Graph.from_edges(total, edges)
    if blown.num_edges > ell:
        raise AssertionError("blow-up exceeded the edge budget")
    guaranteed = 1
    for s in sizes:
        guaranteed *= s
    return BlowUp(blown, sizes, CountResult(guaranteed, "hstar_guaranteed"), weights)


# ---------------------------------------------------------------------------
# colourings and homomorphisms of regular graphs

def colorings_bip_bound(n, d, q):
    """c_q(K_{d,d})^(n / 2d)."""
    base = int(colorings_kdd_closed(q, d))
    if base == 0:
        raise ValueError("c_q(K_{d,d}) is zero; the bound degenerates")
    return RootProductBound(((base ** n, 2 * d),))


def homs_bip_bound(n, d, h):
    """hom(K_{d,d}, H)^(n / 2d)."""
    base = int(hom_kdd_closed(h, d))
    if base == 0:
        raise ValueError("hom(K_{d,d}, H) is zero; the bound degenerates")
    return RootProductBound(((base ** n, 2 * d),))


def back_degrees(g, order):
    """p(v) = number of neighbours of v that precede v in ``order``."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    rank = [0] * g.n
    for i, v in enumerate(order):
        rank[v] = i
    return [sum(1 for w in bits(g.adj[v]) if rank[w] < rank[v]) for v in range(g.n)]


def nonbip_order_bound(g, order, h):
    """prod_v hom(K_{p(v),p(v)}, H)^(1/d) for a d-regular G and total order."""
    if not g.is_regular() or g.n == 0:
        raise ValueError("G must be a nonempty regular graph")
    d = g.degree(0)
    if d < 1:
        raise ValueError("G must have positive degree")
    cache = {}
    factors = []
    for p in back_degrees(g, order):
        if p not in cache:
            cache[p] = int(hom_kdd_closed(h, p))
        if cache[p] == 0:
            raise ValueError("hom(K_{p,p}, H) is zero; the bound degenerates")
        factors.append((cache[p], d))
    return RootProductBound(tuple(factors))


def k3_relaxed_order_bound(g, order):
    """prod_v (6 * 2^p(v))^(1/d): the per-vertex relaxation for 3-colourings."""
    d = g.degree(0)
    return RootProductBound(tuple((6 * 2 ** p, d) for p in back_degrees(g, order)))


def k3_closed_form(n, d):
    """2^(n/2) * 6^(n/d)."""
    return RootProductBound(((2 ** n, 2), (6 ** n, d)))


def regular_hom_reference(n, d, h, extremal="kdd"):
    """hom(K_{d,d},H)^(n/2d) or hom(K_{d+1},H)^(n/(d+1)) for conjecture checks."""
    from .count import hom_count

    if extremal == "kdd":
        return homs_bip_bound(n, d, h)
    base = int(hom_count(complete(d + 1), h))
    return RootProductBound(((base ** n, d + 1),))


# ---------------------------------------------------------------------------
# matchings

def matching_asymptotic_reference(n, d, alpha):
    """n (alpha log d + 2 H(alpha) + alpha log(alpha / e)), logs base 2."""
    alpha = float(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if d < 2:
        raise ValueError("d must be at least 2")
    h = -alpha * log2(alpha) - (1 - alpha) * log2(1 - alpha)
    return n * (alpha * log2(d) + 2 * h + alpha * log2(alpha / math.e))
