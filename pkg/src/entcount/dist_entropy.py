"""Entropy of explicit finite distributions and checkers for its basic laws.

Probabilities are exact rationals. Internally a joint table is stored as
integer weights over one common denominator, so marginals are integer
sums; only the final logarithms are floating point.

Coordinates are numbered from 0. Subsets of coordinates may be given as
an iterable of indices or as an integer bitmask.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd, lcm, log2

DEFAULT_TOL = 1e-9


def _mask(coords):
    if isinstance(coords, int):
        return coords
    out = 0
    for c in coords:
        out |= 1 << c
    return out


def _indices(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# distributions

@dataclass(frozen=True)
class FiniteDistribution:
    outcomes: tuple

    def __post_init__(self):
        clean = tuple((int(v), Fraction(p)) for v, p in self.outcomes)
        ids = [v for v, _ in clean]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate value id in distribution")
        if any(p < 0 for _, p in clean):
            raise ValueError("negative probability")
        if sum(p for _, p in clean) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        object.__setattr__(self, "outcomes", clean)

    @classmethod
    def uniform(cls, k):
        return cls(tuple((i, Fraction(1, k)) for i in range(k)))

    @classmethod
    def bernoulli(cls, p):
        p = Fraction(p)
        return cls(((0, 1 - p), (1, p)))

    def probabilities(self):
        return [p for _, p in self.outcomes]


class JointDistribution:
    """Probability table over the product space ``range(r1) x ... x range(rn)``.

    Entries absent from ``table`` have probability zero; zero entries that
    are given explicitly are kept (they matter for the text format).
    """

    __slots__ = ("ranges", "_weights", "_den", "_cache")

    def __init__(self, ranges, table):
        ranges = tuple(int(r) for r in ranges)
        if any(r < 1 for r in ranges):
            raise ValueError("every coordinate range must be at least 1")
        probs = {}
        for key, p in dict(table).items():
            key = tuple(int(v) for v in key)
            if len(key) != len(ranges):
                raise ValueError(f"tuple {key} has arity {len(key)}, expected {len(ranges)}")
            if any(not 0 <= v < r for v, r in zip(key, ranges)):
                raise ValueError(f"tuple {key} is outside the declared ranges {ranges}")
            p = Fraction(p)
            if p < 0:
                raise ValueError(f"negative probability at {key}")
            probs[key] = p
        den = 1
        for p in probs.values():
            den = lcm(den, p.denominator)
        weights = {k: p.numerator * (den // p.denominator) for k, p in probs.items()}
        if sum(weights.values()) != den:
            raise ValueError("probabilities must sum to exactly 1")
        self._set(ranges, weights, den)

    def _set(self, ranges, weights, den):
        self.ranges = ranges
        self._weights = weights
        self._den = den
        self._cache = {}

    @classmethod
    def _from_weights(cls, ranges, weights, den):
        obj = cls.__new__(cls)
        g = den
        for w in weights.values():
            g = gcd(g, w)
        if g > 1:
            weights = {k: w // g for k, w in weights.items()}
            den //= g
        obj._set(tuple(ranges), weights, den)
        return obj

    @classmethod
    def from_weights(cls, ranges, weights):
        """Normalise nonnegative integer weights into a distribution."""
        weights = {tuple(k): int(w) for k, w in dict(weights).items()}
        total = sum(weights.values())
        if total <= 0 or any(w < 0 for w in weights.values()):
            raise ValueError("weights must be nonnegative with a positive total")
        return cls(ranges, {k: Fraction(w, total) for k, w in weights.items()})

    @classmethod
    def uniform(cls, ranges):
        ranges = tuple(ranges)
        size = 1
        for r in ranges:
            size *= r
        return cls(ranges, {k: Fraction(1, size) for k in product(*map(range, ranges))})

    @classmethod
    def product_of(cls, factors):
        """Independent coordinates with the given one-dimensional marginals."""
        ranges = tuple(max(v for v, _ in f.outcomes) + 1 for f in factors)
        table = {}
        for combo in product(*(f.outcomes for f in factors)):
            p = Fraction(1)
            for _, q in combo:
                p *= q
            table[tuple(v for v, _ in combo)] = p
        return cls(ranges, table)

    @property
    def arity(self):
        return len(self.ranges)

    @property
    def table(self):
        return {k: Fraction(w, self._den) for k, w in self._weights.items()}

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return self.ranges == other.ranges and self.table == other.table

    def __hash__(self):
        return hash((self.ranges, frozenset(self.table.items())))

    def __repr__(self):
        return f"JointDistribution(ranges={self.ranges}, support={sum(1 for w in self._weights.values() if w)})"

    def _marginal_weights(self, mask):
        key = ("w", mask)
        cached = self._cache.get(key)
        if cached is None:
            idx = _indices(mask)
            cached = {}
            for k, w in self._weights.items():
                sub = tuple(k[i] for i in idx)
                cached[sub] = cached.get(sub, 0) + w
            self._cache[key] = cached
        return cached

    def entropy_of(self, coords=None):
        """H(X_F) for the coordinates in ``coords`` (all when None)."""
        mask = (1 << self.arity) - 1 if coords is None else _mask(coords)
        key = ("h", mask)
        h = self._cache.get(key)
        if h is None:
            h = _entropy_of_weights(self._marginal_weights(mask).values(), self._den)
            self._cache[key] = h
        return h


def _entropy_of_weights(weights, den):
    # sum over w > 0 of (w/den) * log2(den/w)
    total = 0.0
    ld = log2(den)
    for w in weights:
        if w:
            total += w * (ld - log2(w))
    return max(total / den, 0.0)


# ---------------------------------------------------------------------------
# basic quantities

def entropy(d):
    """Shannon entropy in bits of a FiniteDistribution or JointDistribution."""
    if isinstance(d, JointDistribution):
        return d.entropy_of()
    den = 1
    for _, p in d.outcomes:
        den = lcm(den, p.denominator)
    return _entropy_of_weights((p.numerator * (den // p.denominator) for _, p in d.outcomes), den)


def binary_entropy(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary entropy needs p in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return -p * log2(p) - (1 - p) * log2(1 - p)


def marginal(j, coords):
    """Exact marginal on ``coords``; coordinates keep their relative order."""
    mask = _mask(coords)
    if mask >> j.arity:
        raise ValueError(f"coordinates {_indices(mask)} are not all below arity {j.arity}")
    idx = _indices(mask)
    weights = j._marginal_weights(mask)
    return JointDistribution._from_weights(tuple(j.ranges[i] for i in idx), dict(weights), j._den)


def conditional_entropy(j, a, b=()):
    """H(X_A | X_B) as the average over values y of X_B of H(X_A | X_B = y).

    Values y of probability zero contribute nothing.
    """
    ma, mb = _mask(a), _mask(b)
    if ma & mb:
        raise ValueError("conditioned and conditioning coordinates overlap")
    if (ma | mb) >> j.arity:
        raise ValueError("coordinate index out of range")
    if not mb:
        return j.entropy_of(ma)
    key = ("c", ma, mb)
    cached = j._cache.get(key)
    if cached is not None:
        return cached
    joint = j._marginal_weights(ma | mb)
    both = _indices(ma | mb)
    pos_b = [both.index(i) for i in _indices(mb)]
    groups = {}
    for k, w in joint.items():
        if w:
            groups.setdefault(tuple(k[p] for p in pos_b), []).append(w)
    total = 0.0
    for ws in groups.values():
        wy = sum(ws)
        # p(y) * H(X_A | y) with p(x|y) = w / wy
        total += wy * _entropy_of_weights(ws, wy)
    value = max(total / j._den, 0.0)
    j._cache[key] = value
    return value


# ---------------------------------------------------------------------------
# covers and orders

@dataclass(frozen=True)
class CoverFamily:
    n: int
    members: tuple
    depth: int = field(init=False)

    def __post_init__(self):
        members = tuple(_mask(m) for m in self.members)
        for m in members:
            if m < 0 or m >> self.n:
                raise ValueError(f"member {m:b} is not a subset of [{self.n}]")
        object.__setattr__(self, "members", members)
        depth = min((sum(1 for m in members if m >> i & 1) for i in range(self.n)), default=0)
        object.__setattr__(self, "depth", depth)

    @classmethod
    def singletons(cls, n):
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def all_subsets_of_size(cls, n, k):
        return cls(n, tuple(_mask(c) for c in combinations(range(n), k)))


class PartialOrder:
    """Strict partial order on range(n), stored as its transitive closure."""

    def __init__(self, n, pairs=()):
        self.n = n
        below = [0] * n   # below[j] = mask of i with i < j in the order
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) outside range({n})")
            below[j] |= 1 << i
        changed = True
        while changed:
            changed = False
            for j in range(n):
                acc = below[j]
                for i in _indices(below[j]):
                    acc |= below[i]
                if acc != below[j]:
                    below[j] = acc
                    changed = True
        for j in range(n):
            if below[j] >> j & 1:
                raise ValueError("relation is not irreflexive after closure (it has a cycle)")
        self.below = tuple(below)

    @classmethod
    def total(cls, order):
        order = list(order)
        return cls(len(order), [(order[k], order[k + 1]) for k in range(len(order) - 1)])

    def precedes(self, i, j):
        return bool(self.below[j] >> i & 1)

    def pairs(self):
        return {(i, j) for j in range(self.n) for i in _indices(self.below[j])}

    def below_all(self, members_mask):
        """Mask of i with i preceding every element of the set."""
        acc = (1 << self.n) - 1
        for x in _indices(members_mask):
            acc &= self.below[x]
        return acc


# ---------------------------------------------------------------------------
# reports

@dataclass
class PropertyReport:
    """Outcome of one entropy check.

    For an inequality ``lhs <= rhs`` the deviation is ``lhs - rhs`` (positive
    means violated) and the check holds when it is at most ``tol``. For an
    equality the deviation is ``|lhs - rhs|``.
    """

    name: str
    kind: str
    lhs: float
    rhs: float
    deviation: float
    tol: float
    holds: bool
    detail: str = ""

    def to_json(self):
        return {
            "name": self.name, "kind": self.kind, "lhs": self.lhs, "rhs": self.rhs,
            "deviation": self.deviation, "tol": self.tol, "holds": self.holds,
            "detail": self.detail,
        }


def _le(name, lhs, rhs, tol, detail=""):
    dev = lhs - rhs
    return PropertyReport(name, "inequality", lhs, rhs, dev, tol, dev <= tol, detail)


def _eq(name, lhs, rhs, tol, detail=""):
    dev = abs(lhs - rhs)
    return PropertyReport(name, "equality", lhs, rhs, dev, tol, dev <= tol, detail)


def _worst(name, reports):
    """Merge several reports of one kind, keeping the largest deviation."""
    if not reports:
        raise ValueError(f"{name}: nothing to check")
    worst = max(reports, key=lambda r: r.deviation)
    return PropertyReport(name, worst.kind, worst.lhs, worst.rhs, worst.deviation, worst.tol,
                          all(r.holds for r in reports), worst.detail)


def _rest(j, given):
    g = _mask(given)
    return [i for i in range(j.arity) if not g >> i & 1], g


# ---------------------------------------------------------------------------
# property checkers

def check_maximality(j, tol=DEFAULT_TOL):
    """H(X) <= log2 of the size of the product space."""
    size = 1
    for r in j.ranges:
        size *= r
    return _le("maximality", entropy(j), log2(size), tol)


def check_conditional_maximality(j, a, b, tol=DEFAULT_TOL):
    """H(X_A | X_B = y) <= log2 |range(X_A | X_B = y)| for every y of positive probability."""
    ma, mb = _mask(a), _mask(b)
    if ma & mb:
        raise ValueError("conditioned and conditioning coordinates overlap")
    joint = j._marginal_weights(ma | mb)
    both = _indices(ma | mb)
    pos_b = [both.index(i) for i in _indices(mb)]
    groups = {}
    for k, w in joint.items():
        if w:
            groups.setdefault(tuple(k[p] for p in pos_b), []).append(w)
    reports = [_le("conditional-maximality", _entropy_of_weights(ws, sum(ws)), log2(len(ws)), tol,
                   f"given X_B={y}") for y, ws in groups.items()]
    return _worst("conditional-maximality", reports)


def check_chain_rule(j, tol=DEFAULT_TOL, given=()):
    """H(X | Z) = sum_i H(X_i | X_1..X_{i-1}, Z), Z the ``given`` coordinates."""
    rest, g = _rest(j, given)
    if len(rest) < 1:
        raise ValueError("chain rule needs at least one free coordinate")
    lhs = conditional_entropy(j, _mask(rest), g)
    rhs = 0.0
    prefix = 0
    for i in rest:
        rhs += conditional_entropy(j, 1 << i, prefix | g)
        prefix |= 1 << i
    return _eq("conditional-chain-rule" if g else "chain-rule", lhs, rhs, tol)


def check_subadditivity(j, tol=DEFAULT_TOL, given=()):
    """H(X | Z) <= sum_i H(X_i | Z)."""
    rest, g = _rest(j, given)
    lhs = conditional_entropy(j, _mask(rest), g)
    rhs = sum(conditional_entropy(j, 1 << i, g) for i in rest)
    return _le("conditional-subadditivity" if g else "subadditivity", lhs, rhs, tol)


def check_dropping(j, tol=DEFAULT_TOL, given=()):
    """H(X_i | X_B, Z) <= H(X_i | Z) for every coordinate i and nonempty B.

    With ``given`` empty this is the unconditional form H(X|Y) <= H(X);
    otherwise the second form H(X|Y,Z) <= H(X|Y) with Y the given part.
    """
    rest, g = _rest(j, given)
    reports = []
    for i in rest:
        others = [k for k in rest if k != i]
        base = conditional_entropy(j, 1 << i, g)
        for size in range(1, len(others) + 1):
            for b in combinations(others, size):
                lhs = conditional_entropy(j, 1 << i, _mask(b) | g)
                reports.append(_le("dropping", lhs, base, tol, f"i={i} B={list(b)}"))
    if not reports:
        # a single free coordinate: dropping against the given part itself
        for i in rest:
            reports.append(_le("dropping", conditional_entropy(j, 1 << i, g),
                               j.entropy_of(1 << i), tol, f"i={i}"))
    return _worst("conditional-dropping" if g else "dropping", reports)


def check_shearer(j, cover, tol=DEFAULT_TOL, given=()):
    """H(X | Z) <= (1/t) sum_F H(X_F | Z).

    The cover lives on the non-given coordinates, numbered in increasing
    order; with ``given`` empty that is all of them.
    """
    rest, g = _rest(j, given)
    if cover.n != len(rest):
        raise ValueError(f"cover is on {cover.n} points but there are {len(rest)} free coordinates")
    if cover.depth < 1:
        raise ValueError("cover depth t must be positive")
    lift = lambda m: _mask(rest[i] for i in _indices(m))
    lhs = conditional_entropy(j, _mask(rest), g)
    rhs = sum(conditional_entropy(j, lift(f), g) for f in cover.members) / cover.depth
    return _le("conditional-shearer-1" if g else "shearer", lhs, rhs, tol, f"t={cover.depth}")


def check_conditional_shearer(j, cover, order, tol=DEFAULT_TOL):
    """H(X) <= (1/t) sum_F H(X_F | X_i : i precedes every element of F)."""
    if cover.n != j.arity or order.n != j.arity:
        raise ValueError("cover, order and distribution must share the ground set")
    if cover.depth < 1:
        raise ValueError("cover depth t must be positive")
    lhs = entropy(j)
    rhs = sum(conditional_entropy(j, f, order.below_all(f) & ~f) for f in cover.members) / cover.depth
    return _le("conditional-shearer", lhs, rhs, tol, f"t={cover.depth}")


def check_all(j, rng=None, tol=DEFAULT_TOL):
    """Every property check on one distribution; returns a list of reports.

    With an ``rng`` a random cover, order and conditioning set are drawn
    as well.
    """
    n = j.arity
    out = [check_maximality(j, tol), check_chain_rule(j, tol), check_subadditivity(j, tol)]
    if n >= 2:
        out.append(check_dropping(j, tol))
        out.append(check_shearer(j, CoverFamily.all_subsets_of_size(n, n - 1), tol))
        out.append(check_conditional_maximality(j, 1, 1 << (n - 1), tol))
    out.append(check_shearer(j, CoverFamily.singletons(n), tol))
    out.append(check_conditional_shearer(j, CoverFamily.singletons(n), PartialOrder.total(range(n)), tol))
    if rng is not None:
        cover = random_cover(rng, n)
        out.append(check_shearer(j, cover, tol))
        out.append(check_conditional_shearer(j, cover, random_order(rng, n), tol))
        if n >= 2:
            z = [rng.randrange(n)]
            out.append(check_chain_rule(j, tol, given=z))
            out.append(check_subadditivity(j, tol, given=z))
            out.append(check_dropping(j, tol, given=z))
            out.append(check_shearer(j, random_cover(rng, n - 1), tol, given=z))
    return out


# ---------------------------------------------------------------------------
# random instances

def random_joint(rng, arity, max_range=4, max_weight=6, zero_rate=0.3):
    """A random rational distribution with some zero and some correlated cells."""
    ranges = tuple(rng.randint(1, max_range) for _ in range(arity))
    style = rng.random()
    cells = list(product(*map(range, ranges)))
    weights = {}
    if style < 0.15:
        # a deterministic function of the first coordinate
        f = {}
        for k in cells:
            image = tuple(f.setdefault((i, k[0]), rng.randrange(r)) for i, r in enumerate(ranges))
            image = (k[0],) + image[1:]
            weights[image] = weights.get(image, 0) + rng.randint(1, max_weight)
    elif style < 0.3:
        # independent coordinates
        factors = [[rng.randint(1, max_weight) for _ in range(r)] for r in ranges]
        for k in cells:
            w = 1
            for i, v in enumerate(k):
                w *= factors[i][v]
            weights[k] = w
    else:
        for k in cells:
            weights[k] = 0 if rng.random() < zero_rate else rng.randint(1, max_weight)
    if sum(weights.values()) == 0:
        weights[cells[rng.randrange(len(cells))]] = 1
    return JointDistribution.from_weights(ranges, weights)


def random_cover(rng, n, max_members=6):
    """A random multiset of subsets covering every point at least once."""
    members = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, max_members))] if n else []
    covered = 0
    for m in members:
        covered |= m
    for i in range(n):
        if not covered >> i & 1:
            members.append(1 << i)
    return CoverFamily(n, tuple(members))


def random_order(rng, n, density=0.4):
    """A random partial order: random forward pairs along a random permutation."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return PartialOrder(n, pairs)


# ---------------------------------------------------------------------------
# binomial entropy, tails, surprise

DEFAULT_BINOMIAL_C = 1.2


def binomial_half_entropy(m):
    """Entropy in bits of Binomial(m, 1/2).

    The coefficients C(m, k) are exact integers; each term
    p log2(1/p) with p = C(m, k) / 2^m is then evaluated from log2 C(m, k).
    """
    if m < 1:
        raise ValueError("m must be positive")
    total = 0.0
    c = 1
    for k in range(m + 1):
        lc = log2(c)
        total += 2.0 ** (lc - m) * (m - lc)
        c = c * (m - k) // (k + 1)
    return total


def binomial_entropy_within(m, c=DEFAULT_BINOMIAL_C):
    """Whether H(Binomial(m, 1/2)) <= log2(m)/2 + c."""
    return binomial_half_entropy(m) <= log2(m) / 2 + c


def chernoff_tail_check(n, c):
    """Exact Pr(|X - n/2| >= c sqrt(n)/2) for X ~ Binomial(n, 1/2), against 2^(1 - c^2/2).

    c is read as an exact rational, so both the threshold test
    |2k - n| >= c sqrt(n) and the final comparison tail^b <= 2^a (with
    1 - c^2/2 = a/b) are done in integers.
    """
    if n < 1:
        raise ValueError("n must be positive")
    c = Fraction(repr(c)) if isinstance(c, float) else Fraction(c)
    if c < 0:
        raise ValueError("c must be nonnegative")
    c2n = c * c * n
    hits = sum(comb(n, k) for k in range(n + 1) if (2 * k - n) ** 2 >= c2n)
    tail = Fraction(hits, 1 << n)
    exponent = 1 - c * c / 2
    a, b = exponent.numerator, exponent.denominator
    if b > 10**4:
        raise ValueError(f"c={c} has too large a denominator for an exact comparison")
    powered = tail ** b
    holds = powered <= (Fraction(2) ** a)
    lhs = float(tail)
    rhs = 2.0 ** float(exponent)
    return PropertyReport("chernoff-tail", "inequality", lhs, rhs, lhs - rhs, 0.0, holds,
                          f"n={n} c={c} tail={tail}")


def check_surprise_axioms(sample, tol=1e-12):
    """S(p) = -log2(p): S(1) = 0, S(1/2) = 1, strictly decreasing, S(pq) = S(p) + S(q)."""
    sample = [float(p) for p in sample]
    if any(not 0 < p <= 1 for p in sample):
        raise ValueError("sample values must lie in (0, 1]")
    s = lambda p: -log2(p)
    reports = [_eq("surprise-one", s(1.0), 0.0, tol), _eq("surprise-half", s(0.5), 1.0, tol)]
    srt = sorted(set(sample))
    for p, q in zip(srt, srt[1:]):
        # p < q must give S(p) > S(q)
        reports.append(_le("surprise-monotone", s(q), s(p), 0.0, f"p={p} q={q}"))
        if not s(p) > s(q):
            reports[-1].holds = False
    for p in sample:
        for q in sample:
            if p * q > 0:
                reports.append(_eq("surprise-additive", s(p * q), s(p) + s(q),
                                   tol * max(1.0, s(p) + s(q)), f"p={p} q={q}"))
    return _worst("surprise-axioms", reports)


# ---------------------------------------------------------------------------
# text format

def format_joint(j):
    """Text form: header ``joint n r1 .. rn`` then ``v1 .. vn p/q`` lines in
    lexicographic tuple order."""
    lines = ["joint " + " ".join(str(x) for x in (j.arity,) + j.ranges)]
    for key in sorted(j._weights):
        p = Fraction(j._weights[key], j._den)
        lines.append(" ".join(map(str, key)) + (" " if key else "") + f"{p.numerator}/{p.denominator}")
    return "\n".join(lines) + "\n"


def parse_joint(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty joint distribution text")
    head = lines[0].split()
    if head[0] != "joint" or len(head) < 2:
        raise ValueError(f"bad header {lines[0]!r}: expected 'joint n r1 .. rn'")
    try:
        n = int(head[1])
        ranges = tuple(int(x) for x in head[2:])
    except ValueError:
        raise ValueError(f"bad header {lines[0]!r}: non-integer field") from None
    if len(ranges) != n:
        raise ValueError(f"header declares arity {n} but lists {len(ranges)} ranges")
    table = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != n + 1:
            raise ValueError(f"line {lineno}: expected {n} values and a probability")
        try:
            key = tuple(int(v) for v in parts[:n])
            p = Fraction(parts[n])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: cannot parse {ln!r}") from None
        if key in table:
            raise ValueError(f"line {lineno}: duplicate tuple {key}")
        table[key] = p
    return JointDistribution(ranges, table)


def read_joint(path):
    with open(path) as fh:
        return parse_joint(fh.read())


def write_joint(j, path):
    with open(path, "w") as fh:
        fh.write(format_joint(j))

