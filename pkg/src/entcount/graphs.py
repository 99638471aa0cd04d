"""Graphs, 0-1 matrices, lattice bodies and set families.

Adjacency is stored as one integer bitmask per vertex. Loops live in a
separate bitmask so ``adj`` is always the loop-free symmetric part. A
looped vertex has degree ``popcount(adj[v]) + 1``: the loop counts once.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product

from .caps import CapExceeded, cap, check_cap


class GraphFormatError(ValueError):
    """A graph or matrix file could not be parsed."""


def popcount(x):
    return x.bit_count()


def bits(x):
    """Indices of set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple
    loops: int = 0
    loops_allowed: bool = False
    bipartition: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        check_cap("graph_vertices", self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError("loops must be given through the loops mask")
            for w in bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {w})")
        if self.loops & ~full:
            raise ValueError("loop mask out of range")
        if self.loops and not self.loops_allowed:
            raise ValueError("loops present but loops_allowed is false")
        if self.bipartition is not None:
            left = self.bipartition
            if left & ~full:
                raise ValueError("bipartition mask out of range")
            if self.loops:
                raise ValueError("a bipartite graph cannot carry loops")
            for v in range(self.n):
                side = left if not left >> v & 1 else full & ~left
                if self.adj[v] & ~side:
                    raise ValueError(f"edge at vertex {v} does not cross the bipartition")

    @classmethod
    def from_edges(cls, n, edges, loops_allowed=False, bipartition=None):
        adj = [0] * n
        loops = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                loops |= 1 << u
            else:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return cls(n, tuple(adj), loops, bool(loops_allowed), bipartition)

    def edges(self):
        """Non-loop edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def loop_vertices(self):
        return bits(self.loops)

    @property
    def num_edges(self):
        return sum(popcount(r) for r in self.adj) // 2

    def has_loop(self, v):
        return bool(self.loops >> v & 1)

    def adjacent(self, u, v):
        if u == v:
            return self.has_loop(u)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v):
        return popcount(self.adj[v]) + (self.loops >> v & 1)

    def degrees(self):
        return [self.degree(v) for v in range(self.n)]

    def is_regular(self, d=None):
        degs = set(self.degrees())
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def neighbours(self, v):
        return bits(self.adj[v])

    def components(self):
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def two_colouring(self):
        """Left-class bitmask of a proper 2-colouring, or None.

        The lowest vertex of each component goes to the left class.
        """
        if self.loops:
            return None
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in bits(self.adj[v]):
                    if colour[w] < 0:
                        colour[w] = 1 - colour[v]
                        stack.append(w)
                    elif colour[w] == colour[v]:
                        return None
        return mask_of(v for v in range(self.n) if colour[v] == 0)

    def with_bipartition(self, left=None):
        if left is None:
            left = self.two_colouring()
            if left is None:
                raise ValueError("graph is not bipartite")
        return Graph(self.n, self.adj, self.loops, self.loops_allowed, left)

    def relabel(self, perm):
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for w in bits(self.adj[v]):
                row |= 1 << perm[w]
            adj[perm[v]] = row
        loops = mask_of(perm[v] for v in bits(self.loops))
        bip = None
        if self.bipartition is not None:
            bip = mask_of(perm[v] for v in bits(self.bipartition))
        return Graph(self.n, tuple(adj), loops, self.loops_allowed, bip)

    def disjoint_union(self, other):
        shift = self.n
        adj = list(self.adj) + [row << shift for row in other.adj]
        loops = self.loops | (other.loops << shift)
        bip = None
        if self.bipartition is not None and other.bipartition is not None:
            bip = self.bipartition | (other.bipartition << shift)
        return Graph(self.n + other.n, tuple(adj), loops,
                     self.loops_allowed or other.loops_allowed, bip)

    def adjacency_matrix(self):
        """``Adj(G)`` as a ZeroOneMatrix; loops land on the diagonal."""
        rows = [self.adj[v] | (self.loops & (1 << v)) for v in range(self.n)]
        return ZeroOneMatrix(self.n, tuple(rows))

    def bipartite_half(self):
        """Biadjacency matrix (left class rows, right class columns)."""
        left = self.bipartition if self.bipartition is not None else self.two_colouring()
        if left is None:
            raise ValueError("graph is not bipartite")
        lv = bits(left)
        rv = [v for v in range(self.n) if not left >> v & 1]
        if len(lv) != len(rv):
            raise ValueError("bipartition classes have different sizes")
        col = {w: j for j, w in enumerate(rv)}
        rows = tuple(mask_of(col[w] for w in bits(self.adj[v])) for v in lv)
        return ZeroOneMatrix(len(lv), rows)

    def encode(self):
        """Compact text encoding of this labelled graph (not canonical)."""
        return f"{self.n}:{_code(self, range(self.n)):x}"

    def to_text(self):
        return write_graph(self)


@dataclass(frozen=True)
class ZeroOneMatrix:
    n: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise ValueError("row has entries outside the matrix")

    @classmethod
    def from_lists(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        out = []
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix is not square")
            if any(x not in (0, 1) for x in r):
                raise ValueError("entries must be 0 or 1")
            out.append(mask_of(j for j, x in enumerate(r) if x))
        return cls(n, tuple(out))

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n):
        return cls(n, tuple((1 << n) - 1 for _ in range(n)))

    @classmethod
    def block_diagonal(cls, sizes):
        rows = []
        offset = 0
        for s in sizes:
            block = ((1 << s) - 1) << offset
            rows.extend([block] * s)
            offset += s
        return cls(offset, tuple(rows))

    def entry(self, i, j):
        return self.rows[i] >> j & 1

    def row_sums(self):
        return [popcount(r) for r in self.rows]

    def to_lists(self):
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_graph(self):
        """Bipartite graph G(A): rows are vertices 0..n-1, columns n..2n-1."""
        n = self.n
        edges = [(i, n + j) for i in range(n) for j in bits(self.rows[i])]
        return Graph.from_edges(2 * n, edges, bipartition=(1 << n) - 1)

    def encode(self):
        return f"{self.n}:" + ",".join(format(r, "x") for r in self.rows)

    def to_text(self):
        return write_matrix(self)


@dataclass(frozen=True)
class LatticeBody:
    dim: int
    cells: frozenset

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be at least 2")
        if not self.cells:
            raise ValueError("lattice body must be non-empty")
        limit = cap("lattice_coordinate")
        for c in self.cells:
            if len(c) != self.dim:
                raise ValueError(f"cell {c} has wrong dimension")
            if any(abs(x) > limit for x in c):
                raise ValueError(f"cell {c} exceeds coordinate bound {limit}")

    @classmethod
    def of(cls, cells):
        cells = frozenset(tuple(int(x) for x in c) for c in cells)
        dim = len(next(iter(cells))) if cells else 0
        return cls(dim, cells)

    @classmethod
    def box(cls, sides):
        return cls.of(product(*(range(s) for s in sides)))


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: tuple = field(default_factory=tuple)

    def __post_init__(self):
        check_cap("set_family_n", self.n)
        full = (1 << self.n) - 1
        for m in self.members:
            if m < 0 or m & ~full:
                raise ValueError(f"member {m:b} is not a subset of [{self.n}]")

    @classmethod
    def from_sets(cls, n, sets):
        return cls(n, tuple(mask_of(s) for s in sets))

    def as_sets(self):
        return [set(bits(m)) for m in self.members]

    def __len__(self):
        return len(self.members)


# ---------------------------------------------------------------------------
# named graphs

def complete_bipartite(a, b):
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(a + b, edges, bipartition=(1 << a) - 1)


def complete(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def empty(n):
    return Graph.from_edges(n, [])


def k_nd(n, d):
    """Disjoint union of n/d copies of K_{d,d} (2n vertices, nd edges)."""
    if d < 1 or n % d:
        raise ValueError(f"K(n,d) needs d | n, got n={n}, d={d}")
    g = Graph(0, (), bipartition=0)
    for _ in range(n // d):
        g = g.disjoint_union(complete_bipartite(d, d))
    assert g.n == 2 * n and g.num_edges == n * d and g.is_regular(d)
    return g


def h_ind():
    """Two adjacent vertices, loop on vertex 1 only (vertex 0 is unlooped)."""
    return Graph.from_edges(2, [(0, 1), (1, 1)], loops_allowed=True)


def h_wr():
    """Fully looped path on three vertices (0 - 1 - 2)."""
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 0), (1, 1), (2, 2)], loops_allowed=True)


def prism(k=3):
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


_NAMED = {
    "k_dd": lambda d: complete_bipartite(d, d),
    "k_ab": complete_bipartite,
    "knd": k_nd,
    "kn": complete,
    "h_ind": h_ind,
    "h_wr": h_wr,
    "cycle": cycle,
    "path": path,
    "empty": empty,
    "prism": prism,
}


def make_named(name, *params):
    """Build a named graph, e.g. ``make_named("knd", 12, 3)``."""
    try:
        builder = _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; known: {sorted(_NAMED)}") from None
    return builder(*params)


def parse_named(spec):
    """Parse shorthand such as ``k_dd:3``, ``knd:12,3``, ``h_wr``."""
    name, _, args = spec.partition(":")
    params = [int(a) for a in args.split(",")] if args else []
    return make_named(name, *params)


# ---------------------------------------------------------------------------
# canonical labelling

def _code(g, order):
    """Integer code of the graph read in vertex order ``order``.

    Bits, most significant first: the loop flags, then the upper triangle
    of the adjacency matrix row by row. Fixed length, so integer order is
    lexicographic order of the bit string.
    """
    order = list(order)
    n = len(order)
    code = 0
    for v in order:
        code = code << 1 | (g.loops >> v & 1)
    for i in range(n):
        row = g.adj[order[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> order[j] & 1)
    return code


def _refine(g, cells):
    adj = g.adj
    while True:
        masks = [mask_of(c) for c in cells]
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                sig = tuple(popcount(adj[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
                for sig in sorted(groups):
                    out.append(groups[sig])
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


class _Search:
    def __init__(self, g):
        self.g = g
        self.best = None
        self.best_order = None
        self.auts = []

    def run(self, cells, prefix):
        cells = _refine(self.g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(self.g, order)
            if self.best is None or code < self.best:
                self.best, self.best_order = code, order
            elif code == self.best:
                aut = [0] * self.g.n
                for a, b in zip(self.best_order, order):
                    aut[a] = b
                self.auts.append(aut)
            return
        cell = cells[target]
        explored = []
        for v in cell:
            if explored and self._same_orbit(v, explored, prefix):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1:], prefix + [v])

    def _same_orbit(self, v, explored, prefix):
        usable = [a for a in self.auts if all(a[p] == p for p in prefix)]
        if not usable:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in usable:
                y = a[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(w in orbit for w in explored)


def canonical_labelling(g):
    """Return ``order`` with ``order[i]`` the original vertex placed at i."""
    if g.n == 0:
        return []
    key = {}
    for v in range(g.n):
        key.setdefault((g.loops >> v & 1, popcount(g.adj[v])), []).append(v)
    cells = [key[k] for k in sorted(key)]
    search = _Search(g)
    search.run(cells, [])
    return search.best_order


def _form_bytes(n, code):
    nbits = n + n * (n - 1) // 2
    return n.to_bytes(1, "big") + code.to_bytes((nbits + 7) // 8, "big")


def canonical_form(g):
    """Canonical byte string: equal for two graphs iff they are isomorphic.

    The form is the lexicographically least code over the leaves of an
    individualisation-refinement search tree, which is itself built in an
    isomorphism-invariant way. Loops take part in the comparison; the
    bipartition metadata does not.
    """
    order = canonical_labelling(g)
    return _form_bytes(g.n, _code(g, order))


def canonical_form_bruteforce(g):
    """Least code over *all* vertex orders with degree-respecting pruning.

    Exponential; used as an independent oracle for small graphs.
    """
    check_cap("canonical_exhaustive_n", g.n)
    keyed = sorted(range(g.n), key=lambda v: (g.loops >> v & 1, popcount(g.adj[v])))
    groups = []
    for v in keyed:
        k = (g.loops >> v & 1, popcount(g.adj[v]))
        if groups and groups[-1][0] == k:
            groups[-1][1].append(v)
        else:
            groups.append((k, [v]))
    best = None
    for parts in product(*(permutations(vs) for _, vs in groups)):
        order = [v for part in parts for v in part]
        code = _code(g, order)
        if best is None or code < best:
            best = code
    return _form_bytes(g.n, best if best is not None else 0)


def canonical_graph(g):
    """Relabel ``g`` into its canonical representative."""
    order = canonical_labelling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    h = g.relabel(perm)
    if g.bipartition is not None:
        h = h.with_bipartition()
    return h


def is_isomorphic(g, h):
    return g.n == h.n and canonical_form(g) == canonical_form(h)


def _dedupe(graphs, bipartite=False):
    seen = {}
    for g in graphs:
        form = canonical_form(g)
        if form not in seen:
            seen[form] = g
    out = []
    for form in sorted(seen):
        h = canonical_graph(seen[form])
        if bipartite:
            h = h.with_bipartition()
        out.append(h)
    return out


# ---------------------------------------------------------------------------
# enumeration

def _regular_labelled(n, d):
    """Labelled d-regular graphs, pruned by interchangeable-twin symmetry.

    When vertex v picks its later neighbours, untouched-later vertices with
    the same neighbourhood so far are interchangeable, so only initial
    segments of each such twin class are tried. Every isomorphism class
    keeps at least one representative.
    """
    adj = [0] * n

    def choices(classes, need):
        if not classes:
            if need == 0:
                yield []
            return
        first, rest = classes[0], classes[1:]
        room = sum(len(c) for c in rest)
        for k in range(min(need, len(first)), -1, -1):
            if need - k > room:
                break
            for tail in choices(rest, need - k):
                yield first[:k] + tail

    def rec(v):
        if v == n:
            yield tuple(adj)
            return
        need = d - popcount(adj[v])
        if need < 0:
            return
        classes = {}
        for w in range(v + 1, n):
            if popcount(adj[w]) < d:
                classes.setdefault(adj[w], []).append(w)
        ordered = [classes[k] for k in sorted(classes)]
        for chosen in choices(ordered, need):
            for w in chosen:
                adj[v] |= 1 << w
                adj[w] |= 1 << v
            yield from rec(v + 1)
            for w in chosen:
                adj[v] &= ~(1 << w)
                adj[w] &= ~(1 << v)

    return rec(0)


@lru_cache(maxsize=None)
def _regular_cached(n, d):
    if d == 0:
        return (empty(n),)
    graphs = (Graph(n, a) for a in _regular_labelled(n, d))
    return tuple(_dedupe(graphs))


def enumerate_regular(n, d):
    """One canonical representative per isomorphism class of d-regular
    simple graphs on n vertices (connected or not), in canonical-form order."""
    if n * d % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices: n*d is odd")
    if d < 0 or (n > 0 and d >= n) or (n == 0 and d > 0):
        return iter(())
    if n > cap("regular_n"):
        raise CapExceeded(f"regular_n: {n} exceeds cap {cap('regular_n')}")
    return iter(_regular_cached(n, d))


def _biregular_matrices(h, d):
    rows = [0] * h
    colsum = [0] * h
    colhist = [0] * h

    def choices(classes, need):
        if not classes:
            if need == 0:
                yield []
            return
        first, rest = classes[0], classes[1:]
        room = sum(len(c) for c in rest)
        for k in range(min(need, len(first)), -1, -1):
            if need - k > room:
                break
            for tail in choices(rest, need - k):
                yield first[:k] + tail

    def rec(i):
        if i == h:
            yield tuple(rows)
            return
        left = h - i
        if any(d - c > left for c in colsum):
            return
        classes = {}
        for j in range(h):
            if colsum[j] < d:
                classes.setdefault(colhist[j], []).append(j)
        ordered = [classes[k] for k in sorted(classes)]
        for chosen in choices(ordered, d):
            for j in chosen:
                colsum[j] += 1
                colhist[j] |= 1 << i
            rows[i] = mask_of(chosen)
            yield from rec(i + 1)
            for j in chosen:
                colsum[j] -= 1
                colhist[j] &= ~(1 << i)
        rows[i] = 0

    return rec(0)


def _transpose(rows, h):
    return tuple(mask_of(i for i in range(h) if rows[i] >> j & 1) for j in range(h))


def _sort_normalise(rows, h):
    # alternate row and column sorting; isomorphism-preserving, cuts the
    # number of canonical-form calls by two orders of magnitude
    for _ in range(4 * h + 4):
        cols = tuple(sorted(_transpose(tuple(sorted(rows)), h)))
        new = _transpose(cols, h)
        if new == rows:
            break
        rows = new
    return rows


@lru_cache(maxsize=None)
def _bipartite_cached(h, d):
    distinct = {_sort_normalise(r, h) for r in _biregular_matrices(h, d)}
    graphs = (ZeroOneMatrix(h, r).to_graph() for r in sorted(distinct))
    return tuple(_dedupe(graphs, bipartite=True))


def enumerate_bipartite_regular(half_n, d):
    """One representative per isomorphism class of d-regular bipartite
    graphs with both classes of size ``half_n``."""
    if d < 0 or d > half_n:
        raise ValueError(f"degree {d} impossible with classes of size {half_n}")
    check_cap("bipartite_half_n", half_n)
    return iter(_bipartite_cached(half_n, d))


@lru_cache(maxsize=None)
def _all_graphs_cached(n):
    if n == 0:
        return (empty(0),)
    if n == 1:
        return (empty(1),)
    out = []
    for g in _all_graphs_cached(n - 1):
        for nbrs in range(1 << (n - 1)):
            k = popcount(nbrs)
            # the new vertex must be a minimum-degree vertex of the result
            if any(popcount(g.adj[w]) + (nbrs >> w & 1) < k for w in range(n - 1)):
                continue
            adj = list(g.adj) + [nbrs]
            for w in bits(nbrs):
                adj[w] |= 1 << (n - 1)
            out.append(Graph(n, tuple(adj)))
    return tuple(_dedupe(out))


def enumerate_graphs(n):
    """One representative per isomorphism class of simple graphs on n vertices."""
    check_cap("canonical_exhaustive_n", n)
    return iter(_all_graphs_cached(n))


# ---------------------------------------------------------------------------
# file formats

def write_graph(g, path=None):
    bip = "none" if g.bipartition is None else str(g.bipartition)
    lines = [f"graph {g.n} loops={int(g.loops_allowed)} bipartition={bip}"]
    items = [(u, v) for u, v in g.edges()] + [(v, v) for v in g.loop_vertices()]
    lines += [f"{u} {v}" for u, v in sorted(items)]
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def parse_graph(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    try:
        if len(head) != 4 or head[0] != "graph":
            raise ValueError
        n = int(head[1])
        if not head[2].startswith("loops=") or head[2][6:] not in ("0", "1"):
            raise ValueError
        loops_allowed = head[2][6:] == "1"
        if not head[3].startswith("bipartition="):
            raise ValueError
        bip_text = head[3][len("bipartition="):]
        bip = None if bip_text == "none" else int(bip_text)
    except ValueError:
        raise GraphFormatError(f"malformed header: {lines[0]!r}") from None
    edges = []
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line: {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range in {ln!r}")
        if u > v:
            raise GraphFormatError(f"edge {ln!r} not listed as u <= v")
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {ln!r}")
        if u == v and not loops_allowed:
            raise GraphFormatError(f"loop {ln!r} but loops=0")
        seen.add((u, v))
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges, loops_allowed=loops_allowed, bipartition=bip)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def read_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def write_matrix(a, path=None):
    lines = [f"matrix {a.n}"]
    lines += ["".join(str(x) for x in row) for row in a.to_lists()]
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def parse_matrix(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "matrix" or not head[1].isdigit():
        raise GraphFormatError(f"malformed header: {lines[0]!r}")
    n = int(head[1])
    body = lines[1:]
    if len(body) != n:
        raise GraphFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for ln in body:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise GraphFormatError(f"bad matrix row {ln!r}")
        rows.append([int(c) for c in ln])
    return ZeroOneMatrix.from_lists(rows) if n else ZeroOneMatrix(0, ())


def read_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())
