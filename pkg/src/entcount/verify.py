"""Sweep harness: pair a counter with a bound over a family of inputs.

Each registered check knows how to list its inputs, how to evaluate one
input into one or more outcomes, and whether it is a proved statement
(``theorem``) or an open one (``conjecture``). Inputs are plain JSON
values, so a violation witness can be stored and re-evaluated later.
"""

import csv
import io
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm, log2

from . import bounds as B
from . import count as C
from . import dist_entropy as E
from .caps import all_caps, check_cap
from .graphs import (
    Graph,
    LatticeBody,
    ZeroOneMatrix,
    canonical_form,
    enumerate_bipartite_regular,
    enumerate_graphs,
    enumerate_regular,
    k_nd,
    parse_graph,
    parse_matrix,
    parse_named,
)

THEOREM = "theorem"
CONJECTURE = "conjecture"

BAD_VERDICTS = {"AboveStrict", "Mismatch"}


class UnknownCheck(ValueError):
    pass


# ---------------------------------------------------------------------------
# data types

@dataclass
class Outcome:
    """One count-versus-bound comparison.

    ``verdict`` is one of BelowStrict, Equal, AboveStrict for inequalities,
    and Equal or Mismatch for identities.
    """

    label: str
    verdict: str
    count: object
    bound: object
    tight_key: str = ""

    @property
    def ok(self):
        return self.verdict not in BAD_VERDICTS


@dataclass
class CheckSpec:
    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def resolved(self):
        """Parameters with defaults filled in; unknown names are rejected."""
        check = get_check(self.name)
        unknown = set(self.params) - set(check.defaults)
        if unknown:
            raise ValueError(f"check {self.name!r} has no parameter(s) {sorted(unknown)}; "
                             f"known: {sorted(check.defaults)}")
        params = dict(check.defaults)
        params.update(self.params)
        return params


@dataclass
class Report:
    check: str
    kind: str
    params: dict
    instances: int
    passed: bool
    verdicts: dict
    tight: list
    violations: list
    seed: int
    elapsed_ms: int
    tol: float = E.DEFAULT_TOL
    caps: dict = field(default_factory=all_caps)
    rows: list = field(default_factory=list)

    def to_json(self):
        return {
            "check": self.check,
            "kind": self.kind,
            "params": self.params,
            "instances": self.instances,
            "pass": self.passed,
            "verdicts": dict(sorted(self.verdicts.items())),
            "tight": self.tight,
            "violations": self.violations,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "tol": self.tol,
            "caps": self.caps,
        }


@dataclass
class Check:
    name: str
    kind: str
    description: str
    defaults: dict
    instances: object    # (params, rng) -> iterable of JSON inputs
    evaluate: object     # (input, params) -> list of Outcome


_REGISTRY = {}


def register_check(name, kind, description, defaults, instances, evaluate):
    if kind not in (THEOREM, CONJECTURE):
        raise ValueError("kind must be 'theorem' or 'conjecture'")
    _REGISTRY[name] = Check(name, kind, description, dict(defaults), instances, evaluate)
    return _REGISTRY[name]


def unregister_check(name):
    _REGISTRY.pop(name, None)


def get_check(name):
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}; known: {', '.join(sorted(_REGISTRY))}") from None


def check_names():
    return sorted(_REGISTRY)


# ---------------------------------------------------------------------------
# helpers

def _bound_json(bound):
    if isinstance(bound, B.RootProductBound):
        return bound.to_json()
    if isinstance(bound, int):
        return str(bound)
    if isinstance(bound, Fraction):
        return f"{bound.numerator}/{bound.denominator}"
    return bound


def _count_json(count):
    if isinstance(count, int):
        return str(int(count))
    if isinstance(count, Fraction):
        return f"{count.numerator}/{count.denominator}"
    return count


def _cmp(label, count, bound, tight_key=""):
    """Outcome of count <= bound with the exact comparator."""
    if isinstance(bound, int):
        bound = B.RootProductBound.integer(bound) if bound > 0 else bound
    if isinstance(bound, int):        # bound 0: only count 0 is fine
        verdict = "Equal" if count == 0 else "AboveStrict"
    else:
        verdict = str(B.compare_exact(count, bound).verdict)
    return Outcome(label, verdict, int(count), bound, tight_key if verdict == "Equal" else "")


def _ident(label, left, right, tight_key=""):
    return Outcome(label, "Equal" if left == right else "Mismatch", left, right, tight_key)


def _form(g):
    return canonical_form(g).hex()


def _g(text):
    return parse_graph(text)


def _named(name):
    return parse_named(name)


def _regular_family(params):
    n_min, n_max, degrees = params.get("n_min", 1), params["n_max"], params["d"]
    degrees = [degrees] if isinstance(degrees, (int, str)) else list(degrees)
    for n in range(max(n_min, 1), n_max + 1):
        for d in degrees:
            if d == "all":
                ds = range(0, n)
            else:
                ds = [d]
            for dd in ds:
                if dd < n and n * dd % 2 == 0:
                    for g in enumerate_regular(n, dd):
                        yield g


def _bipartite_family(params):
    degrees = params["d"]
    degrees = [degrees] if isinstance(degrees, int) else list(degrees)
    for h in range(params.get("half_n_min", 1), params["half_n_max"] + 1):
        for d in degrees:
            if 1 <= d <= h:
                for g in enumerate_bipartite_regular(h, d):
                    yield g


# ---------------------------------------------------------------------------
# theorem checks

def _bregman_instances(params, rng):
    n = params["n"]
    if n:
        check_cap("permanent", n)
        for bits in range(1 << (n * n)):
            rows = [(bits >> (i * n)) & ((1 << n) - 1) for i in range(n)]
            yield {"matrix": ZeroOneMatrix(n, tuple(rows)).to_text()}
    for _ in range(params["random"]):
        m = rng.randint(1, params["random_max_n"])
        density = rng.random()
        rows = [sum(1 << j for j in range(m) if rng.random() < density) for _ in range(m)]
        yield {"matrix": ZeroOneMatrix(m, tuple(rows)).to_text()}


def _bregman_eval(inp, params):
    a = parse_matrix(inp["matrix"])
    perm = C.permanent(a)
    out = _cmp("perm<=bregman", perm, B.bregman_bound(a.row_sums()))
    if out.verdict == "Equal":
        out.tight_key = _form(a.to_graph())
    return [out]


def _kl_instances(params, rng):
    for g in _regular_family(params):
        yield {"graph": g.to_text()}


def _kl_eval(inp, params):
    g = _g(inp["graph"])
    out = _cmp("pm<=kahn-lovasz", C.perfect_matchings(g), B.kahn_lovasz_bound(g.degrees()))
    if out.verdict == "Equal":
        out.tight_key = _form(g)
    return [out]


def _bip_instances(params, rng):
    for g in _bipartite_family(params):
        yield {"graph": g.to_text()}


def _thm61_eval(inp, params):
    g = _g(inp["graph"])
    d = g.degree(0)
    out = []
    for q in params["q"]:
        o = _cmp(f"c_{q}", C.colorings(g, q), B.colorings_bip_bound(g.n, d, q))
        o.tight_key = _form(g) if o.verdict == "Equal" else ""
        out.append(o)
    return out


def _thm62_eval(inp, params):
    g = _g(inp["graph"])
    d = g.degree(0)
    out = []
    for name in params["H"]:
        h = _named(name)
        o = _cmp(f"hom({name})", C.hom_count(g, h), B.homs_bip_bound(g.n, d, h))
        o.tight_key = _form(g) if o.verdict == "Equal" else ""
        out.append(o)
    return out


def _thm63_instances(params, rng):
    for g in _regular_family(params):
        orders = [list(range(g.n))]
        for _ in range(params["random_orders"]):
            o = list(range(g.n))
            rng.shuffle(o)
            orders.append(o)
        for o in orders:
            yield {"graph": g.to_text(), "order": o}


def _thm63_eval(inp, params):
    g = _g(inp["graph"])
    order = inp["order"]
    d = g.degree(0)
    out = []
    for name in params["H"]:
        h = _named(name)
        bound = B.nonbip_order_bound(g, order, h)
        o = _cmp(f"hom({name})<=order-bound", C.hom_count(g, h), bound)
        o.tight_key = _form(g) if o.verdict == "Equal" else ""
        out.append(o)
        left = g.two_colouring()
        if left is not None:
            first = [v for v in range(g.n) if left >> v & 1] + [v for v in range(g.n) if not left >> v & 1]
            spec = B.nonbip_order_bound(g, first, h)
            out.append(_ident(f"class-order({name})==bip-bound",
                              spec.same_value(B.homs_bip_bound(g.n, d, h)), True))
        if name == "kn:3":
            relaxed = B.k3_relaxed_order_bound(g, order)
            closed = B.k3_closed_form(g.n, d)
            out.append(_ident("k3-relaxed==2^(n/2)6^(n/d)", relaxed.same_value(closed), True))
            out.append(_cmp("c_3<=2^(n/2)6^(n/d)", C.colorings(g, 3), closed))
            m = lcm(bound.root_lcm(), closed.root_lcm())
            out.append(Outcome("order-bound<=closed-form",
                               "BelowStrict" if bound.power(m) < closed.power(m) else
                               "Equal" if bound.power(m) == closed.power(m) else "AboveStrict",
                               bound.to_json(), closed))
    return out


def _af_instances(params, rng):
    for n in range(1, params["n_max"] + 1):
        for g in enumerate_graphs(n):
            yield {"graph": g.to_text()}


def _af_eval(inp, params):
    g = _g(inp["graph"])
    even, every = C.cycle_cover_sums(g)
    pm = C.perfect_matchings(g)
    return [_ident("even-covers==pm^2", int(even), pm * pm),
            _ident("all-covers==perm(Adj)", int(every), int(C.permanent(g.adjacency_matrix())))]


def _random_body(rng, dim, max_cells):
    shape = rng.random()
    if shape < 0.2:
        sides = [rng.randint(1, 5) for _ in range(dim)]
        while _prod(sides) > max_cells:
            sides[rng.randrange(dim)] = max(1, sides[rng.randrange(dim)] - 1)
        return LatticeBody.box(sides)
    target = rng.randint(1, max_cells)
    side = rng.randint(2, 8)
    if shape < 0.6:
        cells = {tuple(rng.randrange(side) for _ in range(dim)) for _ in range(target)}
    else:
        cells = {(0,) * dim}
        frontier = [(0,) * dim]
        while len(cells) < target:
            c = rng.choice(frontier)
            k = rng.randrange(dim)
            nxt = c[:k] + (c[k] + rng.choice((-1, 1)),) + c[k + 1:]
            if nxt not in cells:
                cells.add(nxt)
                frontier.append(nxt)
    return LatticeBody.of(cells)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _lw_instances(params, rng):
    for _ in range(params["count"]):
        dim = rng.randint(params["dim_min"], params["dim_max"])
        body = _random_body(rng, dim, params["max_cells"])
        yield {"body": sorted(list(c) for c in body.cells)}


def _lw_eval(inp, params):
    body = LatticeBody.of(tuple(c) for c in inp["body"])
    vol, bound = B.loomis_whitney_bound(body)
    out = _cmp("vol<=prod proj^(1/(n-1))", vol, bound)
    is_box = vol == _prod(len({c[k] for c in body.cells}) for k in range(body.dim))
    if out.verdict == "Equal":
        out.tight_key = ("box:" if is_box else "body:") + str(len(body.cells))
    return [out]


def _fuzz_instances(params, rng):
    for _ in range(params["count"]):
        arity = rng.randint(1, params["max_arity"])
        j = E.random_joint(rng, arity, params["max_range"])
        yield {"joint": E.format_joint(j), "seed": rng.getrandbits(32)}


def _report_outcome(r):
    if r.kind == "equality":
        return Outcome(r.name, "Equal" if r.holds else "Mismatch", r.lhs, r.rhs)
    if not r.holds:
        verdict = "AboveStrict"
    elif abs(r.deviation) <= r.tol:
        verdict = "Equal"
    else:
        verdict = "BelowStrict"
    return Outcome(r.name + (f" [{r.detail}]" if r.detail and not r.holds else ""), verdict, r.lhs, r.rhs)


def _entropy_eval(inp, params):
    j = E.parse_joint(inp["joint"])
    rng = random.Random(inp["seed"])
    return [_report_outcome(r) for r in E.check_all(j, rng, params["tol"])]


def _shearer_eval(inp, params):
    j = E.parse_joint(inp["joint"])
    rng = random.Random(inp["seed"])
    n = j.arity
    tol = params["tol"]
    reports = [E.check_shearer(j, E.CoverFamily.singletons(n), tol)]
    if n >= 2:
        reports.append(E.check_shearer(j, E.CoverFamily.all_subsets_of_size(n, n - 1), tol))
    for _ in range(params["covers"]):
        cover = E.random_cover(rng, n)
        reports.append(E.check_shearer(j, cover, tol))
        reports.append(E.check_conditional_shearer(j, cover, E.random_order(rng, n), tol))
    return [_report_outcome(r) for r in reports]


def _coin_instances(params, rng):
    for n in range(params["n_min"], params["n_max"] + 1):
        yield {"n": n}


def _coin_eval(inp, params):
    n = inp["n"]
    f = int(C.min_distinguishing(n))
    # f >= n / log2(n+1)  <=>  (n+1)^f >= 2^n
    simple = Outcome("f(n)>=n/log2(n+1)",
                     "BelowStrict" if (n + 1) ** f > 2 ** n else "Equal" if (n + 1) ** f == 2 ** n
                     else "AboveStrict", f, f"{n}/log2({n + 1})")
    out = [simple]
    if n >= 2:
        c = params["C"]
        refined = n / (log2(n) / 2 + c)
        out.append(Outcome(f"f(n)>=n/(log2(n)/2+{c})",
                           "BelowStrict" if f > refined else "AboveStrict" if f < refined else "Equal",
                           f, refined))
    return out


def _triangle_instances(params, rng):
    for n in params["n"]:
        yield {"n": n}


def _triangle_eval(inp, params):
    n = inp["n"]
    size = int(C.max_triangle_intersecting(n))
    return [_cmp("max<=2^(C(n,2)-2)", size, B.triangle_family_bound(n)),
            _ident("max==2^(C(n,2)-3)", size, B.triangle_family_sharp(n))]


def _random_graph_with_edges(rng, ell, n_max):
    n = rng.randint(2, n_max)
    while n * (n - 1) // 2 < ell:
        n += 1
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, rng.sample(pairs, ell))


def _embed_instances(params, rng):
    for _ in range(params["random_graphs"]):
        ell = rng.randint(1, params["ell_max"])
        g = _random_graph_with_edges(rng, ell, params["n_max"])
        yield {"kind": "bound", "graph": g.to_text()}
    for name in params["H"]:
        h = _named(name)
        for ell in range(h.num_edges, params["hstar_ell_max"] + 1):
            yield {"kind": "hstar", "H": name, "ell": ell}


def _embed_eval(inp, params):
    if inp["kind"] == "bound":
        g = _g(inp["graph"])
        out = []
        for name in params["H"]:
            h = _named(name)
            o = _cmp(f"embed({name})<=(2l)^rho*", C.embed_count(h, g), B.embed_upper_bound(h, g.num_edges))
            o.tight_key = f"{name}|{_form(g)}" if o.verdict == "Equal" else ""
            out.append(o)
        return out
    h = _named(inp["H"])
    ell = inp["ell"]
    blow = B.hstar_build(h, ell)
    edges = blow.graph.num_edges
    return [_cmp(f"|E(H*)|<=l [{inp['H']}, l={ell}]", edges, ell),
            _cmp(f"prod sizes<=embed(H,H*) [{inp['H']}, l={ell}]", int(blow.guaranteed),
                 int(C.embed_count(h, blow.graph)))]


def _duality_instances(params, rng):
    for n in range(2, params["n_max"] + 1):
        for g in enumerate_graphs(n):
            if g.is_connected() or not params["connected_only"]:
                if all(g.adj[v] for v in range(g.n)):
                    yield {"graph": g.to_text()}


def _integral_alpha(g):
    poly = C.independence_polynomial(g)
    return max(t for t, c in enumerate(poly) if c)


def _integral_rho(g):
    # minimum edge cover = n - maximum matching (no isolated vertices)
    poly = C.matching_polynomial(g)
    return g.n - max(t for t, c in enumerate(poly) if c)


def _duality_eval(inp, params):
    g = _g(inp["graph"])
    rho = B.fractional_cover(g)
    alpha = B.fractional_independence(g)
    key = _form(g)
    return [
        _ident("rho*==alpha*", rho.objective, alpha.objective),
        _ident("cover feasible", rho.check(g), True),
        _ident("independence feasible", alpha.check(g), True),
        Outcome("rho*<=rho", _frac_verdict(rho.objective, _integral_rho(g)),
                rho.objective, _integral_rho(g), key),
        Outcome("alpha<=alpha*", _frac_verdict(_integral_alpha(g), alpha.objective),
                _integral_alpha(g), alpha.objective),
    ]


def _frac_verdict(a, b):
    return "BelowStrict" if a < b else "Equal" if a == b else "AboveStrict"


def _binom_instances(params, rng):
    for n in range(params["n_min"], params["n_max"] + 1):
        for a in params["alpha"]:
            yield {"n": n, "alpha": a}


def _binom_eval(inp, params):
    r = B.binom_sum_bound(inp["n"], Fraction(inp["alpha"]))
    return [Outcome(f"sum<=2^(H(a)n) a={inp['alpha']}", str(r.verdict), r.count, r.bound)]


def _chernoff_instances(params, rng):
    for n in params["n"]:
        for c in params["c"]:
            yield {"n": n, "c": c}


def _chernoff_eval(inp, params):
    r = E.chernoff_tail_check(inp["n"], Fraction(inp["c"]))
    verdict = "AboveStrict" if not r.holds else "Equal" if r.lhs == r.rhs else "BelowStrict"
    return [Outcome("tail<=2^(1-c^2/2)", verdict, r.detail.split("tail=")[1], r.rhs)]


def _binentropy_instances(params, rng):
    for m in range(1, params["m_max"] + 1, params["stride"]):
        yield {"m": m}


def _binentropy_eval(inp, params):
    m = inp["m"]
    h = E.binomial_half_entropy(m)
    ref = log2(m) / 2 + params["C"]
    return [Outcome("H(Bin(m,1/2))<=log2(m)/2+C", _frac_verdict(h, ref), h, ref)]


# ---------------------------------------------------------------------------
# conjecture checks

def _matching_family(params):
    fam = params["family"]
    degrees = [params["d"]] if isinstance(params["d"], int) else list(params["d"])
    for h in range(1, params["half_n_max"] + 1):
        for d in degrees:
            if d < 1 or d > h or h % d:
                continue
            if fam == "bipartite":
                gs = enumerate_bipartite_regular(h, d)
            else:
                gs = enumerate_regular(2 * h, d) if 2 * h <= params["general_n_max"] else ()
            for g in gs:
                yield h, d, g


def _conj71_instances(params, rng):
    for h, d, g in _matching_family(params):
        yield {"graph": g.to_text(), "half_n": h, "d": d}


def _conj71_eval(inp, params):
    g = _g(inp["graph"])
    ref = int(C.matchings_total(k_nd(inp["half_n"], inp["d"])))
    o = _cmp("M(G)<=M(K(n,d))", C.matchings_total(g), ref)
    o.tight_key = _form(g) if o.verdict == "Equal" else ""
    return [o]


def _umc_eval(inp, params):
    g = _g(inp["graph"])
    n, d = inp["half_n"], inp["d"]
    out = []
    for t in range(0, min(params["t_max"], n) + 1):
        ref = int(C.matchings_kdd_formula(n, d, t))
        o = _cmp(f"M_{t}(G)<=M_{t}(K(n,d))", C.matchings_of_size(g, t), ref)
        if o.verdict == "Equal" and t >= 3:
            o.tight_key = f"t={t}|{_form(g)}"
        else:
            o.tight_key = ""
        out.append(o)
    return out


def _regular_conj_instances(params, rng):
    for g in _regular_family(params):
        yield {"graph": g.to_text()}


def _conjkq_eval(inp, params):
    g = _g(inp["graph"])
    d = g.degree(0)
    out = []
    for q in params["q"]:
        o = _cmp(f"c_{q}(G)<=c_{q}(K_dd)^(n/2d)", C.colorings(g, q), B.colorings_bip_bound(g.n, d, q))
        o.tight_key = _form(g) if o.verdict == "Equal" else ""
        out.append(o)
    return out


def _conjwr_eval(inp, params):
    from .graphs import h_wr
    g = _g(inp["graph"])
    d = g.degree(0)
    o = _cmp("hom(G,H_WR)<=hom(K_(d+1),H_WR)^(n/(d+1))", C.hom_count(g, h_wr()),
             B.regular_hom_reference(g.n, d, h_wr(), extremal="clique"))
    o.tight_key = _form(g) if o.verdict == "Equal" else ""
    return [o]


def _conjit_instances(params, rng):
    for g in _regular_family(params):
        d = g.degree(0)
        if d >= 1 and g.n % (2 * d) == 0:
            yield {"graph": g.to_text()}


def _conjit_eval(inp, params):
    g = _g(inp["graph"])
    d = g.degree(0)
    ref = k_nd(g.n // 2, d)      # n/2d copies of K_{d,d}, n vertices
    out = []
    for t in range(0, min(params["t_max"], g.n) + 1):
        o = _cmp(f"i_{t}(G)<=i_{t}(K(n,2d))", C.independent_sets_of_size(g, t),
                 int(C.independent_sets_of_size(ref, t)))
        o.tight_key = f"t={t}|{_form(g)}" if o.verdict == "Equal" and t >= 2 else ""
        out.append(o)
    return out


_SMALL_H = ["kn:2", "kn:3", "cycle:4", "cycle:5", "kn:4", "path:4"]

register_check("bregman", THEOREM, "perm(A) <= prod (d_i!)^(1/d_i) over 0-1 matrices",
               {"n": 4, "random": 0, "random_max_n": 7}, _bregman_instances, _bregman_eval)
register_check("kahn-lovasz", THEOREM, "perfect matchings <= prod (d_i!)^(1/2d_i) over regular graphs",
               {"n_max": 8, "d": "all"}, _kl_instances, _kl_eval)
register_check("thm6.1", THEOREM, "c_q(G) <= c_q(K_dd)^(n/2d) over bipartite d-regular G",
               {"half_n_max": 6, "half_n_min": 1, "d": 3, "q": [2, 3, 4]}, _bip_instances, _thm61_eval)
register_check("thm6.2", THEOREM, "hom(G,H) <= hom(K_dd,H)^(n/2d) over bipartite d-regular G",
               {"half_n_max": 6, "half_n_min": 1, "d": 3, "H": ["h_ind", "h_wr"]},
               _bip_instances, _thm62_eval)
register_check("thm6.3", THEOREM, "hom(G,H) <= prod hom(K_p(v)p(v),H)^(1/d) for d-regular G and an order",
               {"n_max": 8, "d": 3, "H": ["kn:3", "kn:4", "h_ind", "h_wr"], "random_orders": 10},
               _thm63_instances, _thm63_eval)
register_check("alon-friedland", THEOREM, "cycle-cover identities: even sum = pm^2, all sum = perm(Adj)",
               {"n_max": 8}, _af_instances, _af_eval)
register_check("loomis-whitney", THEOREM, "|B| <= prod |B_j|^(1/(n-1)) over random lattice bodies",
               {"count": 1000, "dim_min": 2, "dim_max": 4, "max_cells": 200}, _lw_instances, _lw_eval)
register_check("entropy-fuzz", THEOREM, "entropy laws on random rational joint distributions",
               {"count": 10000, "max_arity": 4, "max_range": 4, "tol": E.DEFAULT_TOL},
               _fuzz_instances, _entropy_eval)
register_check("shearer-fuzz", THEOREM, "Shearer and conditional Shearer on random joints, covers, orders",
               {"count": 2000, "max_arity": 4, "max_range": 4, "covers": 3, "tol": E.DEFAULT_TOL},
               _fuzz_instances, _shearer_eval)
register_check("coin", THEOREM, "exhaustive f(n) against the counting lower bounds",
               {"n_min": 1, "n_max": 5, "C": B.DEFAULT_BINOMIAL_C}, _coin_instances, _coin_eval)
register_check("triangle-family", THEOREM, "largest triangle-intersecting family on [n]",
               {"n": [3, 4]}, _triangle_instances, _triangle_eval)
register_check("embed-bound", THEOREM, "embed(H,G) <= (2l)^rho*(H) and the H* blow-up guarantee",
               {"H": _SMALL_H, "random_graphs": 100, "ell_max": 30, "n_max": 10, "hstar_ell_max": 48},
               _embed_instances, _embed_eval)
register_check("duality", THEOREM, "rho* = alpha* exactly; alpha <= alpha*, rho* <= rho",
               {"n_max": 6, "connected_only": True}, _duality_instances, _duality_eval)
register_check("binom-sum", THEOREM, "sum_{i <= a n} C(n,i) <= 2^(H(a) n)",
               {"n_min": 1, "n_max": 60, "alpha": [f"{k}/20" for k in range(1, 11)]},
               _binom_instances, _binom_eval)
register_check("chernoff", THEOREM, "exact binomial tail <= 2^(1-c^2/2)",
               {"n": [16, 64, 256, 1024], "c": [0, 1, 2, 3, 4]}, _chernoff_instances, _chernoff_eval)
register_check("binomial-entropy", THEOREM, "H(Binomial(m,1/2)) <= log2(m)/2 + C for the pinned C",
               {"m_max": 5000, "stride": 1, "C": E.DEFAULT_BINOMIAL_C},
               _binentropy_instances, _binentropy_eval)
register_check("conj7.1", CONJECTURE, "all matchings: M(G) <= M(K(n,d))",
               {"half_n_max": 6, "d": [1, 2, 3], "family": "bipartite", "general_n_max": 10},
               _conj71_instances, _conj71_eval)
register_check("umc", CONJECTURE, "upper matching: M_t(G) <= M_t(K(n,d)) for t <= t_max",
               {"half_n_max": 6, "d": [1, 2, 3], "t_max": 4, "family": "bipartite", "general_n_max": 10},
               _conj71_instances, _umc_eval)
register_check("conj-kq", CONJECTURE, "c_q(G) <= c_q(K_dd)^(n/2d) for all d-regular G",
               {"n_max": 8, "d": 3, "q": [3]}, _regular_conj_instances, _conjkq_eval)
register_check("conj-wr", CONJECTURE, "hom(G,H_WR) <= hom(K_(d+1),H_WR)^(n/(d+1)) for d-regular G",
               {"n_max": 8, "d": 3}, _regular_conj_instances, _conjwr_eval)
register_check("conj-it", CONJECTURE, "i_t(G) <= i_t(K(n,2d)) for d-regular G with 2d | n",
               {"n_max": 8, "d": 3, "t_max": 4}, _conjit_instances, _conjit_eval)


# ---------------------------------------------------------------------------
# running

def _evaluate_named(args):
    name, params, inp = args
    return get_check(name).evaluate(inp, params)


def default_jobs():
    return os.cpu_count() or 1


def run_check(spec, jobs=1, verbose=False):
    """Run one check; deterministic given the CheckSpec, including its seed."""
    check = get_check(spec.name)
    params = spec.resolved()
    rng = random.Random(spec.seed)
    start = time.perf_counter()
    inputs = list(check.instances(params, rng))
    if jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(inputs) // (jobs * 8))
            results = list(pool.map(_evaluate_named, [(spec.name, params, i) for i in inputs],
                                    chunksize=chunk))
    else:
        results = [check.evaluate(i, params) for i in inputs]
    verdicts, tight, violations, rows = {}, set(), [], []
    total = 0
    for inp, outcomes in zip(inputs, results):
        for o in outcomes:
            total += 1
            verdicts[o.verdict] = verdicts.get(o.verdict, 0) + 1
            if o.tight_key:
                tight.add(o.tight_key)
            if not o.ok:
                violations.append(_witness(spec.name, params, inp, o))
            if verbose:
                rows.append({"check": spec.name, "input": json.dumps(inp, sort_keys=True),
                             "label": o.label, "verdict": o.verdict,
                             "count": json.dumps(_count_json(o.count)),
                             "bound": json.dumps(_bound_json(o.bound), sort_keys=True)})
    elapsed = int((time.perf_counter() - start) * 1000)
    return Report(spec.name, check.kind, params, total, not violations, verdicts,
                  sorted(tight), violations, spec.seed, elapsed, rows=rows)


def _witness(name, params, inp, outcome):
    return {"check": name, "params": params, "input": inp, "label": outcome.label,
            "verdict": outcome.verdict, "count": _count_json(outcome.count),
            "bound": _bound_json(outcome.bound)}


def reverify(witness):
    """Re-evaluate a stored witness; True when the same count, bound and verdict come back."""
    check = get_check(witness["check"])
    for o in check.evaluate(witness["input"], witness["params"]):
        if o.label == witness["label"]:
            return (_count_json(o.count) == witness["count"]
                    and _bound_json(o.bound) == witness["bound"]
                    and o.verdict == witness["verdict"])
    return False


def sweep(specs, jobs=1, verbose=False):
    return [run_check(s, jobs=jobs, verbose=verbose) for s in specs]


def exit_code(reports):
    return 0 if all(r.passed for r in reports) else 1


def emit(reports, fmt="json", path=None, header=None):
    """Serialise reports as JSON (one document) or CSV (one row per outcome)."""
    if fmt == "json":
        doc = {"header": header or default_header(), "reports": [r.to_json() for r in reports]}
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        cols = ["check", "input", "label", "verdict", "count", "bound"]
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            if r.rows:
                writer.writerows(r.rows)
            else:
                writer.writerow({"check": r.check, "input": "", "label": "summary",
                                 "verdict": "PASS" if r.passed else "FAIL",
                                 "count": r.instances, "bound": ""})
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}; use json or csv")
    if path is not None:
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror}") from exc
    return text


def default_header():
    return {"tol": E.DEFAULT_TOL, "caps": all_caps(), "binomial_C": E.DEFAULT_BINOMIAL_C}
