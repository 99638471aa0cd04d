"""Command-line front end.

Every number printed is the decimal rendering of the library result.
Exit status: 0 when every check passes, 1 when any check reports a
violation, 2 for usage, configuration or file errors.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds as B
from . import count as C
from . import dist_entropy as E
from . import verify as V
from .caps import DEFAULTS, CapExceeded, all_caps
from .graphs import (
    GraphFormatError,
    LatticeBody,
    enumerate_bipartite_regular,
    enumerate_graphs,
    enumerate_regular,
    parse_named,
    read_graph,
    read_matrix,
    write_graph,
)

COUNT_QUANTITIES = [
    "permanent", "perfect-matchings", "matchings", "matchings-total", "matchings-kdd",
    "independent-sets", "independent-sets-total", "colorings", "hom", "hom-kdd",
    "colorings-kdd", "embed", "cycle-covers", "min-distinguishing", "triangle-family",
]

BOUND_NAMES = [
    "bregman", "kahn-lovasz", "thm6.1", "thm6.2", "thm6.3", "embed", "hstar",
    "fractional", "loomis-whitney", "binom-sum", "coin",
]


class UsageError(ValueError):
    pass


def _graph_arg(value):
    """Named shorthand (``k_dd:3``) or a path to a graph file."""
    if value is None:
        raise UsageError("this command needs --graph")
    if os.path.exists(value):
        return read_graph(value)
    return parse_named(value)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"this command needs --{name.replace('_', '-')}")
    return value


def _matrix_arg(args):
    if args.matrix is not None:
        return read_matrix(args.matrix)
    if args.graph is not None:
        return _graph_arg(args.graph).bipartite_half()
    raise UsageError("this command needs --matrix (or a bipartite --graph)")


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _header_lines(args):
    caps = " ".join(f"{k}={v}" for k, v in sorted(all_caps().items()))
    return [f"# tol={args.tol} seed={args.seed} jobs={args.jobs}", f"# caps {caps}"]


def _output(args, text):
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {args.out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def _emit_record(args, record):
    """Print a flat record in the requested format."""
    if args.format == "json":
        doc = {"header": V.default_header() | {"seed": args.seed}, **record}
        _output(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        keys = list(record)
        _output(args, ",".join(keys) + "\n" + ",".join(str(record[k]) for k in keys) + "\n")
    else:
        _output(args, "".join(f"{k} {v}\n" for k, v in record.items()))


# ---------------------------------------------------------------------------
# verbs

def cmd_entropy(args):
    j = E.read_joint(args.file)
    if args.check:
        import random
        reports = E.check_all(j, random.Random(args.seed), args.tol)
        ok = all(r.holds for r in reports)
        if args.format == "json":
            doc = {"header": V.default_header() | {"tol": args.tol},
                   "pass": ok, "checks": [r.to_json() for r in reports]}
            _output(args, json.dumps(doc, indent=2) + "\n")
        else:
            lines = _header_lines(args)
            lines += [f"{r.name} {'ok' if r.holds else 'VIOLATED'} deviation={r.deviation:.3e}" for r in reports]
            _output(args, "\n".join(lines) + "\n")
        return 0 if ok else 1
    coords = _ints(args.coords) if args.coords else list(range(j.arity))
    given = _ints(args.given) if args.given else []
    value = E.conditional_entropy(j, coords, given)
    _emit_record(args, {"entropy": repr(value)})
    return 0


def _count_value(args):
    q = args.quantity
    if q == "permanent":
        return C.permanent(_matrix_arg(args))
    if q == "matchings-kdd":
        return C.matchings_kdd_formula(_need(args, "n"), _need(args, "d"), _need(args, "t"))
    if q == "colorings-kdd":
        return C.colorings_kdd_closed(_need(args, "q"), _need(args, "d"))
    if q == "hom-kdd":
        return C.hom_kdd_closed(_graph_arg(args.h), _need(args, "d"))
    if q == "min-distinguishing":
        return C.min_distinguishing(_need(args, "n"))
    if q == "triangle-family":
        return C.max_triangle_intersecting(_need(args, "n"))
    g = _graph_arg(args.graph)
    if q == "perfect-matchings":
        return C.perfect_matchings(g)
    if q == "matchings":
        return C.matchings_of_size(g, _need(args, "t"))
    if q == "matchings-total":
        return C.matchings_total(g)
    if q == "independent-sets":
        return C.independent_sets_of_size(g, _need(args, "t"))
    if q == "independent-sets-total":
        return C.independent_sets_total(g)
    if q == "colorings":
        return C.colorings(g, _need(args, "q"))
    if q == "hom":
        return C.hom_count(g, _graph_arg(args.h))
    if q == "embed":
        return C.embed_count(_graph_arg(args.h), g)
    if q == "cycle-covers":
        even, every = C.cycle_cover_sums(g)
        return {"even": int(even), "all": int(every)}
    raise UsageError(f"unknown quantity {q!r}")


def cmd_count(args):
    value = _count_value(args)
    if isinstance(value, dict):
        _emit_record(args, {k: str(v) for k, v in value.items()})
    elif args.format == "text":
        _output(args, f"{int(value)}\n")
    else:
        _emit_record(args, {"quantity": args.quantity, "value": str(int(value))})
    return 0


def _bound_record(count, bound):
    cmp = B.compare_exact(count, bound)
    return {"bound": str(bound.merged()), "bound_json": json.dumps(bound.to_json()),
            "bound_value": repr(bound.value()), "count": str(int(count)),
            "verdict": str(cmp.verdict)}


def cmd_bound(args):
    name = args.name
    if name == "bregman":
        a = _matrix_arg(args)
        rec = _bound_record(C.permanent(a), B.bregman_bound(a.row_sums()))
    elif name == "kahn-lovasz":
        g = _graph_arg(args.graph)
        rec = _bound_record(C.perfect_matchings(g), B.kahn_lovasz_bound(g.degrees()))
    elif name == "thm6.1":
        g = _graph_arg(args.graph)
        q = _need(args, "q")
        rec = _bound_record(C.colorings(g, q), B.colorings_bip_bound(g.n, g.degree(0), q))
    elif name == "thm6.2":
        g, h = _graph_arg(args.graph), _graph_arg(args.h)
        rec = _bound_record(C.hom_count(g, h), B.homs_bip_bound(g.n, g.degree(0), h))
    elif name == "thm6.3":
        g, h = _graph_arg(args.graph), _graph_arg(args.h)
        order = _ints(args.order) if args.order else list(range(g.n))
        rec = _bound_record(C.hom_count(g, h), B.nonbip_order_bound(g, order, h))
    elif name == "embed":
        g, h = _graph_arg(args.graph), _graph_arg(args.h)
        rec = _bound_record(C.embed_count(h, g), B.embed_upper_bound(h, g.num_edges))
    elif name == "hstar":
        h = _graph_arg(args.h)
        blow = B.hstar_build(h, _need(args, "ell"))
        rec = {"sizes": ",".join(map(str, blow.sizes)), "edges": blow.graph.num_edges,
               "guaranteed": int(blow.guaranteed), "embed": int(C.embed_count(h, blow.graph))}
        if args.format == "text" and args.out is None:
            rec["graph"] = "\n" + write_graph(blow.graph).rstrip()
    elif name == "fractional":
        g = _graph_arg(args.graph)
        rho, alpha = B.fractional_cover(g), B.fractional_independence(g)
        rec = {"rho_star": str(rho.objective), "alpha_star": str(alpha.objective),
               "equal": rho.objective == alpha.objective}
    elif name == "loomis-whitney":
        if args.box:
            body = LatticeBody.box(_ints(args.box))
        elif args.cells:
            body = LatticeBody.of(tuple(c) for c in json.loads(args.cells))
        else:
            raise UsageError("loomis-whitney needs --box or --cells")
        vol, bound = B.loomis_whitney_bound(body)
        rec = _bound_record(vol, bound)
    elif name == "binom-sum":
        alpha = Fraction(_need(args, "alpha"))
        r = B.binom_sum_bound(_need(args, "n"), alpha)
        rec = {"sum": str(r.count), "log2_bound": repr(float(r.bound)), "verdict": str(r.verdict)}
    elif name == "coin":
        n = _need(args, "n")
        simple, refined = B.coin_lower_bounds(n)
        rec = {"simple": repr(simple), "refined": repr(refined), "C": B.DEFAULT_BINOMIAL_C}
    else:
        raise UsageError(f"unknown bound {name!r}")
    _emit_record(args, rec)
    return 0 if rec.get("verdict") != "AboveStrict" else 1


def _check_params(check, args):
    params = {}
    defaults = check.defaults
    shortcuts = {
        "half_n": "half_n_max", "n_max": "n_max", "t_max": "t_max", "count": "count",
    }
    for flag, key in shortcuts.items():
        value = getattr(args, flag, None)
        if value is not None:
            if key not in defaults:
                raise UsageError(f"check {check.name!r} does not take --{flag.replace('_', '-')}")
            params[key] = value
    if args.d is not None:
        if "d" not in defaults:
            raise UsageError(f"check {check.name!r} does not take --d")
        params["d"] = args.d
    if args.q is not None:
        if "q" not in defaults:
            raise UsageError(f"check {check.name!r} does not take --q")
        params["q"] = [args.q]
    if "tol" in defaults:
        params["tol"] = args.tol
    for item in args.param or []:
        key, sep, raw = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def _emit_reports(args, reports):
    fmt = args.format
    if fmt in ("json", "csv"):
        header = V.default_header() | {"tol": args.tol, "seed": args.seed, "jobs": args.jobs}
        text = V.emit(reports, fmt, header=header)
    else:
        lines = _header_lines(args)
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            hist = " ".join(f"{k}={v}" for k, v in sorted(r.verdicts.items()))
            lines.append(f"{r.check} [{r.kind}] {status} instances={r.instances} {hist} "
                         f"tight={len(r.tight)} violations={len(r.violations)} {r.elapsed_ms}ms")
            for w in r.violations[:10]:
                lines.append(f"  witness {w['label']}: count={w['count']} bound={json.dumps(w['bound'])}")
        text = "\n".join(lines) + "\n"
    _output(args, text)
    return V.exit_code(reports)


def cmd_check(args):
    check = V.get_check(args.name)
    spec = V.CheckSpec(args.name, _check_params(check, args), args.seed)
    spec.resolved()
    report = V.run_check(spec, jobs=args.jobs, verbose=args.verbose)
    return _emit_reports(args, [report])


def cmd_sweep(args):
    specs = []
    if args.spec:
        with open(args.spec) as fh:
            doc = json.load(fh)
        if not isinstance(doc, list):
            raise UsageError("sweep spec file must hold a JSON list of {name, params, seed}")
        for item in doc:
            specs.append(V.CheckSpec(item["name"], item.get("params", {}), item.get("seed", args.seed)))
    names = list(args.names)
    if args.all:
        names = V.check_names()
    for name in names:
        V.get_check(name)
        specs.append(V.CheckSpec(name, {}, args.seed))
    for s in specs:
        s.resolved()
    reports = V.sweep(specs, jobs=args.jobs, verbose=args.verbose)
    return _emit_reports(args, reports)


def cmd_enumerate(args):
    kind = args.kind
    if kind == "regular":
        gs = enumerate_regular(_need(args, "n"), _need(args, "d"))
    elif kind == "bipartite":
        gs = enumerate_bipartite_regular(_need(args, "half_n"), _need(args, "d"))
    else:
        gs = enumerate_graphs(_need(args, "n"))
    gs = list(gs)
    if args.count_only:
        _output(args, f"{len(gs)}\n")
    else:
        _output(args, "\n".join(write_graph(g) for g in gs))
    return 0


# ---------------------------------------------------------------------------
# parser

GLOBAL_DEFAULTS = {"out": None, "format": "text", "seed": 0, "tol": E.DEFAULT_TOL, "cap": None}


def _global_options(top):
    """Global flags. They are accepted before or after the verb; only the
    top-level parser sets defaults, so a flag given before the verb is not
    reset by the verb's parser."""
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    kw = {} if top else {"default": argparse.SUPPRESS}
    g.add_argument("--out", help="write output to this file instead of stdout", **kw)
    g.add_argument("--format", choices=["text", "json", "csv"], **kw)
    g.add_argument("--seed", type=int, help="seed for random families and orders", **kw)
    g.add_argument("--tol", type=float, help="tolerance for entropy checks", **kw)
    g.add_argument("--jobs", type=int, help="worker processes (1 = serial)", **kw)
    g.add_argument("--cap", action="append", metavar="NAME=VALUE",
                   help=f"override a size cap; names: {', '.join(sorted(DEFAULTS))}", **kw)
    return common


def build_parser():
    common = _global_options(top=False)
    parser = argparse.ArgumentParser(
        prog="entcount",
        description="Exact counters, entropy-derived bounds and verification sweeps.",
        epilog="Graphs are given as files or shorthand: k_dd:3, k_ab:2,3, knd:12,3, kn:5, "
               "h_ind, h_wr, cycle:6, path:4, empty:3, prism:3. Caps may also be set with "
               "ENTCOUNT_CAP_<NAME> environment variables.",
        parents=[_global_options(top=True)])
    parser.set_defaults(**GLOBAL_DEFAULTS, jobs=V.default_jobs())
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("entropy", parents=[common], help="entropy of a joint distribution file")
    p.add_argument("file")
    p.add_argument("--coords", help="comma-separated coordinates (default: all)")
    p.add_argument("--given", help="comma-separated conditioning coordinates")
    p.add_argument("--check", action="store_true", help="run every property check")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("count", parents=[common], help="exact counts")
    p.add_argument("quantity", choices=COUNT_QUANTITIES)
    _graph_options(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bound", parents=[common], help="evaluate a bound and compare with the count")
    p.add_argument("name", choices=BOUND_NAMES)
    _graph_options(p)
    p.add_argument("--order", help="vertex order for thm6.3, comma-separated")
    p.add_argument("--ell", type=int, help="edge budget for hstar")
    p.add_argument("--alpha", help="alpha for binom-sum, e.g. 3/10")
    p.add_argument("--box", help="box side lengths for loomis-whitney, e.g. 2,3,4")
    p.add_argument("--cells", help="JSON list of cells for loomis-whitney")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("check", parents=[common], help="run one theorem or conjecture check")
    p.add_argument("name", help="one of: " + ", ".join(V.check_names()))
    p.add_argument("--half-n", dest="half_n", type=int, help="largest class size")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--t-max", dest="t_max", type=int)
    p.add_argument("--count", type=int, help="number of random instances")
    p.add_argument("--param", action="append", metavar="KEY=JSON", help="set any check parameter")
    p.add_argument("--verbose", action="store_true", help="one CSV row per instance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", parents=[common], help="run several checks")
    p.add_argument("names", nargs="*", help="check names (defaults for each)")
    p.add_argument("--spec", help="JSON file: list of {name, params, seed}")
    p.add_argument("--all", action="store_true", help="every registered check")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("enumerate", parents=[common], help="list graphs up to isomorphism")
    p.add_argument("kind", choices=["regular", "bipartite", "graphs"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--half-n", dest="half_n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def _graph_options(p):
    p.add_argument("--graph", help="graph file or shorthand")
    p.add_argument("--matrix", help="0-1 matrix file")
    p.add_argument("--h", help="target graph H (file or shorthand)")
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)


def _apply_caps(items):
    """Set cap overrides in the environment; returns the previous values."""
    saved = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULTS:
            raise UsageError(f"--cap expects NAME=VALUE with NAME in {sorted(DEFAULTS)}")
        try:
            int(float(value))
        except ValueError:
            raise UsageError(f"--cap {name}: {value!r} is not a number") from None
        key = "ENTCOUNT_CAP_" + name.upper()
        saved.setdefault(key, os.environ.get(key))
        os.environ[key] = value
    return saved


def _restore_env(saved):
    for key, value in saved.items():
        if value is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = value


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    saved = {}
    try:
        saved = _apply_caps(args.cap)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except (UsageError, V.UnknownCheck, CapExceeded, GraphFormatError, ValueError, OSError, KeyError) as exc:
        print(f"entcount: error: {exc}", file=sys.stderr)
        return 2
    finally:
        _restore_env(saved)


if __name__ == "__main__":
    sys.exit(main())
