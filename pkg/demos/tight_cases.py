"""Where the counting bounds are tight on small cubic graphs.

Walks through every cubic graph on at most 10 vertices and prints, for
perfect matchings, proper 3-colourings and independent sets, the count,
the bound and the verdict of the exact comparator.

    python demos/tight_cases.py
"""

from entcount.bounds import (
    compare_exact,
    homs_bip_bound,
    kahn_lovasz_bound,
    nonbip_order_bound,
)
from entcount.count import colorings, independent_sets_total, perfect_matchings
from entcount.graphs import complete, enumerate_regular, h_ind


def describe(g):
    parts = []
    for comp in g.components():
        parts.append(bin(comp).count("1"))
    shape = "+".join(map(str, sorted(parts)))
    bip = "bipartite" if g.two_colouring() is not None else "non-bipartite"
    return f"n={g.n:<2} components {shape:<8} {bip}"


def main():
    k3 = complete(3)
    print(f"{'graph':<40} {'pm':>4} {'verdict':<12} {'c3':>6} {'verdict':<12} {'i(G)':>6} {'verdict':<12}")
    for n in (4, 6, 8, 10):
        for g in enumerate_regular(n, 3):
            pm = perfect_matchings(g)
            pm_v = compare_exact(pm, kahn_lovasz_bound(g.degrees())).verdict
            c3 = colorings(g, 3)
            c3_v = compare_exact(c3, nonbip_order_bound(g, list(range(n)), k3)).verdict
            ind = independent_sets_total(g)
            ind_v = compare_exact(ind, homs_bip_bound(n, 3, h_ind())).verdict
            print(f"{describe(g):<40} {pm:>4} {str(pm_v):<12} {c3:>6} {str(c3_v):<12} {ind:>6} {str(ind_v):<12}")
    print()
    print("Equal appears only for K_{3,3}, and no count exceeds its bound.")


if __name__ == "__main__":
    main()
