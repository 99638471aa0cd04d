"""Entropy inequalities on a small distribution, then the coin-weighing bound.

Part one builds a joint distribution on three bits (two fair bits and
their XOR), prints its entropies and runs every property check on it.
Part two computes the least distinguishing family for small n and sets
it against the entropy lower bound n / log2(n+1).

    python demos/entropy_and_coins.py
"""

from ast import literal_eval
from fractions import Fraction
from math import log2

from entcount.bounds import coin_lower_bounds
from entcount.count import min_distinguishing
from entcount.dist_entropy import (
    CoverFamily,
    JointDistribution,
    check_all,
    check_shearer,
    conditional_entropy,
    entropy,
    format_joint,
)


def xor_triple():
    q = Fraction(1, 4)
    return JointDistribution((2, 2, 2), {(a, b, a ^ b): q for a in (0, 1) for b in (0, 1)})


def part_one():
    j = xor_triple()
    print("joint distribution in the text format:")
    print(format_joint(j))
    print(f"H(X1,X2,X3)    = {entropy(j):.4f}")
    print(f"H(X3 | X1)     = {conditional_entropy(j, 0b100, 0b001):.4f}")
    print(f"H(X3 | X1,X2)  = {conditional_entropy(j, 0b100, 0b011):.4f}")
    # pairs cover each coordinate twice, so H(X) <= half the sum of pair entropies
    pairs = check_shearer(j, CoverFamily.all_subsets_of_size(3, 2))
    print(f"Shearer with all pairs: {pairs.lhs:.4f} <= {pairs.rhs:.4f}  (tight: {abs(pairs.lhs - pairs.rhs) < 1e-9})")
    print()
    reports = check_all(j)
    for r in reports:
        print(f"  {'ok ' if r.holds else 'BAD'} {r.name:<28} deviation {r.deviation:+.2e}")
    print()


def part_two():
    print(" n  f(n)  n/log2(n+1)  family")
    for n in range(1, 6):
        res = min_distinguishing(n)
        simple = coin_lower_bounds(n)[0] if n >= 2 else n / log2(n + 1)
        family = [sorted(i + 1 for i in range(n) if m >> i & 1) for m in literal_eval(res.key)]
        print(f"{n:>2}  {int(res):>4}  {simple:>11.3f}  {family}")


if __name__ == "__main__":
    part_one()
    part_two()
