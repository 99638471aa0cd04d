"""Size caps for the exact kernels.

Every cap can be overridden through an environment variable named
``ENTCOUNT_CAP_<NAME>`` (upper case), e.g. ``ENTCOUNT_CAP_PERMANENT=26``.
"""

import os

DEFAULTS = {
    "graph_vertices": 64,
    "regular_n": 10,
    "bipartite_half_n": 7,
    "canonical_exhaustive_n": 10,
    "permanent": 24,
    "perfect_matchings": 28,
    "cycle_covers": 14,
    "distinguishing_n": 22,
    "min_distinguishing_n": 6,
    "set_family_n": 30,
    "lattice_coordinate": 10**6,
    "root_lcm": 10**6,
}


class CapExceeded(ValueError):
    """An input is larger than the configured size cap."""


def cap(name):
    value = os.environ.get("ENTCOUNT_CAP_" + name.upper())
    if value is not None:
        try:
            return int(value)
        except ValueError:
            return int(float(value))
    return DEFAULTS[name]


def check_cap(name, size):
    limit = cap(name)
    if size > limit:
        raise CapExceeded(f"{name}: size {size} exceeds cap {limit}")


def all_caps():
    return {name: cap(name) for name in DEFAULTS}
