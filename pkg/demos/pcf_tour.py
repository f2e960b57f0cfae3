"""Walk through the PCF parameters for p = 3, 5, 7.

For each parameter: its orbit type, the level where that type first shows,
the critical orbit at that level, and the shape of its orbit tree.

    python demos/pcf_tour.py [p ...]
"""

import sys

from padic_orbits import classify, critical_orbit_tree, enumerate_pcf, orbit_mod, shape_check


def tour(p: int) -> None:
    params = enumerate_pcf(p)
    print(f"p = {p}: {len(params)} PCF parameters")
    for x in params:
        k = x.resolved_at
        orbit = orbit_mod(x.c, k)
        tree = critical_orbit_tree(x.c, k)
        rep = shape_check(tree, critical_orbit_tree(x.c, 1), classify(x.c, hensel_certified=True))
        where = f"branches at level {rep.branching_levels[0]}" if rep.branching_levels else "no extra branching"
        print(f"  {str(x.orbit_type):<6} mod {p}^{k}: {orbit.arrow_chain()}")
        print(f"  {'':<6} Gauss degree {rep.gauss_degree}, {where}")
    print()


if __name__ == "__main__":
    for p in map(int, sys.argv[1:] or ["3", "5", "7"]):
        tour(p)
