"""Parameters c = -2 + l*3^k + ... in Z_3 and their cycle lengths.

The orbit type stays (2,1) up to level k and then the cycle triples at every
further level.  Alongside, the distance from f_c^2(0) to the fixed point
near 2 shrinks like 3^-(k-1).

    python demos/near_minus_two.py
"""

from padic_orbits import verify_c2

for k in range(2, 6):
    for l in (1, 2):
        rep = verify_c2(k, l, seed=k * 10 + l, i_max=4)
        lengths = [t.n for t in rep.profile.types]
        side = "in Z_3" if rep.fixed_point is not None else "outside Z_3"
        print(f"k={k} l={l}  cycle lengths {lengths}  "
              f"v(f^2(0) - x) = {rep.distance_val} (fixed point {side})")
