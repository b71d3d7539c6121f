"""Tori with a prescribed set of bad primes.

theorem13_torus(S) is built over a product of groups (Z/p)^2, one per p in S,
so that it fails p-retract rationality exactly at the primes of S.  Each such
torus is p-retract rational for every p outside S, yet not retract rational.

Pass --both to include S = {2, 3} (|G| = 36, about 20 seconds).
"""

import sys
import time

from torusrat.tori import theorem13_torus, torus_bad_primes, verdict_via_sylow

sets = [set(), {2}, {3}]
if "--both" in sys.argv:
    sets.append({2, 3})

for S in sets:
    T = theorem13_torus(S)
    start = time.perf_counter()
    v = torus_bad_primes(T)
    took = time.perf_counter() - start
    print(f"S = {sorted(S)}: |G| = {T.group.order}, dim T = {T.dimension}")
    print(f"  bad primes {sorted(v.bad_primes)}, retract rational: {v.retract_rational}"
          f"  ({took:.1f}s)")
    print(f"  flasque rank {v.witness['flasque_rank']}, class order {v.witness['class_order']}")
    for p in (2, 3, 5):
        print(f"  p = {p}: class-order route {p not in v.bad_primes}, "
              f"Sylow route {verdict_via_sylow(T, p, restrict_first=True)}")
