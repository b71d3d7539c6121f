"""Norm-one tori over the built-in groups.

The torus R^1_{K/k} G_m with Galois group G has character lattice J_G.  It is
p-retract rational exactly when the p-Sylow subgroup of G is cyclic, so the
table below should show a bad prime wherever the Sylow column says "no".

Run:  python3 demos/norm_one_census.py
"""

import time

from torusrat.groups import catalog, is_cyclic, sylow
from torusrat.intmat import prime_factors
from torusrat.tori import norm_one_torus, sylow_verdict, torus_bad_primes


def fmt(primes):
    return "{" + ", ".join(map(str, sorted(primes))) + "}"


print(f"{'group':10} {'|G|':>4}  {'non-cyclic Sylow':17} {'bad primes':11} {'sylow route':11} secs")
for G in catalog(12):
    start = time.perf_counter()
    T = norm_one_torus(G)
    v = torus_bad_primes(T)
    s = sylow_verdict(T)
    expected = {p for p in prime_factors(G.order) if not is_cyclic(sylow(G, p))}
    mark = "" if v.bad_primes == s.bad_primes == expected else "  <-- mismatch"
    print(f"{G.name:10} {G.order:>4}  {fmt(expected):17} {fmt(v.bad_primes):11} "
          f"{fmt(s.bad_primes):11} {time.perf_counter() - start:.2f}{mark}")
