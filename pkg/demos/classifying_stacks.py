"""Classifying stacks of tori and of groups of multiplicative type.

For a torus T, BT is p-retract rational iff the dual torus is.  The stack
pipeline (coflasque cover, then flasque resolution of the kernel) is checked
against the dual torus directly.  A group of multiplicative type G is
embedded in a quasi-split torus S; then BG is p-retract rational iff the
quotient torus S/G is.
"""

from torusrat.groups import catalog_group, cyclic_group
from torusrat.intmat import IntMatrix
from torusrat.lattices import rank_one_lattice, trivial_lattice
from torusrat.tori import (MultiplicativeTypePresentation, catalog_tori,
                           classifying_stack_verdict, dual_torus,
                           multiplicative_type_verdict, norm_one_torus, torus_bad_primes)

print("BT versus the dual torus, groups of order <= 8")
for T in catalog_tori(8):
    stack = classifying_stack_verdict(T).bad_primes
    dual = torus_bad_primes(dual_torus(T)).bad_primes
    if stack or dual:
        print(f"  {T.label:20} BT {sorted(stack)}   T' {sorted(dual)}")

print()
print("groups of multiplicative type")
C1 = cyclic_group(1)
mu5 = MultiplicativeTypePresentation(C1, trivial_lattice(C1), IntMatrix([[5]]))
print("  mu_5:", sorted(multiplicative_type_verdict(mu5).bad_primes))
Gm = MultiplicativeTypePresentation(C1, trivial_lattice(C1), IntMatrix([], 1))
print("  G_m:", sorted(multiplicative_type_verdict(Gm).bad_primes))
C2 = cyclic_group(2)
twisted = MultiplicativeTypePresentation(C2, rank_one_lattice(C2, [-1]), IntMatrix([[3]]))
v = multiplicative_type_verdict(twisted)
print("  Z/3 twisted by inversion:", sorted(v.bad_primes), "torus dim", v.witness["torus_dimension"])
T = norm_one_torus(catalog_group("klein4"))
print("  B of the Klein norm-one torus (T itself has bad prime 2):", sorted(classifying_stack_verdict(T).bad_primes))
