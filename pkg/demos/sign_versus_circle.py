"""A lattice that is not 2-invertible, whose torus is still rational.

The circle x^2 + y^2 = 1 is the torus over R split by C, with character
lattice Z carrying the sign action of Z/2.  That lattice is not invertible
(its flasque resolution 0 -> sign -> Z[Z/2] -> Z -> 0 has class order 2), but
retract rationality of the torus depends only on the flasque class, and the
flasque quotient here is the trivial lattice Z, which is permutation.
"""

from torusrat.cohomology import section_is_valid
from torusrat.resolutions import flasque_resolution, lattice_bad_primes
from torusrat.tori import circle_torus, flasque_class, torus_bad_primes

T = circle_torus()
M = T.character_lattice
res = flasque_resolution(M)
print("character lattice:", M.rank, "x", M.rank, "generator action", M.action[1].tolist())
print("flasque resolution ranks: M", res.M.rank, "-> P", res.P.rank, "-> F", res.F.rank)
print("class order of the resolution:", res.class_order)
s = res.witness.section
print("section of twice the identity:", s.tolist(), section_is_valid(res.triple, s, 2))
print("lattice bad primes of the sign lattice:", sorted(lattice_bad_primes(M)))
print("lattice bad primes of its flasque class:", sorted(lattice_bad_primes(flasque_class(T))))
print("torus bad primes:", sorted(torus_bad_primes(T).bad_primes))
