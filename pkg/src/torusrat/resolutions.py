"""Coflasque covers, flasque resolutions and p-invertibility of lattices.

A lattice M is p-invertible exactly when p does not divide the order of the
class of a flasque resolution ``0 -> M -> P -> F -> 0`` in ``Ext^1(F, M)``:
if p is prime to that order the localized sequence splits, and conversely
``Ext^1(F, M)`` has no p-torsion when M is p-invertible and F is flasque.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cohomology import (ClassOrder, ExactTriple, class_order, class_order_by_sections,
                         is_coflasque, is_flasque)
from .groups import Subgroup, subgroup_representatives
from .intmat import (IntMatrix, coords_in_echelon, column_kernel, echelon_basis,
                     prime_factors)
from .lattices import (GLattice, PermutationStructure, direct_sum, dual, fixed_sublattice,
                       induced_action, permutation_lattice, zero_lattice)


class ConsistencyError(AssertionError):
    """Two independent computations disagree."""


@dataclass(frozen=True, eq=False)
class CoflasqueCover:
    """``0 -> C -> P -> M -> 0`` with P permutation and C coflasque."""

    triple: ExactTriple
    blocks: tuple[tuple[Subgroup, tuple[int, ...]], ...]

    @property
    def kernel(self) -> GLattice:
        return self.triple.A

    @property
    def P(self) -> GLattice:
        return self.triple.B

    @property
    def M(self) -> GLattice:
        return self.triple.C


@dataclass(frozen=True, eq=False)
class FlasqueResolution:
    """``0 -> M -> P -> F -> 0`` with P permutation and F flasque."""

    triple: ExactTriple
    witness: ClassOrder

    @property
    def M(self) -> GLattice:
        return self.triple.A

    @property
    def P(self) -> GLattice:
        return self.triple.B

    @property
    def F(self) -> GLattice:
        return self.triple.C

    @property
    def class_order(self) -> int:
        return self.witness.order

    @property
    def bad_primes(self) -> frozenset[int]:
        return frozenset(prime_factors(self.class_order))


class _CoverImages:
    """Images ``g v`` of the block generators, and H-orbit sums of them."""

    def __init__(self, M: GLattice):
        self.M = M
        self.blocks: list[tuple[Subgroup, tuple[int, ...]]] = []
        self.coset_images: list[list[tuple[int, ...]]] = []
        self._orbits: dict[tuple[int, int], list[list[int]]] = {}

    def add(self, K: Subgroup, v: Sequence[int]) -> None:
        self.blocks.append((K, tuple(v)))
        self.coset_images.append([self.M.action[c[0]].apply(v) for c in K.left_cosets()])

    def _coset_orbits(self, H: Subgroup, K: Subgroup) -> list[list[int]]:
        key = (id(H), id(K))
        if key not in self._orbits:
            t = self.M.group.table
            cosets = K.left_cosets()
            where = {g: k for k, c in enumerate(cosets) for g in c}
            seen: set[int] = set()
            orbits = []
            for k, c in enumerate(cosets):
                if k not in seen:
                    orbit = sorted({where[t[h][c[0]]] for h in H.elements})
                    seen.update(orbit)
                    orbits.append(orbit)
            self._orbits[key] = orbits
        return self._orbits[key]

    def orbit_sums(self, H: Subgroup, b: int) -> list[list[int]]:
        """Images in M of the H-fixed vectors of block b."""
        K, _ = self.blocks[b]
        imgs = self.coset_images[b]
        out = []
        for orbit in self._coset_orbits(H, K):
            acc = [0] * self.M.rank
            for o in orbit:
                for i, x in enumerate(imgs[o]):
                    if x:
                        acc[i] += x
            out.append(acc)
        return out

    def fixed_image(self, H: Subgroup) -> tuple[list, list]:
        vecs = []
        for b in range(len(self.blocks)):
            vecs.extend(self.orbit_sums(H, b))
        return echelon_basis(vecs, self.M.rank)


def coflasque_cover(M: GLattice, extra: Sequence[Subgroup] = ()) -> CoflasqueCover:
    """Permutation cover ``P -> M`` that is surjective on H-fixed points for every H.

    Subgroup classes are visited largest first; for each Hermite basis vector
    v of ``M^H`` a block ``Z[G/H]`` with ``eH -> v`` is added only when v is
    not already hit by ``P^H``.  ``extra`` appends further blocks ``Z[G/H]``
    (mapped onto the first vector of ``M^H``, or to zero), which yields a
    different cover of the same lattice.
    """
    G = M.group
    cover = _CoverImages(M)
    reps = subgroup_representatives(G)
    for H in reps:
        W = fixed_sublattice(M, H)
        if not W.nrows:
            continue
        basis, piv = cover.fixed_image(H)
        for w in W.rows():
            if coords_in_echelon(basis, piv, w) is None:
                cover.add(H, w)
                basis, piv = echelon_basis(
                    list(basis) + cover.orbit_sums(H, len(cover.blocks) - 1), M.rank)
    for H in extra:
        W = fixed_sublattice(M, H)
        cover.add(H, tuple(W.row(0)) if W.nrows else (0,) * M.rank)
    # surjectivity on fixed points, re-verified for every class
    for H in reps:
        basis, piv = cover.fixed_image(H)
        for w in fixed_sublattice(M, H).rows():
            if coords_in_echelon(basis, piv, w) is None:
                raise ConsistencyError(f"cover is not surjective on fixed points of {H!r}")

    blocks = cover.blocks
    if blocks:
        merged: list[tuple[Subgroup, int]] = []
        for H, _ in blocks:
            if merged and merged[-1][0] == H:
                merged[-1] = (H, merged[-1][1] + 1)
            else:
                merged.append((H, 1))
        P = direct_sum(*[permutation_lattice(G, H) for H, _ in blocks])
        P = GLattice(G, P.rank, P.action, PermutationStructure(tuple(merged)), name="P")
    else:
        P = zero_lattice(G)
    cols = [v for imgs in cover.coset_images for v in imgs]
    project = IntMatrix([list(r) for r in zip(*cols)], P.rank) if cols and M.rank \
        else IntMatrix.zeros(M.rank, P.rank)
    if P.rank:
        K = column_kernel(project) if M.rank else IntMatrix.identity(P.rank)
    else:
        K = IntMatrix([], 0)
    C = induced_action(P, K, name="Q") if K.nrows else zero_lattice(G)
    inject = K.T if K.nrows else IntMatrix.zeros(P.rank, 0)
    triple = ExactTriple(C, P, M, inject, project)
    return CoflasqueCover(triple, tuple(blocks))


def flasque_resolution_uncached(M: GLattice, extra: Sequence[Subgroup] = ()) -> FlasqueResolution:
    """Dual of a coflasque cover of the dual lattice."""
    cover = coflasque_cover(dual(M), extra)
    t = cover.triple
    P = t.B
    F = dual(t.A)
    F = GLattice(F.group, F.rank, F.action, name="F")
    triple = ExactTriple(M, P, F, t.project.T, t.inject.T)
    return FlasqueResolution(triple, class_order(triple))


@lru_cache(maxsize=512)
def flasque_resolution(M: GLattice) -> FlasqueResolution:
    return flasque_resolution_uncached(M)


def check_flasque_resolution(res: FlasqueResolution) -> None:
    """Assert the defining properties: exact, permutation middle, flasque quotient."""
    res.triple.check()
    if res.P.permutation is None:
        raise ConsistencyError("middle term is not a permutation lattice")
    if not is_flasque(res.F):
        raise ConsistencyError("quotient is not flasque")


def check_coflasque_cover(cover: CoflasqueCover) -> None:
    cover.triple.check()
    if cover.P.permutation is None:
        raise ConsistencyError("middle term is not a permutation lattice")
    if not is_coflasque(cover.kernel):
        raise ConsistencyError("kernel is not coflasque")


def lattice_bad_primes(M: GLattice) -> frozenset[int]:
    """Primes p for which M is not p-invertible."""
    return flasque_resolution(M).bad_primes


def is_p_invertible(M: GLattice, p: int) -> bool:
    return p not in lattice_bad_primes(M)


def is_invertible(M: GLattice, cross_check: bool = False) -> bool:
    """M is a direct summand of a permutation lattice.

    With ``cross_check`` the splitting is also decided from the section
    system, independently of the retraction computation.
    """
    res = flasque_resolution(M)
    answer = res.class_order == 1
    if cross_check:
        other = class_order_by_sections(res.triple).order
        if (other == 1) != answer or other != res.class_order:
            raise ConsistencyError(
                f"class order {res.class_order} by retractions, {other} by sections")
    return answer


def zero_resolution(G) -> FlasqueResolution:
    Z = zero_lattice(G)
    t = ExactTriple(Z, Z, Z, IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
    return FlasqueResolution(t, class_order(t))
