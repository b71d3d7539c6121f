"""Algebraic tori as (Galois group, character lattice) and their rationality verdicts.

A torus is never more than its finite splitting group together with the
character lattice; the field itself plays no role in any of the criteria.

Two independent routes decide p-retract rationality:

* ``class-order``: p does not divide the class order of a flasque resolution
  of ``F``, where ``F`` is the flasque quotient of a flasque resolution of the
  character lattice;
* ``sylow``: ``F`` restricted to a p-Sylow subgroup is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, Subgroup, catalog, sylow, theorem13_group
from .intmat import (IntMatrix, coords_in_echelon, echelon_basis, prime_factors,
                     sparse_column_kernel)
from .lattices import (GLattice, LatticeError, direct_sum, dual, induced_action,
                       norm_one_lattice, permutation_lattice, regular_lattice,
                       restrict, sign_lattice, trivial_lattice, validate, zero_lattice)
from .resolutions import (coflasque_cover, flasque_resolution, is_invertible,
                          lattice_bad_primes)


@dataclass(frozen=True, eq=False)
class Torus:
    group: FiniteGroup
    character_lattice: GLattice
    label: str = ""

    def __post_init__(self):
        if self.character_lattice.group is not self.group:
            raise LatticeError("character lattice is over a different group")

    def check(self) -> None:
        """Full homomorphism check of the character lattice (quadratic in |G|)."""
        report = validate(self.character_lattice)
        if not report.ok:
            raise LatticeError(report.message)

    @property
    def dimension(self) -> int:
        return self.character_lattice.rank

    def __repr__(self) -> str:
        return f"<Torus {self.label or '?'} of dimension {self.dimension} split by {self.group!r}>"


@dataclass(frozen=True)
class Verdict:
    """Bad primes of a torus (or classifying stack); empty iff retract rational."""

    bad_primes: frozenset[int]
    retract_rational: bool
    route: str
    witness: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.retract_rational != (not self.bad_primes):
            raise ValueError("retract rationality must coincide with having no bad primes")

    def is_p_retract_rational(self, p: int) -> bool:
        return p not in self.bad_primes

    def to_dict(self) -> dict:
        return {"bad_primes": sorted(self.bad_primes),
                "retract_rational": self.retract_rational,
                "route": self.route,
                "witness": self.witness}

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(frozenset(data["bad_primes"]), bool(data["retract_rational"]),
                   data["route"], dict(data.get("witness", {})))


def _verdict(bad, route: str, **witness) -> Verdict:
    bad = frozenset(bad)
    return Verdict(bad, not bad, route, witness)


def flasque_class(T: Torus) -> GLattice:
    """A representative of the flasque class of the character lattice."""
    return flasque_resolution(T.character_lattice).F


def torus_bad_primes(T: Torus) -> Verdict:
    res = flasque_resolution(T.character_lattice)
    F = res.F
    inner = flasque_resolution(F)
    return _verdict(inner.bad_primes, "class-order",
                    flasque_rank=F.rank, permutation_rank=res.P.rank,
                    class_order=inner.class_order)


def is_p_retract_rational(T: Torus, p: int) -> bool:
    return p not in torus_bad_primes(T).bad_primes


def is_retract_rational(T: Torus) -> bool:
    return torus_bad_primes(T).retract_rational


def verdict_via_sylow(T: Torus, p: int, restrict_first: bool = False) -> bool:
    """Retract rationality of the torus over the fixed field of a p-Sylow subgroup.

    By default the flasque quotient F over G is restricted to ``G_p``.  With
    ``restrict_first`` the character lattice is restricted and then resolved
    over ``G_p``; restriction carries flasque resolutions to flasque
    resolutions, so both lattices lie in the same flasque class over ``G_p``,
    and the second is far smaller when ``G_p`` is a small part of G.
    """
    H = sylow(T.group, p)
    if restrict_first:
        F = flasque_resolution(restrict(T.character_lattice, H)).F
    else:
        F = restrict(flasque_class(T), H)
    return is_invertible(F)


def sylow_verdict(T: Torus, restrict_first: bool = False) -> Verdict:
    primes = prime_factors(T.group.order)
    bad = [p for p in primes if not verdict_via_sylow(T, p, restrict_first)]
    return _verdict(bad, "sylow", primes_checked=primes, restrict_first=restrict_first)


# ---------------------------------------------------------------------------
# families


def norm_one_torus(G: FiniteGroup) -> Torus:
    return Torus(G, norm_one_lattice(G), label=f"norm_one:{G.name}" if G.name else "norm_one")


def theorem13_torus(primes) -> Torus:
    """Norm-one torus of the product of ``(Z/p)^2`` over the given primes."""
    primes = sorted(set(primes))
    G = theorem13_group(primes)
    return Torus(G, norm_one_lattice(G), label="theorem13:{" + ",".join(map(str, primes)) + "}")


def split_torus(G: FiniteGroup, dimension: int = 1) -> Torus:
    name = f":{G.name}" if G.name else ""
    return Torus(G, trivial_lattice(G, dimension), label=f"split{name}" + (f"^{dimension}" if dimension != 1 else ""))


def quasi_split_torus(G: FiniteGroup, H: Subgroup) -> Torus:
    """Weil restriction of G_m: character lattice ``Z[G/H]``."""
    name = f"{G.name}/" if G.name else ""
    return Torus(G, permutation_lattice(G, H), label=f"quasi_split:{name}H{H.order}")


def circle_torus(G: FiniteGroup | None = None) -> Torus:
    """One-dimensional torus with every generator acting by -1 (the circle for Z/2)."""
    from .groups import cyclic_group
    G = cyclic_group(2) if G is None else G
    return Torus(G, sign_lattice(G), label="circle")


def dual_torus(T: Torus) -> Torus:
    label = T.label[:-1] if T.label.endswith("'") else T.label + "'"
    return Torus(T.group, dual(T.character_lattice), label=label)


def product_torus(*tori: Torus) -> Torus:
    G = tori[0].group
    return Torus(G, direct_sum(*[T.character_lattice for T in tori]),
                 label=" x ".join(T.label or "?" for T in tori))


def classifying_stack_verdict(T: Torus) -> Verdict:
    """Bad primes of BT from a coflasque cover and a flasque resolution.

    ``0 -> Q -> R -> T^ -> 0`` with R permutation and Q coflasque, then the
    flasque quotient ``F`` of Q; BT is p-retract rational iff F is p-invertible.
    """
    cover = coflasque_cover(T.character_lattice)
    Q = cover.kernel
    F = flasque_resolution(Q).F
    inner = flasque_resolution(F)
    return _verdict(inner.bad_primes, "class-order", pipeline="classifying-stack",
                    coflasque_rank=Q.rank, flasque_rank=F.rank, class_order=inner.class_order)


def catalog_tori(max_order: int | None = 12, include_stretch: bool = False) -> list[Torus]:
    """Tori over the built-in groups: norm-one, its dual, split, quasi-split, circle-type."""
    out = []
    for G in catalog(max_order, include_stretch):
        T = norm_one_torus(G)
        out += [T, dual_torus(T), split_torus(G)]
        seen = set()
        for p in prime_factors(G.order):
            H = sylow(G, p)
            if H.order < G.order and H not in seen:
                seen.add(H)
                out.append(quasi_split_torus(G, H))
        try:
            S = Torus(G, sign_lattice(G), label=f"sign:{G.name}")
        except LatticeError:
            continue
        out.append(S)
    return out


# ---------------------------------------------------------------------------
# groups of multiplicative type


class PresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MultiplicativeTypePresentation:
    """Character module ``ambient / rowspan(relations)`` of a group of multiplicative type."""

    group: FiniteGroup
    ambient: GLattice
    relations: IntMatrix

    def __post_init__(self):
        if self.ambient.group is not self.group:
            raise PresentationError("ambient lattice is over a different group")
        if self.relations.nrows and self.relations.ncols != self.ambient.rank:
            raise PresentationError("relation vectors have the wrong length")

    def check(self) -> None:
        R = self.relations
        if R.nrows == 0:
            return
        basis, piv = echelon_basis(R.rows(), self.ambient.rank)
        for g in self.group.generator_indices:
            for r in R.rows():
                image = self.ambient.action[g].apply(r)
                if coords_in_echelon(basis, piv, image) is None:
                    raise PresentationError(
                        f"relation {list(r)} is not stable under generator {g}")


def multiplicative_type_torus(pres: MultiplicativeTypePresentation) -> Torus:
    """The torus T in ``1 -> G -> S -> T -> 1`` with S quasi-split.

    On characters: ``0 -> T^ -> Z[G]^n -> G^ -> 0`` where the free module has one
    regular block per ambient basis vector, ``(j, g) -> g e_j``.
    """
    pres.check()
    G = pres.group
    N = pres.ambient
    n = N.rank
    order = G.order
    if n == 0:
        return Torus(G, zero_lattice(G), label="multiplicative_type")
    free = direct_sum(*[regular_lattice(G) for _ in range(n)])
    nx = n * order
    R = pres.relations
    ny = R.nrows
    # unknowns (x, y): phi(x) - R^T y = 0
    cons = []
    for i in range(n):
        row: dict[int, int] = {}
        for j in range(n):
            for g in range(order):
                v = N.action[g][i, j]
                if v:
                    row[j * order + g] = v
        for k in range(ny):
            v = R[k, i]
            if v:
                row[nx + k] = -v
        if row:
            cons.append(row)
    kb, _ = sparse_column_kernel(cons, nx + ny)
    proj = [{k: v for k, v in r.items() if k < nx} for r in kb]
    basis, _ = echelon_basis(proj, nx)
    B = IntMatrix([[r.get(k, 0) for k in range(nx)] for r in basis], nx)
    lattice = induced_action(free, B, name="T^") if basis else zero_lattice(G)
    report = validate(lattice)
    assert report.ok, report.message
    return Torus(G, lattice, label="multiplicative_type")


def multiplicative_type_verdict(pres: MultiplicativeTypePresentation) -> Verdict:
    """Bad primes of BG for the group of multiplicative type."""
    T = multiplicative_type_torus(pres)
    v = torus_bad_primes(T)
    return Verdict(v.bad_primes, v.retract_rational, v.route,
                   dict(v.witness, pipeline="multiplicative-type", torus_dimension=T.dimension))
