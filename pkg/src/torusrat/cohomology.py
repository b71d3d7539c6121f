"""Tate cohomology in degrees -1, 0, 1, Ext^1, and extension-class orders.

Flasque and coflasque are decided by vanishing of Tate cohomology in degree
-1 (resp. 1) on one subgroup per conjugacy class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Callable, Sequence

from .groups import Subgroup, subgroup_representatives, sylow
from .intmat import (IntMatrix, column_kernel, cokernel_structure, coords_in_echelon,
                     dense_rows, echelon_basis, least_multiple_with_witness,
                     LocalEchelon, local_least_power, p_valuation, prime_factors, row_coordinates, solve, sparse_column_kernel)
from .lattices import GLattice, fixed_sublattice, hom_lattice, LatticeError


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factors ``d1 | d2 | ...`` (all > 1) plus a free rank."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        f = self.invariant_factors
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors {f} do not form a divisor chain")

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    @property
    def is_finite(self) -> bool:
        return not self.free_rank

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    def has_p_torsion(self, p: int) -> bool:
        return any(d % p == 0 for d in self.invariant_factors)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def _from_cokernel(Y: IntMatrix) -> FiniteAbelianGroup:
    c = cokernel_structure(Y)
    return FiniteAbelianGroup(c.torsion, c.free_rank)


def _check_subgroup(M: GLattice, H: Subgroup) -> None:
    if H.parent is not M.group:
        raise LatticeError("subgroup of a different group")


def norm_matrix(M: GLattice, H: Subgroup) -> IntMatrix:
    n = M.rank
    acc = [[0] * n for _ in range(n)]
    for h in H.elements:
        for i, row in enumerate(M.action[h].rows()):
            r = acc[i]
            for j, x in enumerate(row):
                if x:
                    r[j] += x
    return IntMatrix(acc, n)


def tate_h0(M: GLattice, H: Subgroup) -> FiniteAbelianGroup:
    """``M^H / N_H M``."""
    _check_subgroup(M, H)
    F = fixed_sublattice(M, H)
    if F.nrows == 0:
        return FiniteAbelianGroup()
    N = norm_matrix(M, H)
    Y = row_coordinates(F, N.T)
    assert Y is not None, "norm image must be fixed"
    return _from_cokernel(Y.T)


def tate_hminus1(M: GLattice, H: Subgroup) -> FiniteAbelianGroup:
    """``ker N_H / I_H M``."""
    _check_subgroup(M, H)
    if M.rank == 0:
        return FiniteAbelianGroup()
    K = column_kernel(norm_matrix(M, H))
    if K.nrows == 0:
        return FiniteAbelianGroup()
    eye = IntMatrix.identity(M.rank)
    gens = [(M.action[h] - eye).T for h in H.elements if h]
    if not gens:
        return FiniteAbelianGroup(free_rank=K.nrows)
    Y = row_coordinates(K, IntMatrix.vstack(gens))
    assert Y is not None, "augmentation image must lie in the norm kernel"
    return _from_cokernel(Y.T)


def _sparse_action(M: GLattice, g: int) -> list[dict[int, int]]:
    return [{j: x for j, x in enumerate(r) if x} for r in M.action[g].rows()]


def cocycle_lattice(M: GLattice, H: Subgroup):
    """Basis of inhomogeneous 1-cocycles ``H -> M``.

    A cocycle is coordinatised by its values on ``H.generators``; its value on
    every element follows a spanning tree of the Cayley graph, and the cocycle
    identity ``f(s x) = f(s) + s f(x)`` is imposed for every generator s and
    every element x (non-tree edges give the constraints).

    Returns ``(gens, basis_rows, pivots)``; a cocycle vector is the
    concatenation of ``f(s)`` over generators s.
    """
    G = M.group
    gens = list(H.generators)
    n = M.rank
    k = len(gens)
    t = G.table
    acts = {s: _sparse_action(M, s) for s in gens}
    # value[x] = list of n sparse rows over the k*n unknowns
    value: dict[int, list[dict[int, int]]] = {0: [{} for _ in range(n)]}
    order = [0]
    constraints: list[dict[int, int]] = []

    def step(si: int, x: int) -> list[dict[int, int]]:
        s = gens[si]
        fx = value[x]
        out = []
        for i, arow in enumerate(acts[s]):
            r: dict[int, int] = {si * n + i: 1}
            for l, a in arow.items():
                for var, c in fx[l].items():
                    v = r.get(var, 0) + a * c
                    if v:
                        r[var] = v
                    else:
                        r.pop(var, None)
            out.append(r)
        return out

    pos = 0
    while pos < len(order):
        x = order[pos]
        pos += 1
        for si, s in enumerate(gens):
            y = t[s][x]
            rhs = step(si, x)
            if y not in value:
                value[y] = rhs
                order.append(y)
            else:
                for lhs_row, rhs_row in zip(value[y], rhs):
                    diff = dict(lhs_row)
                    for var, c in rhs_row.items():
                        v = diff.get(var, 0) - c
                        if v:
                            diff[var] = v
                        else:
                            diff.pop(var, None)
                    if diff:
                        constraints.append(diff)
    basis, pivots = sparse_column_kernel(constraints, k * n)
    return gens, basis, pivots


def tate_h1(M: GLattice, H: Subgroup) -> FiniteAbelianGroup:
    """``Z^1(H, M) / B^1(H, M)``."""
    _check_subgroup(M, H)
    n = M.rank
    if n == 0 or H.order == 1:
        return FiniteAbelianGroup()
    gens, basis, pivots = cocycle_lattice(M, H)
    if not basis:
        return FiniteAbelianGroup()
    coords = []
    for l in range(n):
        vec: dict[int, int] = {}
        for si, s in enumerate(gens):
            col = M.action[s].col(l)
            for i, x in enumerate(col):
                v = x - (1 if i == l else 0)
                if v:
                    vec[si * n + i] = v
        c = coords_in_echelon(basis, pivots, vec)
        assert c is not None, "coboundaries are cocycles"
        coords.append(c)
    Y = IntMatrix(coords, len(basis))
    return _from_cokernel(Y.T)


def tate(M: GLattice, H: Subgroup | None = None, i: int = 0) -> FiniteAbelianGroup:
    H = M.group.whole if H is None else H
    if i == 0:
        return tate_h0(M, H)
    if i == -1:
        return tate_hminus1(M, H)
    if i == 1:
        return tate_h1(M, H)
    raise ValueError("only degrees -1, 0, 1 are supported")


def h1_all_pairs(M: GLattice, H: Subgroup) -> FiniteAbelianGroup:
    """H^1 from unknowns on every element and the cocycle identity on every pair.

    Quadratic in |H|; kept as an independent check of :func:`tate_h1`.
    """
    G = M.group
    n = M.rank
    elems = list(H.elements)
    pos = {h: k for k, h in enumerate(elems)}
    t = G.table
    constraints = []
    for g in elems:
        A = M.action[g].rows()
        for h in elems:
            gh = pos[t[g][h]]
            for i in range(n):
                row: dict[int, int] = {}
                row[gh * n + i] = row.get(gh * n + i, 0) + 1
                row[pos[g] * n + i] = row.get(pos[g] * n + i, 0) - 1
                for l, a in enumerate(A[i]):
                    if a:
                        key = pos[h] * n + l
                        row[key] = row.get(key, 0) - a
                row = {key: v for key, v in row.items() if v}
                if row:
                    constraints.append(row)
    basis, pivots = sparse_column_kernel(constraints, len(elems) * n)
    if not basis:
        return FiniteAbelianGroup()
    coords = []
    for l in range(n):
        vec = {}
        for g in elems:
            for i, x in enumerate(M.action[g].col(l)):
                v = x - (1 if i == l else 0)
                if v:
                    vec[pos[g] * n + i] = v
        coords.append(coords_in_echelon(basis, pivots, vec))
    return _from_cokernel(IntMatrix(coords, len(basis)).T)


def is_flasque(M: GLattice) -> bool:
    return all(tate_hminus1(M, H).is_trivial for H in subgroup_representatives(M.group))


def is_coflasque(M: GLattice) -> bool:
    return all(tate_h1(M, H).is_trivial for H in subgroup_representatives(M.group))


def ext1(F: GLattice, M: GLattice) -> FiniteAbelianGroup:
    """``Ext^1_G(F, M) = H^1(G, Hom(F, M))``."""
    if F.group is not M.group:
        raise LatticeError("Ext between lattices over different groups")
    return tate_h1(hom_lattice(F, M), M.group.whole)


# ---------------------------------------------------------------------------
# short exact sequences


class ExactnessError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExactTriple:
    """``0 -> A --inject--> B --project--> C -> 0`` over one group."""

    A: GLattice
    B: GLattice
    C: GLattice
    inject: IntMatrix
    project: IntMatrix

    def __post_init__(self):
        G = self.A.group
        if self.B.group is not G or self.C.group is not G:
            raise ExactnessError("lattices over different groups")
        if self.inject.shape != (self.B.rank, self.A.rank):
            raise ExactnessError(f"inject has shape {self.inject.shape}")
        if self.project.shape != (self.C.rank, self.B.rank):
            raise ExactnessError(f"project has shape {self.project.shape}")

    @property
    def group(self):
        return self.A.group

    def check(self) -> None:
        """Raise ExactnessError unless the sequence is exact and equivariant."""
        A, B, C = self.A, self.B, self.C
        i, p = self.inject, self.project
        if B.rank != A.rank + C.rank:
            raise ExactnessError("ranks are not additive")
        if A.rank and i.rank() != A.rank:
            raise ExactnessError("inject is not injective")
        if C.rank and B.rank and not (p @ i).is_zero():
            raise ExactnessError("project o inject != 0")
        if C.rank:
            X, _ = solve(p, IntMatrix.identity(C.rank))
            if X is None:
                raise ExactnessError("project is not surjective")
        if A.rank:
            # kernel of project must be exactly the image of inject (saturation)
            ker = column_kernel(p) if C.rank else IntMatrix.identity(B.rank)
            img = echelon_basis(i.T.rows(), B.rank)[0]
            if dense_rows(img, B.rank) != ker:
                raise ExactnessError("image of inject is not the kernel of project")
        for g in range(self.group.order):
            if B.action[g] @ i != i @ A.action[g]:
                raise ExactnessError(f"inject is not equivariant at element {g}")
            if C.action[g] @ p != p @ B.action[g]:
                raise ExactnessError(f"project is not equivariant at element {g}")

    def is_valid(self) -> bool:
        try:
            self.check()
        except ExactnessError:
            return False
        return True


@dataclass(frozen=True)
class ClassOrder:
    """Least d with an equivariant ``s: C -> B``, ``project o s = d id_C``, plus s.

    The section may be supplied as a thunk; it is then built on first access.
    """

    order: int
    route: str
    _section: IntMatrix | Callable[[], IntMatrix] = field(repr=False, compare=False)

    @cached_property
    def section(self) -> IntMatrix:
        s = self._section
        return s() if callable(s) else s


def _section_from_retraction(t: ExactTriple, d: int, r: IntMatrix) -> IntMatrix:
    # d id_B - inject r vanishes on the image of inject, so it factors as s o project
    e = IntMatrix.identity(t.B.rank).scale(d) - t.inject @ r
    sigma, _ = solve(t.project, IntMatrix.identity(t.C.rank))
    return e @ sigma


def module_generators(M: GLattice, p: int | None = None) -> list[int]:
    """Standard basis indices whose G-orbits span ``M`` tensor Q.

    With a prime p, the orbits span ``M / pM`` instead, hence (Nakayama)
    generate M after localizing at p.
    """
    if p is None:
        chosen: list[int] = []
        span: list[dict[int, int]] = []
        rank = 0
        for i in range(M.rank):
            orbit = [{k: x for k, x in enumerate(M.action[g].col(i)) if x}
                     for g in range(M.group.order)]
            basis, _ = echelon_basis(span + orbit, M.rank)
            if len(basis) > rank:
                chosen.append(i)
                span, rank = basis, len(basis)
                if rank == M.rank:
                    break
        return chosen
    # over a p-group the augmentation ideal of F_p[P] is nilpotent, so a basis
    # of M / (pM + I_P M) generates M / pM over F_p[P], hence over F_p[G]
    P = sylow(M.group, p)
    E = LocalEchelon(p, 1)
    for g in P.generators:
        act = M.action[g]
        for i in range(M.rank):
            col = list(act.col(i))
            col[i] -= 1
            E.add({k: x for k, x in enumerate(col) if x})
    chosen = []
    for i in range(M.rank):
        if len(E.rows) == M.rank:
            break
        before = len(E.rows)
        E.add({i: 1})
        if len(E.rows) > before:
            chosen.append(i)
    return chosen


def _retraction_system(t: ExactTriple, gens: list[int]):
    """Images of the G-maps ``Z[G/H] -> A`` on the lifted generators.

    One sparse vector per (permutation block, fixed-point basis vector), in
    coordinates ``m * rank(A) + i``; the target is the identity on the same
    generators.
    """
    A, B = t.A, t.B
    a = A.rank
    lifted = [t.inject.col(i) for i in gens]
    touched = {b for u in lifted for b, x in enumerate(u) if x}
    vectors: list[dict[int, int]] = []
    blocks: list[tuple[int, list[tuple[int, ...]], tuple[int, ...]]] = []
    fixed: dict[Subgroup, IntMatrix] = {}
    for H, offset, cosets in B.permutation.copies():
        if H not in fixed:
            fixed[H] = fixed_sublattice(A, H)
        for w in fixed[H].rows():
            vec: dict[int, int] = {}
            for ci, c in enumerate(cosets):
                b = offset + ci
                if b not in touched:
                    continue
                img = A.action[c[0]].apply(w)
                for m, u in enumerate(lifted):
                    x = u[b]
                    if not x:
                        continue
                    for i, y in enumerate(img):
                        if y:
                            key = m * a + i
                            v = vec.get(key, 0) + x * y
                            if v:
                                vec[key] = v
                            else:
                                vec.pop(key, None)
            vectors.append(vec)
            blocks.append((offset, cosets, w))
    target = {m * a + i: 1 for m, i in enumerate(gens)}
    return vectors, blocks, target


def _exact_retraction(t: ExactTriple) -> tuple[int, IntMatrix]:
    A, B = t.A, t.B
    a = A.rank
    gens = module_generators(A)
    vectors, blocks, target = _retraction_system(t, gens)
    found = least_multiple_with_witness(vectors, a * len(gens), target)
    if found is None:
        raise ArithmeticError("identity has no multiple in the retraction image")
    d, coeffs = found
    r = [[0] * B.rank for _ in range(a)]
    for c, (offset, cosets, w) in zip(coeffs, blocks):
        if not c:
            continue
        for ci, co in enumerate(cosets):
            for i, x in enumerate(A.action[co[0]].apply(w)):
                if x:
                    r[i][offset + ci] += c * x
    R = IntMatrix(r, B.rank)
    if R @ t.inject != IntMatrix.identity(a).scale(d):
        raise ArithmeticError("retraction does not restrict to the multiple of the identity")
    return d, R


def class_order_by_retraction(t: ExactTriple) -> ClassOrder:
    """Class order via equivariant retractions ``r: B -> A`` with ``r o inject = d id_A``.

    Needs ``B`` to carry a permutation structure: G-maps ``Z[G/H] -> A`` are
    exactly the vectors of ``A^H``, so the unknowns are one integer per
    fixed-point basis vector per permutation block.  Since ``r o inject - d id``
    is equivariant, it vanishes as soon as it kills a set of module generators
    of A; only those columns are compared.

    The order is found one prime at a time.  |G| kills the cokernel of
    ``Hom_G(B, A) -> End_G(A)``, so its p-part is read off modulo ``p^k`` with
    ``p^k`` the p-part of |G|, using generators of A localized at p.  The
    retraction itself (and from it the section) is solved over Z on demand.
    """
    A, B = t.A, t.B
    if B.permutation is None:
        raise ValueError("the middle term has no permutation structure")
    if t.C.rank == 0:
        return ClassOrder(1, "retraction", IntMatrix.zeros(B.rank, 0))
    if A.rank == 0:
        return ClassOrder(1, "retraction", solve(t.project, IntMatrix.identity(t.C.rank))[0])
    n = t.group.order
    d = 1
    for p in prime_factors(n):
        k = p_valuation(n, p)
        vectors, _, target = _retraction_system(t, module_generators(A, p))
        d *= p ** local_least_power(vectors, target, p, k)

    def section() -> IntMatrix:
        d_exact, R = _exact_retraction(t)
        if d_exact != d:
            raise ArithmeticError(f"local class order {d} disagrees with exact {d_exact}")
        return _section_from_retraction(t, d, R)

    return ClassOrder(d, "retraction", section)


def class_order_by_sections(t: ExactTriple) -> ClassOrder:
    """Class order from the augmented system in ``(s, d)``.

    Unknowns are the entries of ``s: C -> B`` (row-major) and ``d``; the
    constraints are ``project s = d id`` and ``g_B s = s g_C`` on generators.
    The answer is the positive generator of the d-projection of the solution
    lattice.
    """
    B, C = t.B, t.C
    b, c = B.rank, C.rank
    if c == 0:
        return ClassOrder(1, "sections", IntMatrix.zeros(b, 0))
    nv = b * c + 1
    dvar = b * c
    P = t.project.rows()
    cons: list[dict[int, int]] = []
    for i in range(c):
        for j in range(c):
            row = {k * c + j: P[i][k] for k in range(b) if P[i][k]}
            if i == j:
                row[dvar] = -1
            if row:
                cons.append(row)
    for g in t.group.generator_indices:
        gb = B.action[g].rows()
        gc = C.action[g].rows()
        for i in range(b):
            for j in range(c):
                row: dict[int, int] = {}
                for k in range(b):
                    if gb[i][k]:
                        row[k * c + j] = row.get(k * c + j, 0) + gb[i][k]
                for k in range(c):
                    if gc[k][j]:
                        row[i * c + k] = row.get(i * c + k, 0) - gc[k][j]
                row = {key: v for key, v in row.items() if v}
                if row:
                    cons.append(row)
    basis, _ = sparse_column_kernel(cons, nv)
    d = 0
    for r in basis:
        d = gcd(d, r.get(dvar, 0))
    if d == 0:
        raise ArithmeticError("no equivariant multiple of the identity lifts")
    # a kernel vector with d-coordinate exactly d
    comb = [0] * len(basis)
    acc = 0
    for k, r in enumerate(basis):
        x = r.get(dvar, 0)
        if not x:
            continue
        g, u, v = _xgcd(acc, x)
        comb = [u * cc for cc in comb]
        comb[k] = v
        acc = g
    if acc < 0:
        comb = [-cc for cc in comb]
    vec = [0] * nv
    for cc, r in zip(comb, basis):
        if cc:
            for key, v in r.items():
                vec[key] += cc * v
    s = IntMatrix.from_entries(b, c, vec[:dvar])
    return ClassOrder(abs(d), "sections", s)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def class_order(t: ExactTriple) -> ClassOrder:
    if t.B.permutation is not None:
        return class_order_by_retraction(t)
    return class_order_by_sections(t)


def extension_class_order(t: ExactTriple) -> int:
    return class_order(t).order


def splits(t: ExactTriple) -> bool:
    return extension_class_order(t) == 1


def lifts(t: ExactTriple, d: int) -> bool:
    """Whether ``d id_C`` lifts to an equivariant map ``C -> B``."""
    B, C = t.B, t.C
    if C.rank == 0:
        return True
    b, c = B.rank, C.rank
    P = t.project.rows()
    rhs = []
    # unknown s flattened row-major
    rows = []
    for i in range(c):
        for j in range(c):
            row = [0] * (b * c)
            for k in range(b):
                row[k * c + j] = P[i][k]
            rows.append(row)
            rhs.append(d if i == j else 0)
    for g in t.group.generator_indices:
        gb = B.action[g].rows()
        gc = C.action[g].rows()
        for i in range(b):
            for j in range(c):
                row = [0] * (b * c)
                for k in range(b):
                    row[k * c + j] += gb[i][k]
                for k in range(c):
                    row[i * c + k] -= gc[k][j]
                rows.append(row)
                rhs.append(0)
    X, _ = solve(IntMatrix(rows, b * c), IntMatrix.column(rhs))
    return X is not None


def section_is_valid(t: ExactTriple, s: IntMatrix, d: int) -> bool:
    if t.project @ s != IntMatrix.identity(t.C.rank).scale(d):
        return False
    return all(t.B.action[g] @ s == s @ t.C.action[g] for g in t.group.generator_indices)


def subgroup_tate_table(M: GLattice, degrees: Sequence[int] = (-1, 1)):
    """``{(H, i): Tate group}`` over conjugacy-class representatives."""
    return {(H, i): tate(M, H, i) for H in subgroup_representatives(M.group) for i in degrees}
