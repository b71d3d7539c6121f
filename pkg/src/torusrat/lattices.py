"""G-lattices: finite-rank free Z-modules with an integral group action.

Vectors are columns: ``g . m = action[g] @ m``.  The action is stored on
every group element, which keeps the cohomology loops and ``validate``
simple at the sizes the order cap allows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .groups import FiniteGroup, Subgroup
from .intmat import (IntMatrix, kernel_basis, row_coordinates, smith_normal_form, solve)


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class PermutationStructure:
    """Records that a lattice is literally ``(+)_i Z[G/H_i]^{m_i}``.

    Blocks are laid out consecutively; within a block the basis is the list
    of left cosets ordered by minimal element index, so the first basis
    vector of each copy is the coset ``eH``.
    """

    blocks: tuple[tuple[Subgroup, int], ...] = ()

    def copies(self) -> Iterator[tuple[Subgroup, int, list[tuple[int, ...]]]]:
        """Yield ``(H, offset, cosets)`` for every copy of every block."""
        offset = 0
        for H, mult in self.blocks:
            cosets = H.left_cosets()
            for _ in range(mult):
                yield H, offset, cosets
                offset += len(cosets)

    def __add__(self, other: "PermutationStructure") -> "PermutationStructure":
        return PermutationStructure(self.blocks + other.blocks)


@dataclass(frozen=True, eq=False)
class GLattice:
    group: FiniteGroup
    rank: int
    action: tuple[IntMatrix, ...]
    permutation: PermutationStructure | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.action) != self.group.order:
            raise LatticeError("one action matrix per group element is required")
        for a in self.action:
            if a.shape != (self.rank, self.rank):
                raise LatticeError(f"action matrix of shape {a.shape}, expected rank {self.rank}")

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<GLattice{label} of rank {self.rank} over {self.group!r}>"

    def same_action(self, other: "GLattice") -> bool:
        return self.group is other.group and self.action == other.action

    def __call__(self, g: int) -> IntMatrix:
        return self.action[g]

    @property
    def generator_actions(self) -> list[IntMatrix]:
        return [self.action[i] for i in self.group.generator_indices]

    def to_dict(self) -> dict:
        return {"rank": self.rank,
                "generator_actions": [m.tolist() for m in self.generator_actions]}

    def is_permutation(self) -> bool:
        return self.permutation is not None


def from_generator_actions(G: FiniteGroup, matrices: Sequence, name: str = "") -> GLattice:
    """Extend matrices given on the generators of G to the whole group.

    Element ``generators[s] o elements[x]`` gets ``A_s @ action[x]``.  Whether
    the result is a homomorphism is left to :func:`validate`.
    """
    mats = [m if isinstance(m, IntMatrix) else IntMatrix(m) for m in matrices]
    if len(mats) != len(G.generators):
        raise LatticeError(f"{len(mats)} generator matrices for {len(G.generators)} generators")
    if mats:
        rank = mats[0].nrows
    else:
        raise LatticeError("rank cannot be inferred without generators")
    return _extend(G, rank, mats, name)


def _extend(G: FiniteGroup, rank: int, mats: list[IntMatrix], name: str = "") -> GLattice:
    action: list[IntMatrix] = [IntMatrix.identity(rank)]
    for s_x in G.parent[1:]:
        s, x = s_x
        action.append(mats[s] @ action[x])
    return GLattice(G, rank, tuple(action), name=name)


def lattice_from_dict(G: FiniteGroup, data: dict, name: str = "") -> GLattice:
    rank = int(data["rank"])
    mats = [IntMatrix(m, rank) for m in data.get("generator_actions", [])]
    if len(mats) != len(G.generators):
        raise LatticeError(f"{len(mats)} generator matrices for {len(G.generators)} generators")
    return _extend(G, rank, mats, name)


# ---------------------------------------------------------------------------
# constructors


def trivial_lattice(G: FiniteGroup, rank: int = 1) -> GLattice:
    eye = IntMatrix.identity(rank)
    perm = PermutationStructure(((G.whole, rank),)) if rank else PermutationStructure()
    return GLattice(G, rank, (eye,) * G.order, perm, name="Z" if rank == 1 else f"Z^{rank}")


def zero_lattice(G: FiniteGroup) -> GLattice:
    return trivial_lattice(G, 0)


def rank_one_lattice(G: FiniteGroup, generator_signs: Sequence[int], name: str = "") -> GLattice:
    """Rank-one lattice where generator s acts by ``generator_signs[s]``."""
    return _extend(G, 1, [IntMatrix([[int(e)]]) for e in generator_signs], name)


def sign_lattice(G: FiniteGroup) -> GLattice:
    """Rank one, every generator acting by -1; only defined when that is a homomorphism."""
    M = rank_one_lattice(G, [-1] * len(G.generators), name="sign")
    report = validate(M)
    if not report.ok:
        raise LatticeError(f"no sign character sending every generator of {G!r} to -1")
    return M


def permutation_lattice(G: FiniteGroup, H: Subgroup) -> GLattice:
    """``Z[G/H]`` on the coset basis."""
    cosets = H.left_cosets()
    where = {}
    for k, c in enumerate(cosets):
        for g in c:
            where[g] = k
    n = len(cosets)
    t = G.table
    action = []
    for g in range(G.order):
        rows = [[0] * n for _ in range(n)]
        for k, c in enumerate(cosets):
            rows[where[t[g][c[0]]]][k] = 1
        action.append(IntMatrix(rows, n))
    return GLattice(G, n, tuple(action), PermutationStructure(((H, 1),)), name=f"Z[G/H{H.order}]")


def regular_lattice(G: FiniteGroup) -> GLattice:
    M = permutation_lattice(G, G.trivial_subgroup)
    return GLattice(G, M.rank, M.action, M.permutation, name="Z[G]")


def augmentation_ideal(G: FiniteGroup) -> GLattice:
    """``I_G``: kernel of the augmentation, basis ``g - e`` for ``g != e``."""
    n = G.order - 1
    t = G.table
    action = []
    for g in range(G.order):
        rows = [[0] * n for _ in range(n)]
        for h in range(1, G.order):
            gh = t[g][h]
            if gh:
                rows[gh - 1][h - 1] += 1
            if g:
                rows[g - 1][h - 1] -= 1
        action.append(IntMatrix(rows, n))
    return GLattice(G, n, tuple(action), name="I_G")


def norm_one_lattice(G: FiniteGroup) -> GLattice:
    """``J_G``, the dual of the augmentation ideal."""
    J = dual(augmentation_ideal(G))
    return GLattice(G, J.rank, J.action, name="J_G")


def dual(M: GLattice) -> GLattice:
    inv = M.group.inverse
    action = tuple(M.action[inv[g]].T for g in range(M.group.order))
    name = M.name[:-1] if M.name.endswith("'") else (M.name + "'" if M.name else "")
    return GLattice(M.group, M.rank, action, M.permutation, name=name)


def direct_sum(*lattices: GLattice) -> GLattice:
    G = lattices[0].group
    for L in lattices:
        if L.group is not G:
            raise LatticeError("direct sum of lattices over different groups")
    if len(lattices) == 1:
        return lattices[0]
    rank = sum(L.rank for L in lattices)
    action = tuple(IntMatrix.block_diagonal([L.action[g] for L in lattices]) if rank
                   else IntMatrix.zeros(0, 0) for g in range(G.order))
    perm = None
    if all(L.permutation is not None for L in lattices):
        perm = PermutationStructure()
        for L in lattices:
            perm = perm + L.permutation
    name = " + ".join(L.name or "?" for L in lattices)
    return GLattice(G, rank, action, perm, name=name)


def _kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = []
    for ra in a.rows():
        for rb in b.rows():
            rows.append([x * y for x in ra for y in rb])
    return IntMatrix(rows, a.ncols * b.ncols)


def hom_lattice(M: GLattice, N: GLattice) -> GLattice:
    """``Hom_Z(M, N)`` with ``g.f = g_N f g_M^{-1}``.

    Basis: matrix units ``E_ij`` (row i in N, column j in M), row-major, so a
    homomorphism given as an ``rank N x rank M`` matrix corresponds to its
    flattened entries.
    """
    if M.group is not N.group:
        raise LatticeError("Hom between lattices over different groups")
    G = M.group
    inv = G.inverse
    action = tuple(_kron(N.action[g], M.action[inv[g]].T) for g in range(G.order))
    return GLattice(G, M.rank * N.rank, action, name=f"Hom({M.name or '?'},{N.name or '?'})")


def restrict(M: GLattice, H: Subgroup) -> GLattice:
    """M viewed as a lattice over the standalone group H."""
    if H.parent is not M.group:
        raise LatticeError("subgroup of a different group")
    K, to_parent = H.as_group()
    action = tuple(M.action[i] for i in to_parent)
    perm = None
    if M.permutation is not None and not M.permutation.blocks:
        perm = PermutationStructure()
    return GLattice(K, M.rank, action, perm, name=M.name)


def fixed_sublattice(M: GLattice, H: Subgroup) -> IntMatrix:
    """Hermite basis (rows) of ``M^H``."""
    if M.rank == 0:
        return IntMatrix([], 0)
    gens = H.generators
    if not gens:
        return IntMatrix.identity(M.rank)
    eye = IntMatrix.identity(M.rank)
    blocks = [(M.action[h] - eye).T for h in gens]
    return kernel_basis(IntMatrix.hstack(blocks))


def induced_action(M: GLattice, basis: IntMatrix, name: str = "") -> GLattice:
    """The G-stable sublattice spanned by ``basis`` rows (Hermite form) with its own action."""
    k = basis.nrows
    if k == 0:
        return zero_lattice(M.group)
    action = []
    for g in range(M.group.order):
        images = (M.action[g] @ basis.T).T
        Y = row_coordinates(basis, images)
        if Y is None:
            raise LatticeError("sublattice is not stable under the action")
        action.append(Y.T)
    return GLattice(M.group, k, tuple(action), name=name)


def quotient_lattice(M: GLattice, sub_basis: IntMatrix) -> tuple[GLattice, IntMatrix]:
    """Quotient by a saturated stable sublattice, with the projection matrix."""
    r = sub_basis.nrows
    n = M.rank
    if r == 0:
        return M, IntMatrix.identity(n)
    snf = smith_normal_form(sub_basis)
    if any(d != 1 for d in snf.diagonal):
        raise LatticeError("sublattice is not saturated")
    V = snf.V
    proj = V.submatrix(range(n), range(r, n)).T
    # a right inverse of proj: the last rows of V^{-1}
    Vinv, _ = solve(V, IntMatrix.identity(n))
    section = Vinv.submatrix(range(r, n), range(n)).T
    action = tuple(proj @ M.action[g] @ section for g in range(M.group.order))
    Q = GLattice(M.group, n - r, action, name=f"{M.name or '?'}/sub")
    return Q, proj


# ---------------------------------------------------------------------------
# validation and isomorphism witnesses


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str = ""
    pair: tuple[int, int] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(M: GLattice) -> ValidationReport:
    """Exhaustive homomorphism and unimodularity check; reports the first violation."""
    G = M.group
    eye = IntMatrix.identity(M.rank)
    if M.action[0] != eye:
        return ValidationReport(False, "identity", (0, 0), "identity does not act trivially")
    for g in range(G.order):
        if M.action[g].det() not in (1, -1):
            return ValidationReport(False, "unimodularity", (g, g),
                                    f"action of element {g} is not invertible over Z")
    t = G.table
    for g in range(G.order):
        for h in range(G.order):
            if M.action[g] @ M.action[h] != M.action[t[g][h]]:
                return ValidationReport(False, "homomorphism", (g, h),
                                        f"rho({g}) rho({h}) != rho({g}*{h})")
    return ValidationReport(True)


def intertwiners(M: GLattice, N: GLattice) -> IntMatrix:
    """Basis of ``Hom_G(M, N)``; each row is a flattened ``rank N x rank M`` matrix."""
    if M.group is not N.group:
        raise LatticeError("lattices over different groups")
    H = hom_lattice(M, N)
    return fixed_sublattice(H, M.group.whole)


def is_equivariant(M: GLattice, N: GLattice, f: IntMatrix) -> bool:
    return all(N.action[g] @ f == f @ M.action[g] for g in M.group.generator_indices)


def find_isomorphism(M: GLattice, N: GLattice, bound: int = 2) -> IntMatrix | None:
    """Search for a unimodular G-map ``M -> N``.

    Enumerates integer combinations of an intertwiner basis with coefficients
    in ``[-bound, bound]``.  None means "unknown", not "non-isomorphic".
    """
    if M.rank != N.rank:
        return None
    if M.rank == 0:
        return IntMatrix([], 0)
    B = intertwiners(M, N)
    n = M.rank
    vecs = B.rows()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(vecs)):
        if not any(coeffs):
            continue
        flat = [sum(c * v[k] for c, v in zip(coeffs, vecs)) for k in range(n * n)]
        f = IntMatrix.from_entries(n, n, flat)
        if f.det() in (1, -1):
            return f
    return None
