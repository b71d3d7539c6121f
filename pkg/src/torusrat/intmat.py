"""Exact linear algebra over the integers.

All routines work with Python ints, so entries never overflow.  Matrices are
immutable ``IntMatrix`` values; the heavy lifting is done on plain lists and
sparse dict rows internally.

Conventions
-----------
* ``hermite_normal_form`` is row-style: ``U @ A == H`` with ``H`` in reduced
  row echelon form over Z (positive pivots, entries above a pivot reduced
  into ``[0, pivot)``).
* ``kernel_basis`` returns the row-vector kernel ``{x : x @ A == 0}``.
* ``cokernel_invariants`` describes ``Z^rows / A Z^cols``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Dense immutable integer matrix."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash", "_sparse_cols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(map(int, r)) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None
        self._sparse_cols = None

    @classmethod
    def _trusted(cls, data: tuple, ncols: int) -> "IntMatrix":
        """Wrap a tuple of equal-length int tuples without copying or checking."""
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._rows = len(data), ncols, data
        m._hash = m._sparse_cols = None
        return m

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != nrows * ncols:
            raise ValueError("entry count does not match shape")
        return cls([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def column(cls, vec: Sequence[int]) -> "IntMatrix":
        return cls([[x] for x in vec], 1)

    @classmethod
    def hstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        n = mats[0].nrows
        if any(m.nrows != n for m in mats):
            raise ValueError("row counts differ")
        rows = [sum((m._rows[i] for m in mats), ()) for i in range(n)]
        return cls(rows, sum(m.ncols for m in mats))

    @classmethod
    def vstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        c = mats[0].ncols
        if any(m.ncols != c for m in mats):
            raise ValueError("column counts differ")
        return cls([r for m in mats for r in m._rows], c)

    @classmethod
    def block_diagonal(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        nr = sum(m.nrows for m in mats)
        nc = sum(m.ncols for m in mats)
        out = [[0] * nc for _ in range(nr)]
        r0 = c0 = 0
        for m in mats:
            for i, row in enumerate(m._rows):
                out[r0 + i][c0:c0 + m.ncols] = row
            r0 += m.nrows
            c0 += m.ncols
        return cls(out, nc)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self._rows for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    # arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        if not self.nrows or not self.ncols:
            return IntMatrix([[]] * self.ncols, self.nrows) if self.ncols else IntMatrix([], self.nrows)
        return IntMatrix._trusted(tuple(zip(*self._rows)), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix._trusted(tuple(map(tuple, _matmul(self._rows, other._rows, other.ncols))),
                                  other.ncols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix._trusted(tuple(tuple(a + b for a, b in zip(r, s))
                                        for r, s in zip(self._rows, other._rows)), self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix._trusted(tuple(tuple(a - b for a, b in zip(r, s))
                                        for r, s in zip(self._rows, other._rows)), self.ncols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self._rows], self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]!r})" if self.nrows \
            else f"IntMatrix([], ncols={self.ncols})"

    def is_zero(self) -> bool:
        return all(not x for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if self._sparse_cols is None:
            cols = [[] for _ in range(self.ncols)]
            for i, r in enumerate(self._rows):
                for j, a in enumerate(r):
                    if a:
                        cols[j].append((i, a))
            self._sparse_cols = cols
        out = [0] * self.nrows
        for j, v in enumerate(vec):
            if v:
                for i, a in self._sparse_cols[j]:
                    out[i] += a * v
        return tuple(out)

    def det(self) -> int:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self._rows])

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det() in (1, -1)

    def rank(self) -> int:
        return len(_echelon([_to_dict(r) for r in self._rows], self.ncols)[0])


# ---------------------------------------------------------------------------
# low level helpers


def _matmul(a, b, bcols):
    # row i of the product is the combination of rows of b weighted by row i of a
    sparse_b = [[(j, y) for j, y in enumerate(r) if y] for r in b]
    out = []
    for r in a:
        acc = [0] * bcols
        for k, x in enumerate(r):
            if x:
                for j, y in sparse_b[k]:
                    acc[j] += x * y
        out.append(acc)
    return out


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _to_dict(row: Sequence[int]) -> dict[int, int]:
    return {j: x for j, x in enumerate(row) if x}


def _axpy(dst: dict[int, int], q: int, src: dict[int, int]) -> None:
    """dst -= q * src, in place."""
    for j, x in src.items():
        v = dst.get(j, 0) - q * x
        if v:
            dst[j] = v
        else:
            dst.pop(j, None)


def _lead(row: dict[int, int], ncols: int) -> int | None:
    # passenger keys are all >= ncols, so the overall minimum decides
    if not row:
        return None
    j = min(row)
    return j if j < ncols else None


def _echelon(rows: list[dict[int, int]], ncols: int, reduce: bool = True):
    """Row-style Hermite form of sparse rows.

    Keys ``>= ncols`` are passengers (e.g. transform columns) and never chosen
    as pivots.  Returns ``(pivot_rows, pivots, zero_rows)``; ``zero_rows`` are
    the rows whose first ``ncols`` entries vanished, with their passengers.
    Mutates the given dicts.
    """
    buckets: dict[int, list[dict[int, int]]] = {}
    heap: list[int] = []
    zero_rows: list[dict[int, int]] = []

    def push(r):
        j = _lead(r, ncols)
        if j is None:
            zero_rows.append(r)
            return
        b = buckets.get(j)
        if b is None:
            buckets[j] = [r]
            heapq.heappush(heap, j)
        else:
            b.append(r)

    for r in rows:
        push(r)

    basis: list[dict[int, int]] = []
    pivots: list[int] = []
    while heap:
        j = heapq.heappop(heap)
        cands = buckets.pop(j)
        while len(cands) > 1:
            k = min(range(len(cands)), key=lambda i: abs(cands[i][j]))
            piv = cands[k]
            a = piv[j]
            rest = []
            for i, r in enumerate(cands):
                if i == k:
                    continue
                b = r[j]
                q = b // a
                # nearest quotient keeps remainders small
                if 2 * abs(b - q * a) > abs(a):
                    q += 1
                _axpy(r, q, piv)
                if j in r:
                    rest.append(r)
                else:
                    push(r)
            cands = [piv] + rest
        piv = cands[0]
        if piv[j] < 0:
            for key in piv:
                piv[key] = -piv[key]
        basis.append(piv)
        pivots.append(j)

    if reduce:
        for i, row in enumerate(basis):
            pj = pivots[i]
            a = row[pj]
            for k in range(i):
                b = basis[k].get(pj, 0)
                if b and (b < 0 or b >= a):
                    _axpy(basis[k], b // a, row)
    return basis, pivots, zero_rows


def _dense(row: dict[int, int], n: int, offset: int = 0) -> list[int]:
    out = [0] * n
    for j, x in row.items():
        k = j - offset
        if 0 <= k < n:
            out[k] = x
    return out


def coords_in_echelon(basis: Sequence[dict[int, int]] | Sequence[Sequence[int]],
                      pivots: Sequence[int], vec: Sequence[int] | dict[int, int]):
    """Coefficients ``y`` with ``y @ basis == vec``, or None if vec is outside the span.

    ``basis`` must be in echelon form with the given pivot columns.
    """
    w = dict(vec) if isinstance(vec, dict) else _to_dict(vec)
    out = []
    for row, pj in zip(basis, pivots):
        r = row if isinstance(row, dict) else _to_dict(row)
        b = w.get(pj, 0)
        if b % r[pj]:
            return None
        q = b // r[pj]
        out.append(q)
        if q:
            _axpy(w, q, r)
    if w:
        return None
    return out


def least_multiple_in_span(basis: Sequence[dict[int, int]], pivots: Sequence[int],
                           vec: Sequence[int] | dict[int, int]) -> int | None:
    """Least d > 0 with ``d * vec`` in the row span of an echelon basis.

    Returns None when no multiple lies in the span (vec outside the rational span).
    """
    w = dict(vec) if isinstance(vec, dict) else _to_dict(vec)
    d = 1
    for r, pj in zip(basis, pivots):
        b = w.get(pj, 0)
        if not b:
            continue
        a = r[pj]
        g = a // gcd(a, b)
        if g != 1:
            d *= g
            for k in w:
                w[k] *= g
            b *= g
        _axpy(w, b // a, r)
    if w:
        return None
    return d


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with S diagonal, each entry dividing the next."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    m, n = A.shape
    a = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, q, src):  # row dst -= q * row src
        ra, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                ra[j] -= q * rs[j]
        ua, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ua[j] -= q * us[j]

    def add_col(dst, q, src):  # col dst -= q * col src
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        for r in V:
            if r[src]:
                r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, a[i][t] // p, t)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, a[t][j] // p, t)
                    if a[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, -1, bad)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithDecomposition(IntMatrix(a, n), IntMatrix(U, m), IntMatrix(V, n))


def hermite_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H`` and unimodular ``U`` with ``U @ A == H``."""
    m, n = A.shape
    rows = []
    for i, r in enumerate(A.rows()):
        d = _to_dict(r)
        d[n + i] = 1
        rows.append(d)
    basis, pivots, zero_rows = _echelon(rows, n)
    # canonical order for the transform rows of the zero part
    kbasis, _, _ = _echelon([{k - n: v for k, v in z.items()} for z in zero_rows], m)
    H = [_dense(r, n) for r in basis] + [[0] * n for _ in kbasis]
    U = [_dense(r, m, n) for r in basis] + [_dense(r, m) for r in kbasis]
    return IntMatrix(H, n), IntMatrix(U, m)


def hnf_basis(A: IntMatrix) -> IntMatrix:
    """Nonzero rows of the Hermite normal form (canonical basis of the row lattice)."""
    basis, _, _ = _echelon([_to_dict(r) for r in A.rows()], A.ncols)
    return IntMatrix([_dense(r, A.ncols) for r in basis], A.ncols)


def hnf_pivots(B: IntMatrix) -> list[int]:
    """Pivot columns of a matrix already in echelon form."""
    out = []
    for r in B.rows():
        out.append(next(j for j, x in enumerate(r) if x))
    return out


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Rows spanning ``{x : x @ A == 0}``, in Hermite normal form."""
    m, n = A.shape
    rows = []
    for i, r in enumerate(A.rows()):
        d = _to_dict(r)
        d[n + i] = 1
        rows.append(d)
    _, _, zero_rows = _echelon(rows, n, reduce=False)
    kb, _, _ = _echelon([{k - n: v for k, v in z.items()} for z in zero_rows], m)
    return IntMatrix([_dense(r, m) for r in kb], m)


def column_kernel(A: IntMatrix) -> IntMatrix:
    """Rows spanning ``{x : A @ x == 0}``, in Hermite normal form."""
    return kernel_basis(A.T)


@dataclass(frozen=True)
class CokernelStructure:
    torsion: tuple[int, ...]
    free_rank: int


def cokernel_structure(A: IntMatrix) -> CokernelStructure:
    """Structure of ``Z^rows / A Z^cols``."""
    m, n = A.shape
    # column lattice basis: Hermite form of A^T
    cb, _, _ = _echelon([_to_dict(c) for c in zip(*A.rows())] if m and n else [], m)
    r = len(cb)
    if r == 0:
        return CokernelStructure((), m)
    # in reduced Hermite form a unit-pivot row is zero in every other row's
    # pivot column, so quotienting by it just deletes that row and column
    unit = {min(x) for x in cb if x[min(x)] == 1}
    rest = [x for x in cb if min(x) not in unit]
    if not rest:
        return CokernelStructure((), m - r)
    keep = [j for j in range(m) if j not in unit]
    sq = IntMatrix([[x.get(j, 0) for j in keep] for x in rest], len(keep))
    diag = smith_normal_form(sq).diagonal
    tors = tuple(d for d in diag if d > 1)
    return CokernelStructure(tors, m - r)


def cokernel_invariants(A: IntMatrix) -> list[int]:
    """Invariant factors > 1 of the torsion of ``Z^rows / A Z^cols``."""
    return list(cokernel_structure(A).torsion)


def solve(A: IntMatrix, B: IntMatrix) -> tuple[IntMatrix | None, IntMatrix]:
    """Integer solution of ``A @ X == B`` and a basis of ``{x : A @ x == 0}``.

    The first component is None when no integer solution exists.  The
    homogeneous basis is returned as rows in Hermite normal form.
    """
    if A.nrows != B.nrows:
        raise ValueError("shape mismatch")
    m, n = A.shape
    k = B.ncols
    # Echelon the rows of [A^T ; B^T] restricted to A's columns... work on the
    # transposed system x^T A^T = b^T with passengers tracking combinations.
    AT = A.T
    rows = []
    for i, r in enumerate(AT.rows()):
        d = _to_dict(r)
        d[m + i] = 1
        rows.append(d)
    basis, pivots, zero_rows = _echelon(rows, m, reduce=False)
    hom, _, _ = _echelon([{key - m: v for key, v in z.items()} for z in zero_rows], n)
    homog = IntMatrix([_dense(r, n) for r in hom], n)
    cols = []
    for j in range(k):
        target = B.col(j)
        w = _to_dict(target)
        x: dict[int, int] = {}
        ok = True
        for r, pj in zip(basis, pivots):
            b = w.get(pj, 0)
            if not b:
                continue
            if b % r[pj]:
                ok = False
                break
            q = b // r[pj]
            for key, v in r.items():
                if key < m:
                    nv = w.get(key, 0) - q * v
                    if nv:
                        w[key] = nv
                    else:
                        w.pop(key, None)
                else:
                    x[key - m] = x.get(key - m, 0) + q * v
        if not ok or w:
            return None, homog
        cols.append(_dense(x, n))
    X = IntMatrix([list(r) for r in zip(*cols)], k) if n and k else IntMatrix.zeros(n, k)
    return X, homog


def row_coordinates(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix | None:
    """Y with ``Y @ basis == vectors`` for an echelon-form ``basis``; None if impossible."""
    if basis.nrows == 0:
        return IntMatrix.zeros(vectors.nrows, 0) if vectors.is_zero() else None
    piv = hnf_pivots(basis)
    brows = [_to_dict(r) for r in basis.rows()]
    out = []
    for v in vectors.rows():
        c = coords_in_echelon(brows, piv, v)
        if c is None:
            return None
        out.append(c)
    return IntMatrix(out, basis.nrows)


def saturated(basis: IntMatrix) -> bool:
    """True iff the row lattice is a direct summand of Z^ncols."""
    if basis.nrows == 0:
        return True
    return all(d == 1 for d in smith_normal_form(basis).diagonal)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, abs(n) + 1) if n % d == 0]


def prime_factors(n: int) -> list[int]:
    out = []
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def sparse_column_kernel(constraints: Sequence[dict[int, int]], nvars: int):
    """Kernel ``{u in Z^nvars : c . u == 0 for every constraint row c}``.

    Constraints are sparse rows over the variables.  Returns the Hermite
    basis as ``(rows, pivots)`` with rows as dicts.
    """
    cols: list[dict[int, int]] = [{} for _ in range(nvars)]
    for i, c in enumerate(constraints):
        for j, x in c.items():
            if x:
                cols[j][i] = x
    m = len(constraints)
    for j in range(nvars):
        cols[j][m + j] = 1
    _, _, zero_rows = _echelon(cols, m, reduce=False)
    basis, pivots, _ = _echelon([{k - m: v for k, v in z.items()} for z in zero_rows], nvars)
    return basis, pivots


def echelon_basis(vectors: Sequence[Sequence[int] | dict[int, int]], ncols: int):
    """Hermite basis ``(rows, pivots)`` of the lattice spanned by the vectors."""
    rows = [dict(v) if isinstance(v, dict) else _to_dict(v) for v in vectors]
    basis, pivots, _ = _echelon(rows, ncols)
    return basis, pivots


def dense_rows(rows: Sequence[dict[int, int]], ncols: int) -> IntMatrix:
    return IntMatrix([_dense(r, ncols) for r in rows], ncols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class _IncrementalLattice:
    """Echelon basis of a growing row lattice; witnesses only for vectors that enlarged it.

    Each basis row is ``(main, wit)``: sparse entries plus its expression in
    terms of the kept input vectors.
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict[int, int], dict[int, int]]] = {}
        self.kept: list[int] = []

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        """Remainder of v after exact division steps; empty iff v lies in the lattice."""
        v = dict(v)
        while v:
            j = min(v)
            row = self.rows.get(j)
            if row is None or v[j] % row[0][j]:
                return v
            _axpy(v, v[j] // row[0][j], row[0])
        return v

    def add(self, v: dict[int, int], label: int) -> bool:
        if not self.reduce(v):
            return False
        self.kept.append(label)
        main, wit = dict(v), {label: 1}
        while main:
            j = min(main)
            row = self.rows.get(j)
            if row is None:
                if main[j] < 0:
                    main = {k: -x for k, x in main.items()}
                    wit = {k: -x for k, x in wit.items()}
                self.rows[j] = (main, wit)
                return True
            pm, pw = row
            a, b = pm[j], main[j]
            if b % a == 0:
                q = b // a
                _axpy(main, q, pm)
                _axpy(wit, q, pw)
                continue
            g, x, y = _xgcd(a, b)
            # new pivot row x*p + y*v; the other combination loses the lead
            nm, nw = {}, {}
            _axpy(nm, -x, pm)
            _axpy(nm, -y, main)
            _axpy(nw, -x, pw)
            _axpy(nw, -y, wit)
            om, ow = {}, {}
            _axpy(om, -(a // g), main)
            _axpy(om, b // g, pm)
            _axpy(ow, -(a // g), wit)
            _axpy(ow, b // g, pw)
            if nm[j] < 0:
                nm = {k: -x for k, x in nm.items()}
                nw = {k: -x for k, x in nw.items()}
            self.rows[j] = (nm, nw)
            main, wit = om, ow
        return True

    def least_multiple(self, target: dict[int, int]) -> tuple[int, dict[int, int]] | None:
        w = dict(target)
        d = 1
        acc: dict[int, int] = {}
        while w:
            j = min(w)
            row = self.rows.get(j)
            if row is None:
                return None
            pm, pw = row
            a, b = pm[j], w[j]
            g = abs(a) // gcd(a, b)
            if g != 1:
                d *= g
                w = {k: x * g for k, x in w.items()}
                acc = {k: x * g for k, x in acc.items()}
                b *= g
            q = b // a
            _axpy(w, q, pm)
            _axpy(acc, -q, pw)
        return d, acc


def least_multiple_with_witness(vectors: Sequence[dict[int, int]], ncols: int,
                                target: dict[int, int]) -> tuple[int, list[int]] | None:
    """Least d > 0 and integers c with ``sum c_j vectors_j == d * target``.

    None when no positive multiple of the target lies in the span.  Vectors
    already in the lattice spanned by earlier ones are skipped, so witness
    bookkeeping is paid only for the few that enlarge it.
    """
    L = _IncrementalLattice()
    for j, v in enumerate(vectors):
        if v:
            L.add(v, j)
    found = L.least_multiple(target)
    if found is None:
        return None
    d, acc = found
    return d, [acc.get(j, 0) for j in range(len(vectors))]


def p_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class LocalEchelon:
    """Howell-style echelon form of a row module over ``Z/p^k``.

    Each row is stored under its pivot column with leading entry ``p^e``.
    Whenever a row with ``e > 0`` is stored, its multiple by ``p^(k-e)``
    (whose lead vanishes) is inserted as well, so reduction by pivots decides
    membership exactly.
    """

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p ** k
        self.rows: dict[int, tuple[int, dict[int, int]]] = {}

    def _clean(self, v: dict[int, int]) -> dict[int, int]:
        q = self.q
        return {j: x % q for j, x in v.items() if x % q}

    def add(self, v: dict[int, int]) -> None:
        p, k, q = self.p, self.k, self.q
        pending = [self._clean(v)]
        while pending:
            v = pending.pop()
            while v:
                j = min(v)
                x = v[j]
                e = p_valuation(x, p)
                row = self.rows.get(j)
                if row is not None and e >= row[0]:
                    c = x // p ** row[0]
                    v = {i: y % q for i, y in _sub_scaled(v, c, row[1]).items() if y % q}
                    continue
                u = pow(x // p ** e, -1, q)
                v = {i: y * u % q for i, y in v.items()}
                v = {i: y for i, y in v.items() if y}
                self.rows[j] = (e, v)
                if e:
                    w = {i: y * p ** (k - e) % q for i, y in v.items() if i != j}
                    w = {i: y for i, y in w.items() if y}
                    if w:
                        pending.append(w)
                v = row[1] if row is not None else {}

    def least_power(self, target: dict[int, int]) -> int:
        """Least ``j`` with ``p^j * target`` in the module (at most k)."""
        p, k, q = self.p, self.k, self.q
        w = self._clean(target)
        j = 0
        while w:
            c = min(w)
            e = p_valuation(w[c], p)
            row = self.rows.get(c)
            need = row[0] if row is not None else k
            if e < need:
                s = p ** (need - e)
                j += need - e
                w = {i: y * s % q for i, y in w.items() if y * s % q}
                if row is None:
                    continue
            w = {i: y % q for i, y in _sub_scaled(w, w[c] // p ** need, row[1]).items() if y % q}
        return j


def _sub_scaled(v: dict[int, int], c: int, row: dict[int, int]) -> dict[int, int]:
    out = dict(v)
    _axpy(out, c, row)
    return out


def local_least_power(vectors: Sequence[dict[int, int]], target: dict[int, int],
                      p: int, k: int) -> int:
    """Least j <= k with ``p^j * target`` in the span of the vectors modulo ``p^k``.

    Columns are relabelled rarest first and vectors inserted shortest first;
    both keep fill-in down on the large sparse systems met in practice.
    """
    count: dict[int, int] = {}
    for v in vectors:
        for j in v:
            count[j] = count.get(j, 0) + 1
    order = sorted(count, key=lambda j: (count[j], j))
    rel = {j: i for i, j in enumerate(order)}
    for j in sorted(target):
        rel.setdefault(j, len(rel))
    E = LocalEchelon(p, k)
    for v in sorted((v for v in vectors if v), key=len):
        E.add({rel[j]: x for j, x in v.items()})
    return E.least_power({rel[j]: x for j, x in target.items()})
