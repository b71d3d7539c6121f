"""Slow, independent reference implementations used only by the tests."""

import itertools
from math import gcd

from torusrat.intmat import IntMatrix


def minors(A, k):
    m, n = A.shape
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            yield A.submatrix(rows, cols).det()


def determinantal_divisors(A):
    """d_k = gcd of all k x k minors, for k = 1..min(m, n); stops at the first zero."""
    out = []
    for k in range(1, min(A.shape) + 1):
        g = 0
        for d in minors(A, k):
            g = gcd(g, d)
        if g == 0:
            break
        out.append(g)
    return out


def smith_diagonal(A):
    d = determinantal_divisors(A)
    prev = 1
    out = []
    for x in d:
        out.append(x // prev)
        prev = x
    return out


def reference_hnf(A):
    """Row Hermite form by repeated Euclid on columns; pivots positive, above-pivot in [0, p)."""
    rows = [list(r) for r in A.rows()]
    m, n = A.shape
    out = []
    r0 = 0
    for j in range(n):
        while True:
            live = [i for i in range(r0, m) if rows[i][j]]
            if not live:
                break
            p = min(live, key=lambda i: abs(rows[i][j]))
            rows[r0], rows[p] = rows[p], rows[r0]
            done = True
            for i in range(r0 + 1, m):
                if rows[i][j]:
                    q = rows[i][j] // rows[r0][j]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
                    if rows[i][j]:
                        done = False
            if done:
                break
        if r0 < m and rows[r0][j]:
            if rows[r0][j] < 0:
                rows[r0] = [-a for a in rows[r0]]
            for i in range(r0):
                q = rows[i][j] // rows[r0][j]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
            r0 += 1
    out = [r for r in rows[:r0]]
    return out


def same_rank_and_gcd(A, Ab):
    """Integer solvability of A x = b: equal rank r and equal gcd of r x r minors."""
    da, db = determinantal_divisors(A), determinantal_divisors(Ab)
    if len(da) != len(db):
        return False
    return not da or da[-1] == db[-1]


def _column_candidates(t, j, bound, d):
    rb, rc = t.B.rank, t.C.rank
    want = tuple(d if i == j else 0 for i in range(rc))
    for c in itertools.product(range(-bound, bound + 1), repeat=rb):
        if t.project.apply(c) == want:
            yield c


def bounded_sections(t, bound=3, d=1):
    """Equivariant s: C -> B with project @ s == d id and entries in [-bound, bound].

    Columns are enumerated one at a time (each must project to d e_j); a
    rank-2 C is handled by pairing columns through a hash of the candidates.
    """
    B, C = t.B, t.C
    rc = C.rank
    gens = t.group.generator_indices
    if rc == 0:
        yield IntMatrix.zeros(B.rank, 0)
        return
    if rc > 2:
        raise ValueError("brute force is limited to rank(C) <= 2")

    def equivariant(cols):
        s = IntMatrix([list(r) for r in zip(*cols)], rc)
        return s if all(B.action[g] @ s == s @ C.action[g] for g in gens) else None

    first = list(_column_candidates(t, 0, bound, d))
    if rc == 1:
        for c in first:
            s = equivariant([c])
            if s is not None:
                yield s
        return
    second = set(_column_candidates(t, 1, bound, d))
    for c0 in first:
        for c1 in second:
            s = equivariant([c0, c1])
            if s is not None:
                yield s
