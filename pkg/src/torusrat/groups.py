"""Finite permutation groups with full multiplication tables."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

DEFAULT_ORDER_CAP = 100
ORDER_CAP_ENV = "TORUSRAT_ORDER_CAP"

Perm = tuple[int, ...]


class GroupOrderError(ValueError):
    """The closure of the generators is larger than the configured cap."""


def order_cap() -> int:
    value = os.environ.get(ORDER_CAP_ENV)
    return int(value) if value else DEFAULT_ORDER_CAP


def compose(a: Perm, b: Perm) -> Perm:
    """``a o b``: apply b first, then a."""
    return tuple(a[x] for x in b)


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError(f"{list(p)} is not a permutation of {degree} points")
    return p


class FiniteGroup:
    """A finite group of permutations of ``{0, ..., degree-1}``.

    Elements are listed in breadth-first order from the identity (index 0);
    ``table[i][j]`` is the index of ``elements[i] o elements[j]``.  Every
    element other than the identity is ``generators[s] o elements[parent]``
    for the recorded ``(s, parent)`` pair, which is how actions given on
    generators are extended to the whole group.
    """

    def __init__(self, degree: int, generators: Sequence[Sequence[int]],
                 name: str = "", cap: int | None = None):
        cap = order_cap() if cap is None else cap
        self.degree = degree
        self.name = name
        gens = [_check_perm(g, degree) for g in generators]
        self.generators: tuple[Perm, ...] = tuple(gens)
        identity = tuple(range(degree))
        elements = [identity]
        index = {identity: 0}
        parent: list[tuple[int, int] | None] = [None]
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s, g in enumerate(gens):
                y = compose(g, elements[x])
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    parent.append((s, x))
                    if len(elements) > cap:
                        raise GroupOrderError(
                            f"group order exceeds cap {cap} (set {ORDER_CAP_ENV} to raise it)")
                    queue.append(index[y])
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.index = index
        self.parent = tuple(parent)
        self.generator_indices = tuple(index[g] for g in gens)
        self.table = tuple(tuple(index[compose(a, b)] for b in elements) for a in elements)
        self.inverse = tuple(row.index(0) for row in self.table)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"<FiniteGroup {label} of order {self.order}>"

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def closure(self, indices) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        gens = [i for i in set(indices) if i != 0]
        seen = {0}
        queue = deque([0])
        t = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[g][x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def conjugate(self, g: int, elems) -> frozenset[int]:
        t, ginv = self.table, self.inverse[g]
        return frozenset(t[t[g][h]][ginv] for h in elems)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "FiniteGroup":
        return cls(int(data["degree"]), data.get("generators", []), name=name or data.get("name", ""))

    # subgroups ----------------------------------------------------------
    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @cached_property
    def _all_subgroups(self) -> list[frozenset[int]]:
        cyclic = {self.closure([i]) for i in range(self.order)}
        found = set(cyclic)
        frontier = list(cyclic)
        cyc = sorted(cyclic, key=len)
        while frontier:
            nxt = []
            for s in frontier:
                for c in cyc:
                    if c <= s:
                        continue
                    j = self.closure(s | c)
                    if j not in found:
                        found.add(j)
                        nxt.append(j)
            frontier = nxt
        return sorted(found, key=lambda s: (-len(s), sorted(s)))

    @cached_property
    def _subgroup_classes(self) -> list[tuple["Subgroup", int]]:
        seen: set[frozenset[int]] = set()
        reps = []
        for s in self._all_subgroups:
            if s in seen:
                continue
            cls = {self.conjugate(g, s) for g in range(self.order)}
            seen |= cls
            best = min(tuple(sorted(c)) for c in cls)
            reps.append((Subgroup(self, best), len(cls)))
        reps.sort(key=lambda r: (-r[0].order, r[0].elements))
        return reps

    def subgroup(self, indices) -> "Subgroup":
        """The subgroup generated by the given element indices."""
        return Subgroup(self, tuple(sorted(self.closure(indices))))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        if 0 not in self.elements:
            raise ValueError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.elements == self.elements)

    def is_closed(self) -> bool:
        s = set(self.elements)
        t = self.parent.table
        return all(t[a][b] in s for a in self.elements for b in self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily with elements of largest order first."""
        gens: list[int] = []
        span = frozenset([0])
        for h in sorted(self.elements, key=lambda i: (-self.parent.element_order(i), i)):
            if h not in span:
                gens.append(h)
                span = self.parent.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def as_group(self) -> tuple[FiniteGroup, list[int]]:
        """Standalone group on the same points, plus the map to parent indices."""
        perms = [self.parent.elements[i] for i in self.generators]
        name = f"subgroup of order {self.order}" + (f" in {self.parent.name}" if self.parent.name else "")
        G = FiniteGroup(self.parent.degree, perms, name=name, cap=max(self.order, 1))
        return G, [self.parent.index[e] for e in G.elements]

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, tuple(sorted(self.parent.conjugate(g, self.elements))))

    def left_cosets(self) -> list[tuple[int, ...]]:
        """Left cosets gH ordered by their minimal element index."""
        t = self.parent.table
        seen: set[int] = set()
        out = []
        for g in range(self.parent.order):
            if g in seen:
                continue
            coset = tuple(sorted(t[g][h] for h in self.elements))
            seen.update(coset)
            out.append(coset)
        return out


def subgroup_representatives(G: FiniteGroup) -> list[Subgroup]:
    """One subgroup per conjugacy class, largest first, then by element set."""
    return [s for s, _ in G._subgroup_classes]


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [Subgroup(G, tuple(sorted(s))) for s in G._all_subgroups]


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A p-Sylow subgroup (the first one among the class representatives)."""
    target = p_part(G.order, p)
    for s in subgroup_representatives(G):
        if s.order == target:
            return s
    raise AssertionError("Sylow subgroup not found")  # Sylow's theorem


def is_cyclic(H: Subgroup | FiniteGroup) -> bool:
    if isinstance(H, FiniteGroup):
        H = H.whole
    return any(H.parent.element_order(h) == H.order for h in H.elements)


# ---------------------------------------------------------------------------
# constructors for the built-in catalog


def cyclic_group(n: int) -> FiniteGroup:
    gens = [tuple((i + 1) % n for i in range(n))] if n > 1 else []
    return FiniteGroup(max(n, 1), gens, name=f"C{n}")


def direct_product(*groups: FiniteGroup, name: str = "") -> FiniteGroup:
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for p in g.generators:
            full = list(range(degree))
            for x, y in enumerate(p):
                full[offset + x] = offset + y
            gens.append(tuple(full))
        offset += g.degree
    return FiniteGroup(degree, gens, name=name or "x".join(g.name for g in groups))


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    if rank == 0:
        return FiniteGroup(1, [], name="C1")
    return direct_product(*[cyclic_group(p) for _ in range(rank)], name="x".join([f"C{p}"] * rank))


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, [rot, ref], name=f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return FiniteGroup(1, [], name="S1")
    cyc = tuple((i + 1) % n for i in range(n))
    tr = (1, 0) + tuple(range(2, n))
    return FiniteGroup(n, [cyc, tr], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return FiniteGroup(n, gens, name=f"A{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 acting on itself by left multiplication."""
    # units 1, i, j, k, -1, -i, -j, -k encoded as 0..7
    basic = {
        ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    names = "1ijk"

    def mult(a: int, b: int) -> int:
        sa, ua = (-1 if a >= 4 else 1), names[a % 4]
        sb, ub = (-1 if b >= 4 else 1), names[b % 4]
        if ua == "1":
            s, u = 1, ub
        elif ub == "1":
            s, u = 1, ua
        else:
            s, u = basic[(ua, ub)]
        s *= sa * sb
        return names.index(u) + (4 if s < 0 else 0)

    left_i = tuple(mult(1, x) for x in range(8))
    left_j = tuple(mult(2, x) for x in range(8))
    return FiniteGroup(8, [left_i, left_j], name="Q8")


def theorem13_group(primes) -> FiniteGroup:
    """Product of (Z/p)^2 over the given primes, each factor on 2p points."""
    primes = sorted(set(primes))
    if not primes:
        return FiniteGroup(1, [], name="C1")
    factors = [elementary_abelian(p, 2) for p in primes]
    return direct_product(*factors, name="x".join(f.name for f in factors))


_CATALOG_BUILDERS = {
    **{f"c{n}": (lambda n=n: cyclic_group(n)) for n in range(1, 13)},
    "klein4": lambda: elementary_abelian(2, 2),
    "c2xc2xc2": lambda: elementary_abelian(2, 3),
    "c3xc3": lambda: elementary_abelian(3, 2),
    "d4": lambda: dihedral_group(4),
    "q8": quaternion_group,
    "s3": lambda: symmetric_group(3),
    "a4": lambda: alternating_group(4),
    "c2xc4": lambda: direct_product(cyclic_group(2), cyclic_group(4)),
    "c2xc2xc3xc3": lambda: theorem13_group([2, 3]),
}

CATALOG_NAMES: tuple[str, ...] = tuple(_CATALOG_BUILDERS)
# known orders, so that filtering by order never builds a group above the cap
CATALOG_ORDERS = {**{f"c{n}": n for n in range(1, 13)}, "klein4": 4, "c2xc2xc2": 8,
                  "c3xc3": 9, "d4": 8, "q8": 8, "s3": 6, "a4": 12, "c2xc4": 8,
                  "c2xc2xc3xc3": 36}
STRETCH_NAMES = frozenset({"c2xc2xc3xc3"})

_ALIASES = {"c2xc2": "klein4", "v4": "klein4", "e8": "c2xc2xc2", "d8": "d4"}


def catalog_group(name: str) -> FiniteGroup:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _CATALOG_BUILDERS:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG_NAMES)}")
    G = _CATALOG_BUILDERS[key]()
    G.name = key
    return G


def catalog(max_order: int | None = None, include_stretch: bool = False) -> list[FiniteGroup]:
    out = []
    for name in CATALOG_NAMES:
        if name in STRETCH_NAMES and not include_stretch:
            continue
        if max_order is None or CATALOG_ORDERS[name] <= max_order:
            out.append(catalog_group(name))
    return out
