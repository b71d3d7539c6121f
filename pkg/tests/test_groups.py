import pytest

from torusrat.groups import (CATALOG_NAMES, CATALOG_ORDERS, FiniteGroup, GroupOrderError, all_subgroups,
                             alternating_group, catalog, catalog_group, compose, cyclic_group,
                             dihedral_group, direct_product, elementary_abelian, is_cyclic,
                             p_part, quaternion_group, subgroup_representatives, sylow,
                             symmetric_group, theorem13_group)

EXPECTED_ORDERS = {
    **{f"c{n}": n for n in range(1, 13)},
    "klein4": 4, "c2xc2xc2": 8, "c3xc3": 9, "d4": 8, "q8": 8, "s3": 6, "a4": 12,
    "c2xc4": 8, "c2xc2xc3xc3": 36,
}


def test_compose_applies_right_factor_first():
    a, b = (1, 2, 0), (1, 0, 2)
    assert compose(a, b) == (2, 1, 0)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_orders_and_tables(name):
    G = catalog_group(name)
    assert G.order == EXPECTED_ORDERS[name]
    assert G.elements[0] == tuple(range(G.degree))
    t = G.table
    for i in range(G.order):
        assert t[i][G.inverse[i]] == 0 and t[G.inverse[i]][i] == 0
    # every non-identity element is generator o parent
    for y in range(1, G.order):
        s, x = G.parent[y]
        assert compose(G.generators[s], G.elements[x]) == G.elements[y]


def test_order_cap(monkeypatch):
    with pytest.raises(GroupOrderError):
        FiniteGroup(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=20)
    monkeypatch.setenv("TORUSRAT_ORDER_CAP", "10")
    with pytest.raises(GroupOrderError):
        symmetric_group(4)
    monkeypatch.setenv("TORUSRAT_ORDER_CAP", "200")
    assert symmetric_group(5).order == 120


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(3, [(0, 0, 1)])


@pytest.mark.parametrize("G, classes, total", [
    (symmetric_group(3), 4, 6),
    (alternating_group(4), 5, 10),
    (dihedral_group(4), 8, 10),
    (quaternion_group(), 6, 6),
    (elementary_abelian(2, 2), 5, 5),
    (cyclic_group(12), 6, 6),
])
def test_subgroup_counts(G, classes, total):
    reps = subgroup_representatives(G)
    assert len(reps) == classes
    assert len(all_subgroups(G)) == total
    assert all(H.is_closed() for H in reps)
    assert reps[0].order == G.order and reps[-1].order == 1


def test_sylow_subgroups():
    A4 = alternating_group(4)
    P2 = sylow(A4, 2)
    assert P2.order == 4 and not is_cyclic(P2)
    assert sylow(A4, 3).order == 3 and is_cyclic(sylow(A4, 3))
    assert sylow(A4, 5).order == 1
    assert is_cyclic(sylow(symmetric_group(3), 2))
    assert not is_cyclic(sylow(quaternion_group(), 2))
    assert p_part(36, 2) == 4 and p_part(36, 3) == 9 and p_part(36, 5) == 1


def test_quaternion_has_one_involution():
    Q = quaternion_group()
    assert not Q.is_abelian()
    assert sum(1 for i in range(8) if Q.element_order(i) == 2) == 1


def test_subgroup_generators_and_cosets():
    D = dihedral_group(4)
    for H in subgroup_representatives(D):
        assert D.closure(H.generators) == frozenset(H.elements)
        cosets = H.left_cosets()
        assert len(cosets) * H.order == D.order
        assert sorted(x for c in cosets for x in c) == list(range(D.order))
        assert cosets[0][0] == 0
        sub, to_parent = H.as_group()
        assert sub.order == H.order and sorted(to_parent) == list(H.elements)


def test_direct_product_and_theorem13_group():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6 and is_cyclic(G)
    assert theorem13_group([]).order == 1
    assert theorem13_group([2]).order == 4
    assert theorem13_group([3, 2]).order == 36
    assert theorem13_group([2, 3]).degree == 10


def test_round_trip_dict():
    G = catalog_group("d4")
    H = FiniteGroup.from_dict(G.to_dict())
    assert H.elements == G.elements


def test_catalog_filters():
    names = [G.name for G in catalog(8)]
    assert all(G.order <= 8 for G in catalog(8))
    assert all(G.order != 36 for G in catalog())
    assert any(G.order == 36 for G in catalog(include_stretch=True))
    assert len(names) == len(set(names))
    assert catalog_group("V4").order == 4
    with pytest.raises(KeyError):
        catalog_group("nope")


def test_catalog_orders_table():
    for name in CATALOG_NAMES:
        assert catalog_group(name).order == CATALOG_ORDERS[name]
