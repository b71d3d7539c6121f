import pytest

from torusrat.cohomology import (ExactTriple, ExactnessError, FiniteAbelianGroup,
                                 class_order_by_retraction, class_order_by_sections, ext1,
                                 extension_class_order, h1_all_pairs, is_coflasque, is_flasque,
                                 lifts, norm_matrix, section_is_valid, splits,
                                 subgroup_tate_table, tate, tate_h0, tate_h1, tate_hminus1)
from torusrat.groups import catalog, catalog_group, cyclic_group, subgroup_representatives
from torusrat.intmat import IntMatrix
from torusrat.lattices import (augmentation_ideal, direct_sum, hom_lattice, norm_one_lattice,
                               permutation_lattice, regular_lattice, restrict, sign_lattice,
                               trivial_lattice)

# abelianization invariants of the catalog groups of order <= 12
ABELIANIZATION = {
    "c1": (), "c2": (2,), "c3": (3,), "c4": (4,), "c5": (5,), "c6": (6,), "c7": (7,),
    "c8": (8,), "c9": (9,), "c10": (10,), "c11": (11,), "c12": (12,),
    "klein4": (2, 2), "c2xc2xc2": (2, 2, 2), "c3xc3": (3, 3), "d4": (2, 2), "q8": (2, 2),
    "s3": (2,), "a4": (3,), "c2xc4": (2, 4),
}


def cyc(*factors):
    return FiniteAbelianGroup(tuple(factors))


def test_finite_abelian_group():
    A = cyc(2, 6)
    assert A.order == 12 and A.has_p_torsion(3) and not A.has_p_torsion(5)
    assert str(A) == "Z/2 + Z/6"
    assert str(FiniteAbelianGroup()) == "0" and FiniteAbelianGroup().is_trivial
    assert FiniteAbelianGroup((), 1).order is None
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))


def test_trivial_lattice_over_c6():
    G = cyclic_group(6)
    Z = trivial_lattice(G)
    assert tate_h0(Z, G.whole) == cyc(6)
    assert tate_hminus1(Z, G.whole).is_trivial
    assert tate_h1(Z, G.whole).is_trivial


def test_sign_lattice_over_c2():
    G = cyclic_group(2)
    s = sign_lattice(G)
    assert tate(s, G.whole, -1) == cyc(2)
    assert tate(s, G.whole, 0).is_trivial
    assert tate(s, G.whole, 1) == cyc(2)
    assert not is_flasque(s) and not is_coflasque(s)


def test_degree_out_of_range():
    with pytest.raises(ValueError):
        tate(trivial_lattice(cyclic_group(2)), None, 2)


@pytest.mark.parametrize("G", catalog(12), ids=lambda G: G.name)
def test_augmentation_and_norm_one_dimension_shifts(G):
    n = G.order
    I, J = augmentation_ideal(G), norm_one_lattice(G)
    top = cyc(n) if n > 1 else FiniteAbelianGroup()
    ab = cyc(*[d for d in ABELIANIZATION[G.name]])
    # H^1(G, I_G) = H^0(G, Z) and Hhat^-1(G, J_G) = Hhat^0(G, Z)
    assert tate_h1(I, G.whole) == top
    assert tate_hminus1(J, G.whole) == top
    # H^1(G, J_G) = H^2(G, Z) and Hhat^-1(G, I_G) = H_1(G, Z), both G^ab
    assert tate_h1(J, G.whole) == ab
    assert tate_hminus1(I, G.whole) == ab


@pytest.mark.parametrize("G", catalog(8), ids=lambda G: G.name)
def test_permutation_lattices_have_vanishing_cohomology(G):
    for K in subgroup_representatives(G):
        P = permutation_lattice(G, K)
        assert is_flasque(P) and is_coflasque(P)
    assert tate_h0(regular_lattice(G), G.whole).is_trivial


@pytest.mark.parametrize("name", ["c4", "klein4", "s3", "d4", "q8"])
def test_h1_generator_method_matches_all_pairs(name):
    G = catalog_group(name)
    lattices = [augmentation_ideal(G), norm_one_lattice(G), trivial_lattice(G),
                direct_sum(augmentation_ideal(G), norm_one_lattice(G))]
    for M in lattices:
        for H in subgroup_representatives(G):
            assert tate_h1(M, H) == h1_all_pairs(M, H)


def test_restriction_agrees_with_subgroup_cohomology():
    G = catalog_group("a4")
    J = norm_one_lattice(G)
    for H in subgroup_representatives(G):
        R = restrict(J, H)
        for i in (-1, 0, 1):
            assert tate(J, H, i) == tate(R, R.group.whole, i)


def test_norm_matrix():
    G = cyclic_group(3)
    N = norm_matrix(regular_lattice(G), G.whole)
    assert N.tolist() == [[1, 1, 1]] * 3


def test_ext1():
    G = catalog_group("klein4")
    Z, I = trivial_lattice(G), augmentation_ideal(G)
    assert ext1(Z, I) == tate_h1(I, G.whole)
    assert ext1(regular_lattice(G), I).is_trivial
    assert ext1(Z, Z).is_trivial


def test_subgroup_tate_table():
    G = cyclic_group(4)
    table = subgroup_tate_table(sign_lattice(G))
    assert len(table) == 2 * len(subgroup_representatives(G))


def augmentation_triple(G):
    """0 -> I_G -> Z[G] -> Z -> 0."""
    n = G.order
    inject = IntMatrix([[-1] * (n - 1)] + [[int(i == j) for j in range(n - 1)] for i in range(n - 1)], n - 1)
    project = IntMatrix([[1] * n])
    return ExactTriple(augmentation_ideal(G), regular_lattice(G), trivial_lattice(G), inject, project)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_augmentation_sequence_has_class_order_n(n):
    t = augmentation_triple(cyclic_group(n))
    t.check()
    a, b = class_order_by_retraction(t), class_order_by_sections(t)
    assert a.order == b.order == n
    assert section_is_valid(t, a.section, n) and section_is_valid(t, b.section, n)
    assert lifts(t, n) and (n == 1 or not lifts(t, 1))
    assert splits(t) == (n == 1)


def test_split_triple():
    G = catalog_group("s3")
    A, C = augmentation_ideal(G), trivial_lattice(G)
    B = direct_sum(A, C)
    inject = IntMatrix([[int(i == j) for j in range(A.rank)] for i in range(B.rank)], A.rank)
    project = IntMatrix([[0] * A.rank + [1]])
    t = ExactTriple(A, B, C, inject, project)
    t.check()
    assert extension_class_order(t) == 1


def test_exactness_violations():
    G = cyclic_group(2)
    Z = trivial_lattice(G)
    R = regular_lattice(G)
    with pytest.raises(ExactnessError):
        ExactTriple(Z, R, Z, IntMatrix([[1], [1]]), IntMatrix([[1, 1]])).check()
    with pytest.raises(ExactnessError):
        ExactTriple(Z, R, Z, IntMatrix([[1]]), IntMatrix([[1, 1]]))
    with pytest.raises(ExactnessError):
        # image of inject is not the kernel of project
        ExactTriple(Z, R, Z, IntMatrix([[2], [-2]]), IntMatrix([[1, 1]])).check()
