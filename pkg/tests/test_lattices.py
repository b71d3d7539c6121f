import pytest

from torusrat.groups import (alternating_group, catalog, catalog_group, cyclic_group,
                             subgroup_representatives, sylow)
from torusrat.intmat import IntMatrix
from torusrat.lattices import (GLattice, LatticeError, augmentation_ideal, direct_sum, dual,
                               find_isomorphism, fixed_sublattice, from_generator_actions,
                               hom_lattice, induced_action, intertwiners, is_equivariant,
                               lattice_from_dict, norm_one_lattice, permutation_lattice,
                               quotient_lattice, rank_one_lattice, regular_lattice, restrict, sign_lattice,
                               trivial_lattice, validate, zero_lattice)


def standard_lattices(G):
    out = [trivial_lattice(G), augmentation_ideal(G), norm_one_lattice(G), regular_lattice(G)]
    out += [permutation_lattice(G, H) for H in subgroup_representatives(G)]
    try:
        out.append(sign_lattice(G))
    except LatticeError:
        pass
    return out


@pytest.mark.parametrize("G", catalog(8), ids=lambda G: G.name)
def test_standard_lattices_validate(G):
    for M in standard_lattices(G):
        assert validate(M).ok, M.name


def test_augmentation_ideal_of_c3():
    M = augmentation_ideal(cyclic_group(3))
    g = M.group.generator_indices[0]
    assert M.action[g].tolist() == [[-1, -1], [1, 0]]


def test_ranks():
    G = alternating_group(4)
    assert augmentation_ideal(G).rank == 11
    assert norm_one_lattice(G).rank == 11
    assert permutation_lattice(G, sylow(G, 3)).rank == 4
    assert norm_one_lattice(cyclic_group(1)).rank == 0


def test_norm_one_is_dual_of_augmentation():
    G = catalog_group("d4")
    J, I = norm_one_lattice(G), augmentation_ideal(G)
    assert J.same_action(dual(I))


@pytest.mark.parametrize("G", catalog(8), ids=lambda G: G.name)
def test_dual_is_involution_and_commutes_with_sum(G):
    I, Z = augmentation_ideal(G), trivial_lattice(G)
    assert dual(dual(I)).same_action(I)
    assert dual(direct_sum(I, Z)).same_action(direct_sum(dual(I), dual(Z)))


def test_sign_lattice_self_dual():
    s = sign_lattice(cyclic_group(2))
    assert dual(s).same_action(s)


def test_hom_into_trivial_is_dual():
    G = catalog_group("s3")
    for M in standard_lattices(G):
        H = hom_lattice(M, trivial_lattice(G))
        # the flattened 1 x n matrix units are the dual basis: the identity is an isomorphism
        assert is_equivariant(H, dual(M), IntMatrix.identity(M.rank))


def test_hom_rank_and_validity():
    G = cyclic_group(3)
    H = hom_lattice(augmentation_ideal(G), regular_lattice(G))
    assert H.rank == 6 and validate(H).ok


def test_validation_catches_bad_action():
    G = cyclic_group(3)
    with pytest.raises(LatticeError):
        sign_lattice(G)
    bad = rank_one_lattice(G, [-1])
    rep = validate(bad)
    assert not rep.ok and rep.kind == "homomorphism"
    nonunit = from_generator_actions(cyclic_group(2), [[[2]]])
    assert validate(nonunit).kind in ("unimodularity", "homomorphism")
    with pytest.raises(LatticeError):
        lattice_from_dict(G, {"rank": 1, "generator_actions": []})


def test_fixed_points():
    G = catalog_group("klein4")
    assert fixed_sublattice(regular_lattice(G), G.whole).tolist() == [[1, 1, 1, 1]]
    assert fixed_sublattice(augmentation_ideal(G), G.whole).nrows == 0
    assert fixed_sublattice(norm_one_lattice(G), G.whole).nrows == 0
    assert fixed_sublattice(trivial_lattice(G, 2), G.whole).nrows == 2


def test_restriction_of_regular_lattice():
    G = alternating_group(4)
    H = sylow(G, 2)
    R = restrict(regular_lattice(G), H)
    assert R.group.order == 4 and validate(R).ok
    assert fixed_sublattice(R, R.group.whole).nrows == 3


def test_quotient_by_norm_is_norm_one_lattice():
    G = cyclic_group(4)
    Z = regular_lattice(G)
    Q, proj = quotient_lattice(Z, IntMatrix([[1, 1, 1, 1]]))
    assert Q.rank == 3 and validate(Q).ok
    assert is_equivariant(Z, Q, proj)
    assert find_isomorphism(Q, norm_one_lattice(G)) is not None
    with pytest.raises(LatticeError):
        quotient_lattice(Z, IntMatrix([[2, 2, 2, 2]]))


def test_induced_action_on_augmentation_ideal():
    G = cyclic_group(3)
    Z = regular_lattice(G)
    basis = IntMatrix([[1, 0, -1], [0, 1, -1]])
    I = induced_action(Z, basis)
    assert I.rank == 2 and validate(I).ok
    with pytest.raises(LatticeError):
        induced_action(Z, IntMatrix([[1, 0, 0]]))


def test_intertwiners_and_isomorphism_search():
    G = cyclic_group(2)
    s, Z = sign_lattice(G), trivial_lattice(G)
    assert intertwiners(s, Z).nrows == 0
    assert intertwiners(regular_lattice(G), Z).nrows == 1
    assert find_isomorphism(s, Z) is None
    assert find_isomorphism(s, s) is not None


def test_permutation_structure():
    G = catalog_group("s3")
    P = direct_sum(*[permutation_lattice(G, H) for H in subgroup_representatives(G)])
    assert P.is_permutation()
    assert [H.order for H, _ in P.permutation.blocks] == [6, 3, 2, 1]
    assert not direct_sum(P, augmentation_ideal(G)).is_permutation()
    assert zero_lattice(G).rank == 0


def test_round_trip_dict():
    G = catalog_group("q8")
    M = norm_one_lattice(G)
    N = lattice_from_dict(G, M.to_dict())
    assert N.same_action(M)
