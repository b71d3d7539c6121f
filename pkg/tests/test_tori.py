import pytest

from torusrat.groups import catalog_group, cyclic_group, subgroup_representatives
from torusrat.intmat import IntMatrix
from torusrat.lattices import (LatticeError, dual, permutation_lattice, rank_one_lattice,
                               regular_lattice, sign_lattice, trivial_lattice)
from torusrat.tori import (MultiplicativeTypePresentation, PresentationError, Torus, Verdict,
                           circle_torus, classifying_stack_verdict, dual_torus,
                           is_p_retract_rational, is_retract_rational, multiplicative_type_torus,
                           multiplicative_type_verdict, norm_one_torus, product_torus,
                           quasi_split_torus, split_torus, sylow_verdict, theorem13_torus,
                           torus_bad_primes, verdict_via_sylow)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict(frozenset({2}), True, "class-order")
    with pytest.raises(ValueError):
        Verdict(frozenset(), False, "class-order")
    v = Verdict(frozenset({3}), False, "sylow", {"x": 1})
    assert Verdict.from_dict(v.to_dict()) == v
    assert v.is_p_retract_rational(2) and not v.is_p_retract_rational(3)


def test_torus_rejects_foreign_lattice():
    with pytest.raises(LatticeError):
        Torus(cyclic_group(2), trivial_lattice(cyclic_group(2)))


def test_split_torus():
    T = split_torus(catalog_group("a4"), 2)
    assert T.dimension == 2
    assert torus_bad_primes(T).bad_primes == frozenset()
    assert is_retract_rational(T)


def test_klein_norm_one():
    T = norm_one_torus(catalog_group("klein4"))
    assert T.dimension == 3
    assert torus_bad_primes(T).bad_primes == {2}
    assert not is_p_retract_rational(T, 2)
    assert is_p_retract_rational(T, 3)
    assert not is_retract_rational(T)
    assert not verdict_via_sylow(T, 2) and verdict_via_sylow(T, 3)


def test_cyclic_norm_one():
    assert torus_bad_primes(norm_one_torus(cyclic_group(4))).bad_primes == frozenset()


def test_s3_norm_one_sylow():
    T = norm_one_torus(catalog_group("s3"))
    assert verdict_via_sylow(T, 2) and verdict_via_sylow(T, 3)
    assert verdict_via_sylow(T, 2, restrict_first=True)


def test_norm_one_dimensions():
    C2 = cyclic_group(2)
    assert norm_one_torus(C2).character_lattice.same_action(sign_lattice(C2))
    assert norm_one_torus(cyclic_group(1)).dimension == 0


def test_primes_not_dividing_order_are_good():
    T = norm_one_torus(catalog_group("q8"))
    for p in (3, 5, 7, 11, 13):
        assert is_p_retract_rational(T, p)


@pytest.mark.parametrize("primes, order, dim", [((), 1, 0), ((2,), 4, 3), ((3,), 9, 8)])
def test_theorem13_family(primes, order, dim):
    T = theorem13_torus(primes)
    assert T.group.order == order and T.dimension == dim
    assert torus_bad_primes(T).bad_primes == frozenset(primes)


def test_circle_torus():
    T = circle_torus()
    assert T.dimension == 1
    assert is_retract_rational(T)
    assert dual_torus(T).character_lattice.same_action(T.character_lattice)


def test_dual_torus():
    T = norm_one_torus(catalog_group("d4"))
    D = dual_torus(T)
    assert dual_torus(D).character_lattice.same_action(T.character_lattice)
    assert D.label.endswith("'") and dual_torus(D).label == T.label
    G = catalog_group("s3")
    for H in subgroup_representatives(G):
        Q = quasi_split_torus(G, H)
        assert dual_torus(Q).character_lattice.is_permutation()
        assert is_retract_rational(Q)


def test_classifying_stack():
    assert classifying_stack_verdict(split_torus(cyclic_group(3))).retract_rational
    C = circle_torus()
    assert classifying_stack_verdict(C).bad_primes == torus_bad_primes(dual_torus(C)).bad_primes
    T = norm_one_torus(catalog_group("klein4"))
    assert classifying_stack_verdict(T).bad_primes == torus_bad_primes(dual_torus(T)).bad_primes
    assert classifying_stack_verdict(dual_torus(T)).bad_primes == {2}


def test_product_torus():
    G = catalog_group("klein4")
    T = product_torus(norm_one_torus(G), split_torus(G))
    assert T.dimension == 4 and torus_bad_primes(T).bad_primes == {2}


def test_sylow_verdict_routes():
    T = norm_one_torus(catalog_group("a4"))
    assert sylow_verdict(T).bad_primes == sylow_verdict(T, restrict_first=True).bad_primes == {2}


def test_multiplicative_type_mu_n():
    G = cyclic_group(1)
    pres = MultiplicativeTypePresentation(G, trivial_lattice(G), IntMatrix([[5]]))
    T = multiplicative_type_torus(pres)
    assert T.dimension == 1
    assert multiplicative_type_verdict(pres).retract_rational


def test_multiplicative_type_gm():
    G = cyclic_group(1)
    pres = MultiplicativeTypePresentation(G, trivial_lattice(G), IntMatrix([], 1))
    T = multiplicative_type_torus(pres)
    assert T.dimension == 0
    assert multiplicative_type_verdict(pres).retract_rational


def test_multiplicative_type_inverted_z3():
    G = cyclic_group(2)
    pres = MultiplicativeTypePresentation(G, sign_lattice(G), IntMatrix([[3]]))
    T = multiplicative_type_torus(pres)
    assert T.dimension == 2
    assert multiplicative_type_verdict(pres).retract_rational


def test_multiplicative_type_of_a_torus_is_rational():
    # relations spanning nothing: G is the torus with characters Z[G], BG is then rational
    G = catalog_group("klein4")
    pres = MultiplicativeTypePresentation(G, regular_lattice(G), IntMatrix([], 4))
    assert multiplicative_type_verdict(pres).retract_rational


def test_multiplicative_type_rejects_unstable_relations():
    G = cyclic_group(2)
    pres = MultiplicativeTypePresentation(G, regular_lattice(G), IntMatrix([[1, 0]]))
    with pytest.raises(PresentationError):
        multiplicative_type_torus(pres)
    with pytest.raises(PresentationError):
        MultiplicativeTypePresentation(G, regular_lattice(G), IntMatrix([[1, 0, 0]]))
