import pytest

from genbound.groups import PermGroup, cyclic_group
from genbound.subgroups import (
    SubgroupHandle,
    abelian_invariants,
    centralizer_order_transitive,
    d_min_generators,
    derived_subgroup,
    largest_normal_p_subgroup,
    orbits,
    quotient_group,
    subgroup_from_generators,
    sylow_subgroup,
)

from helpers import (
    affine_group,
    alternating_group_4,
    alternating_group_5,
    brute_centralizer_order,
    brute_derived_subgroup,
    brute_largest_normal_p_subgroup,
    cyclic_perm_group,
    dihedral_group,
    klein_group,
    quaternion_group,
    regular_perm_group,
    symmetric_group,
)


# -- subgroup handles ---------------------------------------------------------


def test_handle_checks_lagrange_and_closure():
    s3 = symmetric_group(3)
    with pytest.raises(ValueError, match="Lagrange|closed|identity"):
        SubgroupHandle(s3, (s3.identity, (1, 2, 0), (1, 0, 2), (0, 2, 1)))


def test_subgroup_from_generators():
    s4 = symmetric_group(4)
    h = subgroup_from_generators(s4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert h.order == 4
    assert h.is_normal()
    assert s4.order % h.order == 0


# -- derived subgroups --------------------------------------------------------


def test_derived_subgroup_abelian_is_trivial():
    c6 = cyclic_group(6)
    assert derived_subgroup(c6).order == 1


def test_derived_subgroup_sym3():
    s3 = symmetric_group(3)
    d = derived_subgroup(s3)
    assert d.order == 3
    assert set(d.elements) == brute_derived_subgroup(s3)


@pytest.mark.parametrize(
    "group_factory",
    [symmetric_group, lambda n=4: alternating_group_4(), lambda n=0: dihedral_group(4)],
    ids=["sym4", "alt4", "dih4"],
)
def test_derived_subgroup_matches_all_pairs_oracle(group_factory):
    g = group_factory(4) if group_factory is symmetric_group else group_factory()
    assert set(derived_subgroup(g).elements) == brute_derived_subgroup(g)


def test_derived_subgroup_is_normal_and_quotient_abelian():
    for g in [symmetric_group(4), dihedral_group(6), quaternion_group()]:
        d = derived_subgroup(g)
        assert d.is_normal()
        q, _ = quotient_group(g, d)
        assert q.is_abelian()


def test_derived_subgroup_of_coprime_family_group_is_translations():
    # the order-21 witness group on F_7: derived subgroup = the 7 translations
    g = affine_group(7, 2)  # 2 has multiplicative order 3 mod 7
    assert g.order == 21
    d = derived_subgroup(g)
    assert d.order == 7
    assert set(d.elements) == brute_derived_subgroup(g)


# -- quotients ----------------------------------------------------------------


def test_quotient_sym3_by_alt3():
    s3 = symmetric_group(3)
    q, proj = quotient_group(s3, derived_subgroup(s3))
    assert q.order == 2
    assert abelian_invariants(q) == [2]
    assert len(set(proj.values())) == 2


def test_quotient_rejects_non_normal():
    s3 = symmetric_group(3)
    h = subgroup_from_generators(s3, [(1, 0, 2)])  # a point stabilizer
    with pytest.raises(ValueError, match="not normal"):
        quotient_group(s3, h)


# -- abelian invariants -------------------------------------------------------


def test_abelian_invariants_examples():
    assert abelian_invariants(cyclic_group(6)) == [6]
    assert abelian_invariants(klein_group()) == [2, 2]
    assert abelian_invariants(cyclic_group(1)) == []
    assert abelian_invariants(cyclic_group(12)) == [12]


def test_abelian_invariants_divisibility_and_product():
    from genbound.groups import ProductGroup

    cases = [
        ([2, 4], [2, 4]),
        ([2, 2, 2], [2, 2, 2]),
        ([6, 4], [2, 12]),
        ([3, 9], [3, 9]),
        ([2, 3], [6]),
        ([4, 6, 10], [2, 2, 60]),
    ]
    for orders, expected in cases:
        g = ProductGroup([cyclic_group(n) for n in orders])
        inv = abelian_invariants(g)
        assert inv == expected
        prod = 1
        for d in inv:
            prod *= d
        assert prod == g.order
        assert all(a % b == 0 for a, b in zip(inv[1:], inv))


def test_abelian_invariants_rejects_nonabelian():
    with pytest.raises(ValueError, match="abelian"):
        abelian_invariants(symmetric_group(3))


# -- minimal generators -------------------------------------------------------


def test_d_min_cyclic_is_one():
    for n in (2, 5, 12):
        result = d_min_generators(cyclic_perm_group(n))
        assert result.value == 1 and result.exact


def test_d_min_klein_is_two():
    result = d_min_generators(klein_group())
    assert result.value == 2 and result.exact
    assert result.witness is not None


def test_d_min_witness_generates():
    from genbound.groups import closure

    g = symmetric_group(4)
    result = d_min_generators(g)
    assert result.value == 2
    assert len(closure(list(result.witness), g.mul, g.identity)) == 24


def test_d_min_iff_element_of_full_order():
    for g in [cyclic_group(8), klein_group(), symmetric_group(3)]:
        has_full = any(g.element_order(x) == g.order for x in g.elements)
        assert (d_min_generators(g).value == 1) == has_full


def test_d_min_budget_reports_lower_bound():
    from genbound.groups import ProductGroup

    g = ProductGroup([cyclic_group(2)] * 3)  # needs 3 generators
    result = d_min_generators(g, budget=10)
    assert not result.exact
    assert result.value == 2  # noncyclic: proven lower bound
    assert result.witness is None


def test_d_min_elementary_abelian_rank_three():
    from genbound.groups import ProductGroup

    g = ProductGroup([cyclic_group(2)] * 3)
    assert d_min_generators(g).value == 3


# -- Sylow subgroups and normal cores ----------------------------------------


def test_sylow_orders():
    s4 = symmetric_group(4)
    assert sylow_subgroup(s4, 2).order == 8
    assert sylow_subgroup(s4, 3).order == 3
    a5 = alternating_group_5()
    assert sylow_subgroup(a5, 2).order == 4
    assert sylow_subgroup(a5, 5).order == 5


def test_largest_normal_p_subgroup_sym4():
    o2 = largest_normal_p_subgroup(symmetric_group(4), 2)
    assert o2.order == 4
    double_transpositions = {(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)}
    assert set(o2.elements) == double_transpositions


def test_largest_normal_p_subgroup_simple_group_trivial():
    a5 = alternating_group_5()
    for p in (2, 3, 5):
        assert largest_normal_p_subgroup(a5, p).order == 1


def test_largest_normal_p_subgroup_whole_group():
    c3 = cyclic_perm_group(3)
    assert largest_normal_p_subgroup(c3, 3).order == 3


def test_largest_normal_p_subgroup_rejects_composite():
    with pytest.raises(ValueError, match="not prime"):
        largest_normal_p_subgroup(symmetric_group(3), 4)


@pytest.mark.parametrize(
    "factory",
    [
        lambda: cyclic_group(6),
        lambda: symmetric_group(3),
        lambda: klein_group(),
        lambda: dihedral_group(4),
        lambda: quaternion_group(),
        lambda: alternating_group_4(),
        lambda: symmetric_group(4),
        lambda: affine_group(7, 2),
        lambda: dihedral_group(6),
        lambda: cyclic_group(12),
    ],
    ids=["c6", "sym3", "klein", "dih4", "q8", "alt4", "sym4", "aff7-21", "dih6", "c12"],
)
def test_normal_core_matches_lattice_oracle(factory):
    g = factory()
    primes = sorted({p for p, _ in _factorize(g.order)})
    for p in primes:
        computed = set(largest_normal_p_subgroup(g, p).elements)
        assert computed == set(brute_largest_normal_p_subgroup(g, p))


def _factorize(n):
    from genbound.numtheory import factorize

    return factorize(n)


# -- orbits and centralizers --------------------------------------------------


def test_orbits_transitive_and_trivial():
    assert orbits(symmetric_group(4)) == [[0, 1, 2, 3]]
    assert orbits(PermGroup(4, [(0, 1, 2, 3)])) == [[0], [1], [2], [3]]


def test_orbits_blocks():
    # one 3-cycle and an independent 2-cycle
    g = PermGroup(5, [(1, 2, 0, 4, 3)])
    assert orbits(g) == [[0, 1, 2], [3, 4]]


def test_centralizer_regular_abelian_is_itself():
    assert centralizer_order_transitive(cyclic_perm_group(3)) == 3
    assert centralizer_order_transitive(klein_group()) == 4


def test_centralizer_affine_examples():
    assert centralizer_order_transitive(affine_group(7, 3)) == 1
    assert centralizer_order_transitive(symmetric_group(4)) == 1


def test_centralizer_rejects_intransitive():
    g = PermGroup(4, [(1, 0, 2, 3)])
    with pytest.raises(ValueError, match="not transitive"):
        centralizer_order_transitive(g)


@pytest.mark.parametrize(
    "factory",
    [
        lambda: cyclic_perm_group(3),
        lambda: symmetric_group(3),
        lambda: cyclic_perm_group(4),
        lambda: klein_group(),
        lambda: dihedral_group(4),
        lambda: alternating_group_4(),
        lambda: symmetric_group(4),
        lambda: cyclic_perm_group(5),
        lambda: dihedral_group(5),
        lambda: affine_group(5, 2),
        lambda: cyclic_perm_group(7),
        lambda: affine_group(7, 3),
        lambda: affine_group(7, 2),
        lambda: cyclic_perm_group(8),
        lambda: regular_perm_group(quaternion_group()),
    ],
    ids=[
        "c3", "sym3", "c4", "klein", "dih4", "alt4", "sym4",
        "c5", "dih5", "aff5", "c7", "aff7", "aff7-21", "c8", "q8-regular",
    ],
)
def test_centralizer_matches_brute_force(factory):
    g = factory()
    assert centralizer_order_transitive(g) == brute_centralizer_order(g)
