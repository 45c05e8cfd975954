import pytest

from genbound.groups import (
    AffineSemidirect,
    CayleyGroup,
    ClosureOverflowError,
    GeneratedGroup,
    MatrixGroup,
    PermGroup,
    ProductGroup,
    closure,
    cyclic_group,
    power_group,
)
from helpers import (
    alternating_group_5,
    perm_parity,
    quaternion_group,
    sym_elements,
    symmetric_group,
)


def test_closure_full_symmetric_group():
    # <5-cycle, transposition> is all of Sym(5)
    s5 = PermGroup(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)])
    assert s5.order == 120


def test_closure_single_involution():
    g = PermGroup(4, [(1, 0, 3, 2)])
    assert g.order == 2


def test_closure_alternating_group_against_even_perm_oracle():
    a5 = alternating_group_5()
    evens = {p for p in sym_elements(5) if perm_parity(p) == 0}
    assert set(a5.elements) == evens
    assert a5.order == 60


def test_closure_is_idempotent():
    a5 = alternating_group_5()
    again = closure(list(a5.elements), a5.mul, a5.identity)
    assert set(again) == set(a5.elements)


def test_closure_divides_degree_factorial():
    import math

    for gens, degree in [
        ([(1, 2, 0, 3)], 4),
        ([(1, 0, 2, 3), (0, 2, 1, 3)], 4),
        ([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], 5),
    ]:
        g = PermGroup(degree, gens)
        assert math.factorial(degree) % g.order == 0


def test_closure_overflow_is_an_error_not_truncation():
    s5 = PermGroup(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], element_cap=50)
    with pytest.raises(ClosureOverflowError, match="closure overflow"):
        s5.elements


def test_cayley_group_identity_and_inverse():
    c6 = cyclic_group(6)
    assert c6.order == 6
    assert c6.identity == 0
    assert c6.mul(2, 5) == 1
    assert c6.inv(2) == 4
    assert c6.element_order(1) == 6


def test_cayley_rejects_bad_tables():
    with pytest.raises(ValueError, match="identity"):
        CayleyGroup([[0, 0], [1, 1]])
    with pytest.raises(ValueError, match="identity"):
        CayleyGroup([[1, 1], [1, 1]])
    with pytest.raises(ValueError, match="inverse|bijection"):
        CayleyGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_cayley_identity_need_not_be_index_zero():
    c2 = CayleyGroup([[1, 0], [0, 1]])
    assert c2.identity == 1
    assert c2.order == 2


def test_matrix_group_quaternion():
    q8 = quaternion_group()
    assert q8.order == 8
    i = q8.generators[0]
    assert q8.element_order(i) == 4
    assert q8.power(i, 2) == q8.power(q8.generators[1], 2)  # common -1


def test_matrix_group_rejects_singular_generator():
    with pytest.raises(ValueError, match="singular"):
        MatrixGroup(3, 2, [((1, 1), (1, 1))])


def test_affine_semidirect_order_and_multiplication_rule():
    # holomorph of C_7: translations extended by the full unit group
    units = MatrixGroup(7, 1, [((3,),)])
    h = AffineSemidirect(7, 1, units, action=lambda a: a)
    assert units.order == 6
    assert h.order == 42
    v1, a1 = ((2,), ((3,),))
    v2, a2 = ((4,), ((2,),))
    prod = h.mul((v1, a1), (v2, a2))
    assert prod == (((2 + 3 * 4) % 7,), ((6,),))
    x = ((5,), ((4,),))
    assert h.mul(x, h.inv(x)) == h.identity
    assert h.mul(h.inv(x), x) == h.identity


def test_affine_semidirect_enumeration_matches_generator_closure():
    units = MatrixGroup(5, 1, [((2,),)])
    h = AffineSemidirect(5, 1, units, action=lambda a: a)
    enumerated = set(h.elements)
    generated = set(closure(list(h.generators), h.mul, h.identity))
    assert enumerated == generated
    assert len(enumerated) == 20


def test_affine_semidirect_respects_element_cap():
    units = MatrixGroup(7, 1, [((3,),)])
    h = AffineSemidirect(7, 2, units, action=lambda a: ((a[0][0], 0), (0, a[0][0])), element_cap=100)
    with pytest.raises(ClosureOverflowError):
        h.elements
    assert h.order == 294  # order is known without enumeration


def test_product_group_and_power():
    s3 = symmetric_group(3)
    sq = power_group(s3, 2)
    assert sq.order == 36
    assert len(sq.elements) == 36
    a = (s3.generators[0], s3.identity)
    b = (s3.identity, s3.generators[1])
    assert sq.mul(a, b) == (s3.generators[0], s3.generators[1])
    assert sq.inv(sq.mul(a, b)) == sq.mul(sq.inv(b), sq.inv(a))


def test_generated_group_never_enumerates_ambient():
    s3 = symmetric_group(3)
    wide = ProductGroup([s3] * 12)  # ~2e9 elements; must stay lazy
    diag = tuple(s3.generators[1] for _ in range(12))  # diagonal transposition
    sub = GeneratedGroup(wide, [diag])
    assert sub.order == 2


def test_to_cayley_preserves_structure():
    s3 = symmetric_group(3)
    table, index = s3.to_cayley()
    assert table.order == 6
    for a in s3.elements:
        for b in s3.elements:
            assert table.mul(index[a], index[b]) == index[s3.mul(a, b)]


def test_conjugacy_classes_partition():
    s4 = symmetric_group(4)
    classes = s4.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 3, 6, 6, 8]
    assert sum(len(c) for c in classes) == 24
