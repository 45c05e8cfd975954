import pytest
from hypothesis import given
from hypothesis import strategies as st

from genbound.perm import (
    compose,
    cycle_lengths,
    identity_perm,
    inverse,
    perm_order,
    perm_power,
    validate_perm,
)

perms = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(n)))
).map(tuple)


def test_validate_rejects_non_bijection():
    with pytest.raises(ValueError, match="not a bijection"):
        validate_perm([0, 0, 1])


def test_compose_convention_right_factor_acts_first():
    # (0 1) after (1 2): 0 -> 1, 1 -> 2, 2 -> 0
    p = (1, 0, 2)
    q = (0, 2, 1)
    assert compose(p, q) == (1, 2, 0)
    # cross-check against an explicit image-table composition
    table = tuple(p[q[x]] for x in range(3))
    assert compose(p, q) == table


def test_compose_identity_and_inverse():
    p = (2, 0, 3, 1)
    e = identity_perm(4)
    assert compose(e, p) == p
    assert compose(p, e) == p
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e


def test_compose_degree_mismatch():
    with pytest.raises(ValueError, match="degree mismatch"):
        compose((1, 0), (1, 2, 0))


@given(perms, st.data())
def test_compose_associative(p, data):
    n = len(p)
    q = tuple(data.draw(st.permutations(list(range(n)))))
    r = tuple(data.draw(st.permutations(list(range(n)))))
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms)
def test_inverse_is_two_sided(p):
    e = identity_perm(len(p))
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e


@given(perms)
def test_order_matches_iterated_powers(p):
    n = perm_order(p)
    assert perm_power(p, n) == identity_perm(len(p))
    for k in range(1, n):
        assert perm_power(p, k) != identity_perm(len(p))


def test_cycle_lengths():
    assert sorted(cycle_lengths((1, 0, 3, 4, 2))) == [2, 3]
    assert cycle_lengths(identity_perm(3)) == [1, 1, 1]


def test_negative_power():
    p = (1, 2, 3, 0)
    assert perm_power(p, -1) == inverse(p)
    assert perm_power(p, -3) == perm_power(inverse(p), 3)
