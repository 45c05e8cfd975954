"""Desk-scale number theory: trial-division primality, primes in arithmetic
progressions, CRT, primitive roots, and common subset sums with
decomposition recovery.
"""

from __future__ import annotations

from math import gcd, prod
from typing import Sequence


class SearchCapError(RuntimeError):
    """A bounded numeric search hit its cap without an answer."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            e += 1
            n //= d
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def largest_prime_factor(n: int) -> int:
    factors = factorize(n)
    if not factors:
        raise ValueError("1 has no prime factors")
    return factors[-1][0]


def first_odd_primes(n: int) -> list[int]:
    out = []
    candidate = 3
    while len(out) < n:
        if is_prime(candidate):
            out.append(candidate)
        candidate += 2
    return out


def multiplicative_order(a: int, modulus: int) -> int:
    if gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit mod {modulus}")
    order = 1
    x = a % modulus
    while x != 1:
        x = (x * a) % modulus
        order += 1
    return order


def least_primitive_root(p: int) -> int:
    """Smallest generator of the unit group mod a prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    prime_divisors = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divisors):
            return g
    raise AssertionError("no primitive root found (unreachable for prime p)")


def unit_of_order(p: int, order: int) -> int:
    """A unit of exact multiplicative order `order` mod prime p,
    chosen as g^((p-1)/order) for the least primitive root g."""
    if (p - 1) % order:
        raise ValueError(f"no unit of order {order} mod {p}")
    g = least_primitive_root(p)
    u = pow(g, (p - 1) // order, p)
    assert multiplicative_order(u, p) == order
    return u


def dirichlet_prime(a: int, modulus: int, cap: int = 10**6) -> int:
    """Least prime congruent to a mod modulus, scanning up to cap."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, modulus) != 1:
        raise ValueError(f"gcd({a}, {modulus}) != 1: progression holds no primes")
    x = a % modulus
    while x < 2:
        x += modulus
    while x <= cap:
        if is_prime(x):
            return x
        x += modulus
    raise SearchCapError(
        f"no prime = {a} (mod {modulus}) found up to {cap}"
    )


def primes_in_progression(residue: int, modulus: int, bound: int) -> list[int]:
    """All primes p <= bound with p = residue (mod modulus)."""
    return [
        p
        for p in range(2, bound + 1)
        if p % modulus == residue % modulus and is_prime(p)
    ]


def crt_solve(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Unique solution of the congruence system in {1, ..., prod(moduli)}."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    if not moduli:
        raise ValueError("empty congruence system")
    for i, a in enumerate(moduli):
        if a < 1:
            raise ValueError("moduli must be positive")
        for b in moduli[i + 1 :]:
            if gcd(a, b) != 1:
                raise ValueError(f"moduli {a} and {b} are not coprime")
    total = prod(moduli)
    x = 0
    for r, m in zip(residues, moduli):
        partial = total // m
        x += r * partial * pow(partial, -1, m)
    x %= total
    if x == 0:
        x = total
    for r, m in zip(residues, moduli):
        assert x % m == r % m
    return x


def _reachable_sums(values: Sequence[int], cap: int) -> list[int]:
    """Prefix bitmasks of sums of distinct elements, bounded by cap.

    prefix[i] has bit s set iff s is a sum of distinct elements among the
    first i values; bit 0 (the empty sum) is always set.
    """
    mask = (1 << (cap + 1)) - 1
    bits = 1
    prefixes = [bits]
    for v in values:
        bits = (bits | (bits << v)) & mask
        prefixes.append(bits)
    return prefixes


def _recover_decomposition(values: Sequence[int], prefixes: Sequence[int], s: int) -> list[int]:
    used = []
    for i in range(len(values), 0, -1):
        if (prefixes[i - 1] >> s) & 1:
            continue
        used.append(values[i - 1])
        s -= values[i - 1]
    assert s == 0
    return sorted(used)


def common_subset_sum(
    sets: Sequence[Sequence[int]], cap: int
) -> tuple[int, list[list[int]]] | None:
    """Least positive k that is a sum of distinct elements of every set.

    Sets must be pairwise disjoint sets of positive integers. Returns
    (k, one decomposition per set), or None if no such k <= cap exists
    (cap exhaustion is an outcome, not an error). Dynamic programming over
    achievable sums, with deterministic decomposition recovery.
    """
    if not sets:
        raise ValueError("need at least one set")
    ordered = [sorted(set(s)) for s in sets]
    for values in ordered:
        if any(v < 1 for v in values):
            raise ValueError("set elements must be positive")
    for i, a in enumerate(ordered):
        sa = set(a)
        for b in ordered[i + 1 :]:
            overlap = sa & set(b)
            if overlap:
                raise ValueError(f"sets are not disjoint: share {sorted(overlap)}")
    all_prefixes = [_reachable_sums(values, cap) for values in ordered]
    common = all_prefixes[0][-1]
    for prefixes in all_prefixes[1:]:
        common &= prefixes[-1]
    common &= ~1  # empty sum does not count
    if common == 0:
        return None
    k = (common & -common).bit_length() - 1
    decomps = [
        _recover_decomposition(values, prefixes, k)
        for values, prefixes in zip(ordered, all_prefixes)
    ]
    return k, decomps
