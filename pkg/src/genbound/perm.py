"""Permutation arithmetic on 0-based points.

A permutation of degree n is an image tuple p with p[i] = image of point i.
The composition convention is fixed once and used everywhere:

    compose(p, q)(x) = p(q(x))

i.e. q acts first.
"""

from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence


def validate_perm(images: Iterable[int]) -> tuple[int, ...]:
    """Return images as a tuple, raising if it is not a bijection."""
    p = tuple(images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a bijection on 0..{len(p) - 1}: {list(p)!r}")
    return p


def identity_perm(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Product p∘q: apply q first, then p."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_power(p: Sequence[int], n: int) -> tuple[int, ...]:
    """p composed with itself n times (n may be negative)."""
    if n < 0:
        return perm_power(inverse(p), -n)
    result = identity_perm(len(p))
    base = tuple(p)
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def cycle_lengths(p: Sequence[int]) -> list[int]:
    """Lengths of the cycles of p, including fixed points."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        lengths.append(length)
    return lengths


def perm_order(p: Sequence[int]) -> int:
    return lcm(*cycle_lengths(p)) if len(p) else 1


def moved_points(p: Sequence[int]) -> list[int]:
    return [i for i, x in enumerate(p) if x != i]
