"""Shared corpus groups and independent oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms: normal
subgroups come from conjugacy-class joins, centralizers from brute force
over the full symmetric group, irreducibility from enumerating all
subspaces, and subset sums from explicit powerset search.
"""

from __future__ import annotations

import itertools

from genbound.groups import FiniteGroup, MatrixGroup, PermGroup, closure
from genbound.perm import compose


# -- corpus groups -----------------------------------------------------------


def cyclic_perm_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple((x + 1) % n for x in range(n))])


def symmetric_group(n: int) -> PermGroup:
    gens = [tuple((x + 1) % n for x in range(n))]
    if n >= 2:
        gens.append((1, 0) + tuple(range(2, n)))
    return PermGroup(n, gens)


def alternating_group_5() -> PermGroup:
    return PermGroup(5, [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])


def alternating_group_4() -> PermGroup:
    return PermGroup(4, [(1, 2, 0, 3), (0, 2, 3, 1)])


def klein_group() -> PermGroup:
    return PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n on n points."""
    rotation = tuple((x + 1) % n for x in range(n))
    reflection = tuple((-x) % n for x in range(n))
    return PermGroup(n, [rotation, reflection])


def quaternion_group() -> MatrixGroup:
    """Quaternion group of order 8 as 2x2 matrices over F_3."""
    return MatrixGroup(3, 2, [((0, 2), (1, 0)), ((1, 1), (1, 2))])


def affine_group(p: int, unit: int) -> PermGroup:
    """<x+1, unit*x> acting on F_p."""
    translation = tuple((x + 1) % p for x in range(p))
    multiplication = tuple((unit * x) % p for x in range(p))
    return PermGroup(p, [translation, multiplication])


def regular_perm_group(G: FiniteGroup) -> PermGroup:
    """The left regular permutation action of G on itself."""
    elems = G.elements
    index = {e: i for i, e in enumerate(elems)}
    gens = [
        tuple(index[G.mul(g, x)] for x in elems) for g in (G.generators or elems)
    ]
    return PermGroup(len(elems), gens)


# -- oracles -----------------------------------------------------------------


def sym_elements(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(n))]


def perm_parity(p) -> int:
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inversions % 2


def brute_centralizer_order(G: PermGroup) -> int:
    """Centralizer order in Sym(degree) by checking every permutation."""
    count = 0
    for sigma in itertools.permutations(range(G.degree)):
        sigma = tuple(sigma)
        if all(compose(sigma, g) == compose(g, sigma) for g in G.generators):
            count += 1
    return count


def brute_derived_subgroup(G: FiniteGroup) -> frozenset:
    """Closure of all pairwise commutators; independent of normal closures."""
    elems = G.elements
    commutators = {G.commutator(a, b) for a in elems for b in elems}
    return frozenset(closure(sorted(commutators), G.mul, G.identity, G.element_cap))


def all_normal_subgroups(G: FiniteGroup) -> set[frozenset]:
    """Every normal subgroup, as joins of normal closures of single elements.

    A normal subgroup is the join of the normal closures of its elements,
    and joins of normal closures are normal, so closing the atoms under
    pairwise joins yields the complete set.
    """
    elems = G.elements
    atoms = set()
    for x in elems:
        conj_class = {G.conjugate(x, g) for g in elems}
        atoms.add(frozenset(closure(sorted(conj_class), G.mul, G.identity, G.element_cap)))
    lattice = {frozenset([G.identity])} | atoms
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(sorted(lattice, key=sorted), 2):
            if a <= b or b <= a:
                continue
            join = frozenset(
                closure(sorted(a | b), G.mul, G.identity, G.element_cap)
            )
            if join not in lattice:
                lattice.add(join)
                changed = True
    return lattice


def brute_largest_normal_p_subgroup(G: FiniteGroup, p: int) -> frozenset:
    """O_p via the normal-subgroup lattice: the unique maximal p-power one."""
    p_normals = [
        n for n in all_normal_subgroups(G) if _is_p_power(len(n), p)
    ]
    best = max(p_normals, key=len)
    for n in p_normals:
        assert n <= best, "normal p-subgroups do not have a unique maximum"
    return best


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def all_subspaces(p: int, dim: int) -> list[tuple]:
    """All subspaces of F_p^dim, each as a sorted tuple of its vectors.

    Grown incrementally: a closed subspace S extends by a vector v to
    {s + c*v for s in S, 0 <= c < p}, which is again closed.
    """
    vectors = list(itertools.product(range(p), repeat=dim))
    zero = frozenset([(0,) * dim])
    seen = {zero}
    frontier = [zero]
    while frontier:
        space = frontier.pop()
        for v in vectors:
            if v in space:
                continue
            bigger = set()
            for c in range(p):
                cv = tuple((c * x) % p for x in v)
                for s in space:
                    bigger.add(tuple((a + b) % p for a, b in zip(s, cv)))
            bigger = frozenset(bigger)
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(tuple(sorted(s)) for s in seen)


def brute_is_irreducible(p: int, dim: int, matrices) -> bool:
    from genbound.linalg import mat_vec

    zero = (0,) * dim
    full = p**dim
    for subspace in all_subspaces(p, dim):
        size = len(subspace)
        if size in (1, full):
            continue
        points = set(subspace)
        if all(mat_vec(m, v, p) in points for m in matrices for v in subspace):
            return False
    return True


def brute_common_subset_sum(sets, cap):
    """Minimal common sum of distinct elements, by explicit powerset search."""
    achievable = []
    for values in sets:
        sums = set()
        for r in range(1, len(values) + 1):
            for combo in itertools.combinations(values, r):
                s = sum(combo)
                if s <= cap:
                    sums.add(s)
        achievable.append(sums)
    common = set.intersection(*achievable)
    return min(common) if common else None
