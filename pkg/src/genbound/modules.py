"""Module actions over prime fields: irreducibility by spinning, and bounded
search for nontrivial irreducible actions of a given finite source.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from . import linalg
from .groups import FiniteGroup, MatrixGroup
from .homcount import enumerate_homs, enumerate_homs_group
from .numtheory import is_prime, least_primitive_root
from .presentations import Presentation

DEFAULT_SPACE_CAP = 10**5
DEFAULT_GL_ORDER_CAP = 25_000


@dataclass(frozen=True)
class ModuleAction:
    """A linear action of the source on F_p^dim, one matrix per generator.

    Construction verifies the matrices are invertible, satisfy the source's
    relators, and are not all the identity.
    """

    p: int
    dim: int
    matrices: tuple[linalg.Matrix, ...]
    source: Presentation

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        mats = tuple(linalg.normalize_matrix(m, self.p) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        if len(mats) != len(self.source.generators):
            raise ValueError("one matrix per source generator required")
        for m in mats:
            if len(m) != self.dim:
                raise ValueError("matrix dimension mismatch")
            linalg.mat_inv(m, self.p)  # raises if singular
        identity = linalg.mat_identity(self.dim)
        for word in self.source.relators:
            value = identity
            for idx, exp in word:
                value = linalg.mat_mul(
                    value, linalg.mat_pow(mats[idx], exp, self.p), self.p
                )
            if value != identity:
                raise ValueError("matrices do not satisfy the source relators")
        if all(m == identity for m in mats):
            raise ValueError("action is trivial")


def is_irreducible(action: ModuleAction, space_cap: int = DEFAULT_SPACE_CAP) -> bool:
    """True iff every nonzero vector spins up to the full space.

    A proper invariant subspace contains some nonzero vector whose spin
    stays inside it, so checking all (projectively normalized) vectors is a
    complete test. dim 1 is always irreducible.
    """
    p, dim = action.p, action.dim
    if dim == 1:
        return True
    if p**dim > space_cap:
        raise ValueError(f"space size {p}^{dim} exceeds cap {space_cap}")
    for v in itertools.product(range(p), repeat=dim):
        first = next((x for x in v if x), None)
        if first != 1:  # one representative per projective point
            continue
        if linalg.spin_dimension(v, action.matrices, p) < dim:
            return False
    return True


def general_linear_generators(p: int, dim: int) -> list[linalg.Matrix]:
    """A generating set of GL(dim, p): all transvections plus a diagonal
    matrix carrying a primitive root (the transvections alone generate the
    special linear group)."""
    if dim == 1:
        root = least_primitive_root(p)
        return [((root % p,),)]
    gens = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            m = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
            m[i][j] = 1
            gens.append(tuple(tuple(row) for row in m))
    if p > 2:
        root = least_primitive_root(p)
        diag = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
        diag[0][0] = root
        gens.append(tuple(tuple(row) for row in diag))
    return gens


def general_linear_order(p: int, dim: int) -> int:
    q = p**dim
    return prod(q - p**i for i in range(dim))


def general_linear_group(p: int, dim: int, element_cap: int = 10**6) -> MatrixGroup:
    return MatrixGroup(p, dim, general_linear_generators(p, dim), element_cap=element_cap)


@dataclass(frozen=True)
class SimpleModuleSearch:
    """Result of the bounded irreducible-module search.

    `found` is None when the search was inconclusive (never a disproof);
    `skipped` lists dimensions that were not searched, with reasons.
    """

    found: ModuleAction | None
    searched_dims: tuple[int, ...]
    skipped: tuple[tuple[int, str], ...]


def find_simple_module(
    source: Presentation | FiniteGroup,
    p: int,
    d_max: int,
    gl_order_cap: int = DEFAULT_GL_ORDER_CAP,
    space_cap: int = DEFAULT_SPACE_CAP,
) -> SimpleModuleSearch:
    """Search dimensions 1..d_max for a nontrivial irreducible action of the
    source over F_p.

    Each dimension enumerates homomorphisms into the full matrix group and
    tests the nontrivial ones for irreducibility; the first hit wins (small
    dimensions keep downstream targets small). Dimensions whose matrix group
    or vector space exceeds the caps are reported as skipped.
    """
    if isinstance(source, Presentation):
        pres = source
        hom_enumerator = lambda target: enumerate_homs(pres, target)  # noqa: E731
        names = pres.generators
    else:
        group = source
        hom_enumerator = lambda target: enumerate_homs_group(group, target)  # noqa: E731
        names = tuple(f"g{i + 1}" for i in range(len(group.generators)))
        pres = Presentation(names, (), name=source.describe())
    searched: list[int] = []
    skipped: list[tuple[int, str]] = []
    for dim in range(1, d_max + 1):
        gl_order = general_linear_order(p, dim)
        if gl_order > gl_order_cap:
            skipped.append((dim, f"matrix group order {gl_order} exceeds cap {gl_order_cap}"))
            continue
        if p**dim > space_cap:
            skipped.append((dim, f"space size {p}^{dim} exceeds cap {space_cap}"))
            continue
        target = general_linear_group(p, dim)
        searched.append(dim)
        identity = linalg.mat_identity(dim)
        for images in hom_enumerator(target):
            if all(m == identity for m in images):
                continue
            try:
                action = ModuleAction(p, dim, tuple(images), _action_source(source, pres))
            except ValueError:
                continue
            if is_irreducible(action, space_cap):
                return SimpleModuleSearch(action, tuple(searched), tuple(skipped))
    return SimpleModuleSearch(None, tuple(searched), tuple(skipped))


def _action_source(source, pres: Presentation) -> Presentation:
    return source if isinstance(source, Presentation) else pres
