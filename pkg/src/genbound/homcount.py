"""Exact enumeration of homomorphisms from finite presentations (or concrete
finite groups) into finite targets, the log-ratio functional h, and witness
quotients realizing the full homomorphism count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    GeneratedGroup,
    ProductGroup,
    closure,
    power_group,
)
from .presentations import Presentation, Word, free_product

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_WITNESS_WIDTH_CAP = 512


class HomSearchBudgetError(RuntimeError):
    """The backtracking search exceeded its node budget; no partial counts."""


class WitnessWidthError(RuntimeError):
    """Too many homomorphisms for a witness quotient at the given cap."""


@dataclass(frozen=True)
class HomCountResult:
    """Exact homomorphism count into a target of known order.

    The pair (count, target_order) is exact; `h` is a derived display value
    only. Downstream certificates compare the exact pair.
    """

    count: int
    target_order: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("homomorphism count must be >= 1")
        if self.target_order < 1:
            raise ValueError("target order must be >= 1")

    @property
    def h(self) -> float:
        if self.target_order == 1:
            return 0.0
        return math.log(self.count) / math.log(self.target_order)


def _single_generator_order_bound(pres: Presentation, gen: int) -> int:
    """gcd of net exponents of single-generator relators of gen (0 = none)."""
    bound = 0
    for word in pres.relators:
        if word and all(idx == gen for idx, _ in word):
            net = sum(exp for _, exp in word)
            bound = gcd(bound, abs(net))
    return bound


def _evaluate_word(word: Word, images: Sequence, target: FiniteGroup):
    result = target.identity
    for idx, exp in word:
        result = target.mul(result, target.power(images[idx], exp))
    return result


class _BacktrackSearch:
    """Shared backtracking core for counting/enumerating homomorphisms.

    Generators are assigned in order of ascending candidate-set size (most
    constrained first); each relator is checked as soon as all generators it
    mentions are assigned. Deterministic given the target's element order.
    """

    def __init__(self, pres: Presentation, target: FiniteGroup, node_budget: int):
        self.pres = pres
        self.target = target
        self.node_budget = node_budget
        self.nodes = 0
        elements = target.elements
        k = len(pres.generators)
        candidates = []
        for g in range(k):
            m = _single_generator_order_bound(pres, g)
            if m == 0:
                candidates.append(elements)
            else:
                candidates.append(
                    tuple(x for x in elements if target.power(x, m) == target.identity)
                )
        # stable sort: most constrained generator first
        self.order = sorted(range(k), key=lambda g: (len(candidates[g]), g))
        self.candidates = candidates
        position = {g: i for i, g in enumerate(self.order)}
        self.checks: list[list[Word]] = [[] for _ in range(k)]
        for word in pres.relators:
            used = {idx for idx, _ in word}
            if not used:
                continue
            last = max(position[g] for g in used)
            self.checks[last].append(word)

    def run(self, collect: list | None):
        k = len(self.pres.generators)
        images: list = [None] * k
        count = 0

        def descend(level: int) -> int:
            nonlocal count
            if level == k:
                count += 1
                if collect is not None:
                    collect.append(tuple(images))
                return count
            gen = self.order[level]
            for x in self.candidates[gen]:
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise HomSearchBudgetError(
                        f"search exceeded {self.node_budget} nodes"
                    )
                images[gen] = x
                if all(
                    _evaluate_word(w, images, self.target) == self.target.identity
                    for w in self.checks[level]
                ):
                    descend(level + 1)
            images[gen] = None
            return count

        if k == 0:
            if collect is not None:
                collect.append(())
            return 1
        return descend(0)


def count_homs(
    pres: Presentation,
    target: FiniteGroup,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> HomCountResult:
    """Exact |Hom(P, target)| by backtracking over generator images."""
    count = _BacktrackSearch(pres, target, node_budget).run(None)
    return HomCountResult(count, target.order)


def enumerate_homs(
    pres: Presentation,
    target: FiniteGroup,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[tuple]:
    """All homomorphisms as generator-image tuples, in deterministic order."""
    found: list[tuple] = []
    _BacktrackSearch(pres, target, node_budget).run(found)
    return found


def count_homs_cyclic(m: int, target: FiniteGroup) -> HomCountResult:
    """|Hom(C_m, target)| by a single pass counting solutions of x^m = e."""
    if m < 1:
        raise ValueError("order must be >= 1")
    e = target.identity
    count = sum(1 for x in target.elements if target.power(x, m) == e)
    return HomCountResult(count, target.order)


def free_product_count(
    factors: Sequence[Presentation],
    target: FiniteGroup,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> HomCountResult:
    """Count for a free product: the product of the per-factor counts."""
    if not factors:
        raise ValueError("need at least one factor")
    counts = [count_homs(f, target, node_budget).count for f in factors]
    return HomCountResult(prod(counts), target.order)


def power_target_count(
    pres: Presentation,
    target: FiniteGroup,
    n: int,
    verify_explicit: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> HomCountResult:
    """Count into the n-th direct power of the target.

    Coordinatewise, homs into target^n are n-tuples of homs into target, so
    the count is count(target)^n at target order |target|^n. With
    verify_explicit the power group is built and counted directly and the
    two results are required to agree.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    base = count_homs(pres, target, node_budget)
    analytic = HomCountResult(base.count**n, target.order**n)
    if verify_explicit:
        explicit = count_homs(pres, power_group(target, n), node_budget)
        if explicit.count != analytic.count:
            raise AssertionError(
                f"explicit power count {explicit.count} != {analytic.count}"
            )
        return explicit
    return analytic


# -- homomorphisms from concrete groups ------------------------------------


def _bfs_words(G: FiniteGroup) -> tuple[list, dict]:
    """Elements in BFS order with, for each non-seed, (parent, generator id)."""
    gens = list(G.generators)
    order = [G.identity]
    parents: dict = {}
    seen = {G.identity}
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for gi, g in enumerate(gens):
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                parents[y] = (x, gi)
                order.append(y)
    return order, parents


def enumerate_homs_group(
    source: FiniteGroup,
    target: FiniteGroup,
    limit: int | None = None,
) -> list[tuple]:
    """Homomorphisms from a concrete finite group, as generator-image tuples.

    Candidate generator images are filtered by order divisibility, extended
    to the whole source along a BFS spanning tree, then checked against every
    (element, generator) product. Exact and deterministic.
    """
    gens = list(source.generators)
    if not gens:
        if source.order != 1:
            raise ValueError("source group without generators")
        return [()]
    order_bfs, parents = _bfs_words(source)
    if len(order_bfs) != source.order:
        raise ValueError("generators do not generate the source group")
    gen_orders = [source.element_order(g) for g in gens]
    candidates = [
        tuple(
            x
            for x in target.elements
            if gen_orders[i] % target.element_order(x) == 0
        )
        for i in range(len(gens))
    ]
    found: list[tuple] = []

    def check(images: tuple) -> bool:
        phi = {source.identity: target.identity}
        for x in order_bfs[1:]:
            px, gi = parents[x]
            phi[x] = target.mul(phi[px], images[gi])
        for x in order_bfs:
            for gi, g in enumerate(gens):
                if phi[source.mul(x, g)] != target.mul(phi[x], images[gi]):
                    return False
        return True

    def descend(level: int, images: tuple):
        if limit is not None and len(found) >= limit:
            return
        if level == len(gens):
            if check(images):
                found.append(images)
            return
        for x in candidates[level]:
            descend(level + 1, images + (x,))

    descend(0, ())
    return found


def count_homs_group(source: FiniteGroup, target: FiniteGroup) -> HomCountResult:
    return HomCountResult(len(enumerate_homs_group(source, target)), target.order)


# -- witness quotients ------------------------------------------------------


@dataclass(frozen=True)
class WitnessQuotient:
    """Finite quotient of a free product realizing its full hom count.

    The group lives in a direct power of the target: each free-product
    generator becomes the tuple of its images under the retained
    homomorphisms (one per kernel when deduplicated).
    """

    group: GeneratedGroup
    hom_count_used: int
    width_used: int
    source: Presentation
    deduplicated: bool


def _image_order(target: FiniteGroup, images: Sequence) -> int:
    return len(closure(list(images), target.mul, target.identity, target.element_cap))


def kernels_equal(
    target: FiniteGroup, hom_a: Sequence, hom_b: Sequence
) -> bool:
    """Whether two homomorphisms (generator-image tuples) share a kernel.

    ker a = ker b iff the subgroup of target x target generated by the
    paired images is the graph of an isomorphism between the two images,
    i.e. has the same order as both images.
    """
    pair_group = ProductGroup([target, target])
    paired = [(x, y) for x, y in zip(hom_a, hom_b)]
    pair_order = len(
        closure(paired, pair_group.mul, pair_group.identity, target.element_cap)
    )
    return pair_order == _image_order(target, hom_a) == _image_order(target, hom_b)


def witness_quotient(
    factors: Sequence[Presentation],
    target: FiniteGroup,
    width_cap: int = DEFAULT_WITNESS_WIDTH_CAP,
    dedup_kernels: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> WitnessQuotient:
    """Witness quotient of a free product with respect to a finite target.

    Combined homomorphisms are all combinations of per-factor ones. Each
    free-product generator is realized as its image tuple across the
    retained homomorphisms; the returned group is the closure of those
    tuples under componentwise multiplication. Its minimal generator count
    bounds d of the profinite completion from below.
    """
    combined = free_product(list(factors))
    per_factor = [enumerate_homs(f, target, node_budget) for f in factors]
    total = prod(len(h) for h in per_factor)
    homs: list[tuple] = []
    for combo in itertools.product(*per_factor):
        homs.append(tuple(x for part in combo for x in part))
    if len(homs) > width_cap:
        if not dedup_kernels:
            raise WitnessWidthError(
                f"{len(homs)} homomorphisms exceed the width cap {width_cap}; "
                "retry with kernel deduplication (one homomorphism per kernel "
                "suffices for the witness quotient)"
            )
        kept: list[tuple] = []
        for hom in homs:
            if not any(kernels_equal(target, hom, other) for other in kept):
                kept.append(hom)
        homs = kept
        if len(homs) > width_cap:
            raise WitnessWidthError(
                f"{len(homs)} distinct kernels still exceed the width cap {width_cap}"
            )
    width = len(homs)
    ambient = ProductGroup([target] * width, element_cap=element_cap)
    gen_tuples = [
        tuple(hom[j] for hom in homs) for j in range(len(combined.generators))
    ]
    group = GeneratedGroup(ambient, gen_tuples, element_cap=element_cap)
    group.elements  # force closure now so cap errors surface here
    return WitnessQuotient(
        group=group,
        hom_count_used=total,
        width_used=width,
        source=combined,
        deduplicated=width != total,
    )
