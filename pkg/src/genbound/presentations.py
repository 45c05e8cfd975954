"""Finite presentations: named generators plus relator words.

A relator word is a tuple of (generator index, nonzero exponent) pairs.
Free products are disjoint unions: no shared generators, concatenated
relator lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        for word in self.relators:
            for idx, exp in word:
                if not (0 <= idx < len(self.generators)):
                    raise ValueError(f"relator references undeclared generator {idx}")
                if exp == 0:
                    raise ValueError("zero exponent in relator word")

    def describe(self) -> str:
        if self.name:
            return self.name
        rels = ", ".join(render_word(w, self.generators) for w in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def cyclic_presentation(m: int, gen: str = "g", name: str = "") -> Presentation:
    """The cyclic group of order m as a one-relator presentation."""
    if m < 1:
        raise ValueError("order must be >= 1")
    return Presentation((gen,), (((0, m),),), name=name or f"C{m}")


def free_presentation(rank: int, prefix: str = "x") -> Presentation:
    names = tuple(f"{prefix}{i + 1}" for i in range(rank))
    return Presentation(names, (), name=f"F{rank}")


def free_product(factors: Sequence[Presentation]) -> Presentation:
    """Disjoint union of presentations; generator names are qualified on clash."""
    if not factors:
        raise ValueError("need at least one factor")
    all_names = [g for f in factors for g in f.generators]
    clash = len(set(all_names)) != len(all_names)
    names: list[str] = []
    relators: list[Word] = []
    for i, f in enumerate(factors):
        offset = len(names)
        for g in f.generators:
            names.append(f"f{i + 1}_{g}" if clash else g)
        for word in f.relators:
            relators.append(tuple((idx + offset, exp) for idx, exp in word))
    name = " * ".join(f.describe() for f in factors)
    return Presentation(tuple(names), tuple(relators), name=name)


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\^|-?\d+|\(|\)|\*)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ValueError(f"bad character at position {pos} in word {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse a word like "a^2" or "(a*b)^5" into (index, exponent) pairs.

    Grammar: word := power ("*" power)* ; power := atom ("^" int)? ;
    atom := generator | "(" word ")". Exponents may be negative; the
    expansion repeats (or inverts) the inner word accordingly.
    """
    tokens = _tokenize(text)
    index = {g: i for i, g in enumerate(generators)}
    pos = 0

    def parse_power() -> list[tuple[int, int]]:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of word {text!r}")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            inner = parse_sequence()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError(f"unbalanced parenthesis in word {text!r}")
            pos += 1
        elif tok in index:
            inner = [(index[tok], 1)]
            pos += 1
        else:
            raise ValueError(f"unknown generator {tok!r} in word {text!r}")
        if pos < len(tokens) and tokens[pos] == "^":
            pos += 1
            if pos >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[pos]):
                raise ValueError(f"missing exponent in word {text!r}")
            exp = int(tokens[pos])
            pos += 1
            if exp == 0:
                raise ValueError("zero exponent in relator word")
            inner = _repeat_word(inner, exp)
        return inner

    def parse_sequence() -> list[tuple[int, int]]:
        nonlocal pos
        out = parse_power()
        while pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            out.extend(parse_power())
        return out

    pairs = parse_sequence()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in word {text!r}")
    return _merge_pairs(pairs)


def _repeat_word(pairs: list[tuple[int, int]], exp: int) -> list[tuple[int, int]]:
    if exp > 0:
        return pairs * exp
    inverted = [(idx, -e) for idx, e in reversed(pairs)]
    return inverted * (-exp)


def _merge_pairs(pairs: Sequence[tuple[int, int]]) -> Word:
    merged: list[tuple[int, int]] = []
    for idx, exp in pairs:
        if merged and merged[-1][0] == idx:
            total = merged[-1][1] + exp
            if total == 0:
                merged.pop()
            else:
                merged[-1] = (idx, total)
        else:
            merged.append((idx, exp))
    return tuple(merged)


def render_word(word: Word, generators: Sequence[str]) -> str:
    parts = []
    for idx, exp in word:
        name = generators[idx]
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts) if parts else "1"


def presentation_from_words(
    generators: Sequence[str], words: Sequence[str], name: str = ""
) -> Presentation:
    gens = tuple(generators)
    relators = tuple(parse_word(w, gens) for w in words)
    return Presentation(gens, relators, name=name)
