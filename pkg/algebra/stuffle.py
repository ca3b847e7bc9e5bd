"""Stuffle (quasi-shuffle) product on the monomial basis.

    ∅ ⋆ w = w ⋆ ∅ = w
    (x·u) ⋆ (y·v) = x·(u ⋆ y·v) + y·(x·u ⋆ v) + (x+y)·(u ⋆ v)
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from algebra.composition import Composition, FormalSum

Word = tuple[int, ...]


class StuffleProductResult(NamedTuple):
    operands: tuple[Composition, Composition]
    expansion: FormalSum


@lru_cache(maxsize=65536)
def _stuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    # cached results are tuples so callers cannot mutate shared state
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    x, rest_u = u[0], u[1:]
    y, rest_v = v[0], v[1:]
    counts: Counter[Word] = Counter()
    for w, k in _stuffle_words(rest_u, v):
        counts[(x,) + w] += k
    for w, k in _stuffle_words(u, rest_v):
        counts[(y,) + w] += k
    for w, k in _stuffle_words(rest_u, rest_v):
        counts[(x + y,) + w] += k
    return tuple(sorted(counts.items()))


def stuffle(a: Composition, b: Composition) -> FormalSum:
    return FormalSum({Composition(w): k for w, k in _stuffle_words(a.parts, b.parts)})


def stuffle_product(a: Composition, b: Composition) -> StuffleProductResult:
    return StuffleProductResult((a, b), stuffle(a, b))


def stuffle_bilinear(left: FormalSum, right: FormalSum) -> FormalSum:
    acc: dict[Composition, Fraction] = {}
    for a, qa in left.items():
        for b, qb in right.items():
            scale = qa * qb
            for w, k in _stuffle_words(a.parts, b.parts):
                c = Composition(w)
                acc[c] = acc.get(c, Fraction(0)) + scale * k
    return FormalSum(acc)


def stuffle_power(a: Composition, k: int) -> FormalSum:
    if k < 0:
        raise ValueError(f"exponent must be ≥ 0, got {k}")
    result = FormalSum.one()
    base = FormalSum.monomial(a)
    for _ in range(k):
        result = stuffle_bilinear(result, base)
    return result


def expand_monomial(exponents: Mapping[Composition, int]) -> FormalSum:
    """Expand Π key^{⋆exponent} in the monomial basis."""
    result = FormalSum.one()
    for comp in sorted(exponents):
        exponent = exponents[comp]
        if exponent < 1:
            raise ValueError(f"exponent of {comp!r} must be ≥ 1, got {exponent}")
        result = stuffle_bilinear(result, stuffle_power(comp, exponent))
    return result
