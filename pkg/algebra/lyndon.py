"""Lyndon words over Y = {y1 < y2 < ...}, letters being composition parts."""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from sympy import divisors

try:
    from sympy.functions.combinatorial.numbers import mobius
except ImportError:  # sympy < 1.13
    from sympy.ntheory import mobius

from algebra.composition import Composition


class CFLFactorization(NamedTuple):
    word: Composition
    factors: tuple[Composition, ...]

    def __str__(self) -> str:
        return " · ".join(repr(f) for f in self.factors)


def _duval(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    factors = []
    k = 0
    n = len(word)
    while k < n:
        i = k
        j = k + 1
        while j < n and word[i] <= word[j]:
            if word[i] < word[j]:
                i = k
            else:
                i += 1
            j += 1
        while k <= i:
            factors.append(word[k:k + j - i])
            k += j - i
    return factors


def cfl_factorize(w: Composition) -> CFLFactorization:
    """Chen-Fox-Lyndon factorization by Duval's algorithm."""
    if not w:
        raise ValueError("cannot factorize the empty word")
    return CFLFactorization(w, tuple(Composition(f) for f in _duval(w.parts)))


def is_lyndon(w: Composition) -> bool:
    if not w:
        return False
    return len(_duval(w.parts)) == 1


def _lyndon_of_length(length: int, max_weight: int) -> list[tuple[int, ...]]:
    # Fredricksen-Kessler-Maiorana generation, pruned on weight
    found = []
    a = [1] * (length + 1)

    def extend(t: int, p: int, weight: int):
        if t > length:
            if p == length:
                found.append(tuple(a[1:]))
            return
        remaining = length - t
        first = a[t - p]
        for letter in range(first, max_weight + 1):
            if weight + letter + remaining > max_weight:
                break
            a[t] = letter
            extend(t + 1, p if letter == first else t, weight + letter)

    extend(1, 1, 0)
    return found


@lru_cache(maxsize=None)
def _lyndon_by_weight(max_weight: int) -> tuple[tuple[Composition, ...], ...]:
    groups: list[list[tuple[int, ...]]] = [[] for _ in range(max_weight + 1)]
    for length in range(1, max_weight + 1):
        for word in _lyndon_of_length(length, max_weight):
            groups[sum(word)].append(word)
    return tuple(tuple(Composition(w) for w in sorted(g)) for g in groups)


def generate_lyndon(max_weight: int) -> dict[int, list[Composition]]:
    """Lyndon words of weight ≤ max_weight, grouped by weight, each group sorted."""
    if max_weight < 1:
        raise ValueError(f"max_weight must be ≥ 1, got {max_weight}")
    groups = _lyndon_by_weight(max_weight)
    return {n: list(groups[n]) for n in range(1, max_weight + 1)}


def count_lyndon(weight: int) -> int:
    """Number of Lyndon compositions of the given weight (necklace count)."""
    if weight < 1:
        raise ValueError(f"weight must be ≥ 1, got {weight}")
    total = sum(int(mobius(d)) * (2 ** (weight // d) - 1) for d in divisors(weight))
    return total // weight
