"""Compositions, their measures, and exact-rational formal sums over them.

A composition (s1, ..., sr) indexes a Hurwitz multizeta function, a monomial
quasi-symmetric function, and a word over the alphabet y1 < y2 < ... at once.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import NamedTuple, Union

from algebra.errors import CompositionParseError

MAX_PART = 2**31 - 1

Scalar = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool):
                raise TypeError(f"composition parts must be integers, got {part!r}")
            if part < 1:
                raise ValueError(f"part must be ≥ 1, got {part}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Composition:
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Composition(self.parts[index])
        return self.parts[index]

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __add__(self, other: Composition) -> Composition:
        """Concatenation of words"""
        if not isinstance(other, Composition):
            return NotImplemented
        return Composition(self.parts + other.parts)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        # canonical order: depth first, then lexicographic on parts
        return (len(self.parts), self.parts)

    def __lt__(self, other: Composition) -> bool:
        if not isinstance(other, Composition):
            return NotImplemented
        return self.sort_key < other.sort_key

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def degree(self) -> int:
        return self.weight - self.depth

    def __str__(self) -> str:
        return render_composition(self)

    def __repr__(self) -> str:
        return "∅" if not self.parts else "(" + ",".join(map(str, self.parts)) + ")"


EMPTY = Composition()


class Measures(NamedTuple):
    weight: int
    depth: int
    degree: int


def parse_composition(text: str) -> Composition:
    """Parse the comma format: ``"2,1,3"``; the empty string is ∅."""
    text = text.strip()
    if not text:
        return EMPTY
    parts = []
    for raw in text.split(","):
        token = raw.strip()
        try:
            value = int(token)
        except ValueError:
            raise CompositionParseError(token, "not an integer") from None
        if value < 1:
            raise CompositionParseError(token, "part must be ≥ 1")
        if value > MAX_PART:
            raise CompositionParseError(token, f"part exceeds {MAX_PART}")
        parts.append(value)
    return Composition(tuple(parts))


def render_composition(c: Composition) -> str:
    return ",".join(str(p) for p in c.parts)


def measures(c: Composition) -> Measures:
    return Measures(c.weight, c.depth, c.degree)


def is_convergent(c: Composition) -> bool:
    # ∅ counts as convergent: He^∅ = 1
    return not c.parts or c.parts[0] >= 2


@lru_cache(maxsize=None)
def _compositions_of(weight: int) -> tuple[Composition, ...]:
    if weight == 0:
        return (EMPTY,)
    found = []
    for depth in range(1, weight + 1):
        same_depth = []
        # choose depth-1 cut points among the weight-1 gaps
        for cuts in itertools.combinations(range(1, weight), depth - 1):
            bounds = (0,) + cuts + (weight,)
            same_depth.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
        found.extend(Composition(p) for p in sorted(same_depth))
    return tuple(found)


def enumerate_compositions(weight: int, convergent_only: bool = False,
                           degree: int | None = None) -> list[Composition]:
    """All compositions of ``weight`` in canonical order.

    ``degree`` keeps only the compositions with that degree (weight - depth).
    """
    if weight < 0:
        return []
    result = list(_compositions_of(weight))
    if convergent_only:
        result = [c for c in result if is_convergent(c)]
    if degree is not None:
        result = [c for c in result if c.degree == degree]
    return result


def compositions_up_to(max_weight: int, convergent_only: bool = False) -> list[Composition]:
    return [c for n in range(max_weight + 1)
            for c in enumerate_compositions(n, convergent_only)]


class FormalSum(Mapping):
    """Finite linear combination of compositions with exact rational coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Composition, Scalar] | Iterable[tuple[Composition, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Composition, Fraction] = {}
        for comp, coeff in items:
            if not isinstance(comp, Composition):
                comp = Composition(tuple(comp))
            collected[comp] = collected.get(comp, Fraction(0)) + Fraction(coeff)
        self._terms = {c: q for c, q in collected.items() if q != 0}

    @classmethod
    def monomial(cls, c: Composition, coeff: Scalar = 1) -> FormalSum:
        return cls({c: coeff})

    @classmethod
    def one(cls) -> FormalSum:
        return cls({EMPTY: 1})

    def __getitem__(self, c: Composition) -> Fraction:
        return self._terms[c]

    def __iter__(self) -> Iterator[Composition]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        return NotImplemented

    def coefficient(self, c: Composition) -> Fraction:
        return self._terms.get(c, Fraction(0))

    def combine(self, other: FormalSum, scalar: Scalar = 1) -> FormalSum:
        """Return self + scalar * other"""
        scalar = Fraction(scalar)
        merged = dict(self._terms)
        if scalar != 0:
            for c, q in other._terms.items():
                merged[c] = merged.get(c, Fraction(0)) + scalar * q
        return FormalSum(merged)

    def scale(self, scalar: Scalar) -> FormalSum:
        scalar = Fraction(scalar)
        return FormalSum({c: scalar * q for c, q in self._terms.items()})

    def __add__(self, other: FormalSum) -> FormalSum:
        return self.combine(other, 1)

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self.combine(other, -1)

    def __neg__(self) -> FormalSum:
        return self.scale(-1)

    def __mul__(self, scalar: Scalar) -> FormalSum:
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def weights(self) -> set[int]:
        return {c.weight for c in self._terms}

    def __repr__(self) -> str:
        return f"FormalSum({render_sum(self)})"


def sum_combine(a: FormalSum, b: FormalSum, scalar: Scalar) -> FormalSum:
    return a.combine(b, scalar)


def render_sum(s: FormalSum) -> str:
    """Human-readable form, e.g. ``2·(2,2) + (4)``."""
    if not s:
        return "0"
    pieces = []
    # longest words first, the way expansions are usually written
    for c in sorted(s, key=lambda c: (-c.depth, c.parts)):
        q = s[c]
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        body = repr(c) if mag == 1 else f"{mag}·{c!r}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
