"""Weight-graded structure of the convergent stuffle algebra.

Builds polynomial generators weight by weight: a convergent composition becomes
a generator when its basis vector is outside the span of the stuffle
expansions of products of lower generators (and of the generators already
accepted at that weight). Every convergent composition then has a unique
normal form as a polynomial in the generators.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from types import MappingProxyType

from algebra.composition import (
    EMPTY,
    Composition,
    FormalSum,
    Scalar,
    enumerate_compositions,
    is_convergent,
)
from algebra.errors import DivergentCompositionError, TableRangeError
from algebra.linalg import EchelonBasis, fraction_free_rank, invert
from algebra.lyndon import count_lyndon
from algebra.stuffle import expand_monomial

logger = logging.getLogger(__name__)

DEFAULT_MAX_WEIGHT = 8


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """Product of generators, stored as sorted (generator, exponent) pairs."""

    factors: tuple[tuple[Composition, int], ...] = ()

    def __post_init__(self):
        merged: dict[Composition, int] = {}
        for gen, exponent in self.factors:
            if exponent < 1:
                raise ValueError(f"exponent of {gen!r} must be ≥ 1, got {exponent}")
            merged[gen] = merged.get(gen, 0) + exponent
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, *generators: Composition) -> Monomial:
        return cls(tuple((g, 1) for g in generators))

    def as_map(self) -> dict[Composition, int]:
        return dict(self.factors)

    @property
    def weight(self) -> int:
        return sum(g.weight * e for g, e in self.factors)

    @property
    def total_degree(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def sort_key(self):
        return (self.weight, self.total_degree, tuple((g.sort_key, e) for g, e in self.factors))

    def __lt__(self, other: Monomial) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key < other.sort_key

    def expand(self) -> FormalSum:
        return _expand(self)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "·".join(f"G{g!r}" + (f"^{e}" if e > 1 else "") for g, e in self.factors)

    __repr__ = __str__


@lru_cache(maxsize=4096)
def _expand(m: Monomial) -> FormalSum:
    return expand_monomial(m.as_map())


class GeneratorPolynomial(Mapping):
    """Polynomial in generator compositions with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            collected[mono] = collected.get(mono, Fraction(0)) + Fraction(coeff)
        self._terms = {m: q for m, q in collected.items() if q != 0}

    @classmethod
    def one(cls) -> GeneratorPolynomial:
        return cls({Monomial(): 1})

    @classmethod
    def generator(cls, g: Composition) -> GeneratorPolynomial:
        return cls({Monomial.of(g): 1})

    def __getitem__(self, m: Monomial) -> Fraction:
        return self._terms[m]

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GeneratorPolynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def generators(self) -> set[Composition]:
        return {g for m in self._terms for g, _ in m.factors}

    def weight_profile(self) -> set[int]:
        return {m.weight for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weight_profile()) <= 1

    def expand(self) -> FormalSum:
        result = FormalSum()
        for m, q in self._terms.items():
            result = result.combine(m.expand(), q)
        return result

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        text = ""
        for i, m in enumerate(self):
            q = self._terms[m]
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if not m.factors:
                body = str(mag)
            else:
                body = str(m) if mag == 1 else f"{mag}·{m}"
            if i == 0:
                text = ("-" if sign == "-" else "") + body
            else:
                text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"GeneratorPolynomial({self})"


@dataclass(frozen=True)
class GeneratorTable:
    max_weight: int
    generators: Mapping[int, tuple[Composition, ...]]
    monomials: Mapping[int, tuple[Monomial, ...]]
    normal_forms: Mapping[Composition, GeneratorPolynomial] = field(repr=False)
    dependent_products: Mapping[int, tuple[Monomial, ...]] = field(default_factory=dict, repr=False)

    def all_generators(self) -> list[Composition]:
        return [g for n in range(self.max_weight + 1) for g in self.generators[n]]

    def generator_count(self, weight: int) -> int:
        return len(self.generators.get(weight, ()))


def dimension(weight: int) -> int:
    """Number of convergent compositions of that weight."""
    return len(enumerate_compositions(weight, convergent_only=True))


def _products_of_weight(target: int, generators: list[Composition]) -> list[Monomial]:
    found: list[Monomial] = []

    def walk(start: int, remaining: int, chosen: list[Composition]):
        if remaining == 0:
            found.append(Monomial.of(*chosen))
            return
        for idx in range(start, len(generators)):
            w = generators[idx].weight
            if w <= remaining:
                walk(idx, remaining - w, chosen + [generators[idx]])

    walk(0, target, [])
    return sorted(found)


def _vector(expansion: FormalSum, index: Mapping[Composition, int]) -> list[Fraction]:
    v = [Fraction(0)] * len(index)
    for c, q in expansion.items():
        v[index[c]] = q
    return v


def build_generator_table(max_weight: int = DEFAULT_MAX_WEIGHT) -> GeneratorTable:
    if max_weight < 2:
        raise TableRangeError(f"max_weight must be ≥ 2, got {max_weight}")

    generators: dict[int, tuple[Composition, ...]] = {0: (), 1: ()}
    monomials: dict[int, tuple[Monomial, ...]] = {0: (Monomial(),), 1: ()}
    normal_forms: dict[Composition, GeneratorPolynomial] = {EMPTY: GeneratorPolynomial.one()}
    dependent: dict[int, tuple[Monomial, ...]] = {}
    lower: list[Composition] = []

    for n in range(2, max_weight + 1):
        comps = enumerate_compositions(n, convergent_only=True)
        index = {c: i for i, c in enumerate(comps)}
        span = EchelonBasis(len(comps))

        basis: list[Monomial] = []
        rejected: list[Monomial] = []
        for m in _products_of_weight(n, lower):
            if span.add(_vector(m.expand(), index)):
                basis.append(m)
            else:
                rejected.append(m)
        if rejected:
            logger.warning(f"weight {n}: {len(rejected)} generator products are linearly dependent")
            dependent[n] = tuple(rejected)

        chosen = []
        for c in comps:
            unit = [0] * len(comps)
            unit[index[c]] = 1
            if span.add(unit):
                chosen.append(c)
        basis.extend(Monomial.of(c) for c in chosen)
        logger.debug(f"weight {n}: dimension {len(comps)}, {len(chosen)} new generators")

        # rows: basis monomials, columns: compositions; row j of the inverse
        # expresses composition j in the basis
        inverse = invert([_vector(m.expand(), index) for m in basis])
        for j, c in enumerate(comps):
            normal_forms[c] = GeneratorPolynomial(
                {basis[i]: inverse[j][i] for i in range(len(basis)) if inverse[j][i]})

        generators[n] = tuple(chosen)
        monomials[n] = tuple(sorted(basis))
        lower.extend(chosen)

    return GeneratorTable(
        max_weight=max_weight,
        generators=MappingProxyType(generators),
        monomials=MappingProxyType(monomials),
        normal_forms=MappingProxyType(normal_forms),
        dependent_products=MappingProxyType(dependent),
    )


def reduce_to_normal_form(c: Composition, table: GeneratorTable) -> GeneratorPolynomial:
    if not is_convergent(c):
        raise DivergentCompositionError(c)
    if c.weight > table.max_weight:
        raise TableRangeError(f"weight {c.weight} of {c!r} exceeds table max_weight {table.max_weight}")
    return table.normal_forms[c]


def euler_product_series(generator_counts: Mapping[int, int], max_weight: int) -> list[int]:
    """Coefficients of Π_k (1 - t^k)^(-g_k) up to t^max_weight."""
    series = [1] + [0] * max_weight
    for k, g in sorted(generator_counts.items()):
        if k < 1:
            continue
        for _ in range(g):
            for n in range(k, max_weight + 1):
                series[n] += series[n - k]
    return series


def stated_dimension(weight: int) -> int:
    # the dimension formula as printed in the source: 1, 0, then 2^(n-1)
    if weight == 0:
        return 1
    if weight == 1:
        return 0
    return 2 ** (weight - 1)


@dataclass(frozen=True)
class FreenessRow:
    weight: int
    dimension: int
    stated_dimension: int
    generator_count: int
    lyndon_count: int | None
    monomial_count: int
    monomial_rank: int
    euler_coefficient: int

    @property
    def independent(self) -> bool:
        return self.monomial_rank == self.monomial_count

    @property
    def spanning(self) -> bool:
        return self.euler_coefficient == self.dimension and self.monomial_rank == self.dimension

    @property
    def lyndon_match(self) -> bool:
        return self.lyndon_count is None or self.lyndon_count == self.generator_count

    @property
    def passed(self) -> bool:
        return self.independent and self.spanning and self.lyndon_match


@dataclass(frozen=True)
class FreenessReport:
    max_weight: int
    rows: tuple[FreenessRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def dimension_discrepancies(self) -> list[int]:
        """Weights where the enumerated dimension differs from the printed formula."""
        return [r.weight for r in self.rows if r.dimension != r.stated_dimension]


def verify_freeness(max_weight: int, table: GeneratorTable | None = None) -> FreenessReport:
    if max_weight < 2:
        raise TableRangeError(f"max_weight must be ≥ 2, got {max_weight}")
    if table is None or table.max_weight < max_weight:
        table = build_generator_table(max_weight)

    counts = {n: table.generator_count(n) for n in range(max_weight + 1)}
    series = euler_product_series(counts, max_weight)
    lower = [g for n in range(2, max_weight + 1) for g in table.generators[n]]

    rows = []
    for n in range(max_weight + 1):
        comps = enumerate_compositions(n, convergent_only=True)
        index = {c: i for i, c in enumerate(comps)}
        # every distinct generator monomial of total weight n, products and
        # single generators alike
        monos = [Monomial()] if n == 0 else _products_of_weight(n, lower)
        vectors = [[int(x) for x in _vector(m.expand(), index)] for m in monos]
        rank = fraction_free_rank(vectors) if comps else 0
        row = FreenessRow(
            weight=n,
            dimension=len(comps),
            stated_dimension=stated_dimension(n),
            generator_count=counts[n],
            lyndon_count=count_lyndon(n) if n >= 2 else None,
            monomial_count=len(monos),
            monomial_rank=rank,
            euler_coefficient=series[n],
        )
        if not row.passed:
            logger.warning(f"freeness check failed at weight {n}: {row}")
        rows.append(row)
    return FreenessReport(max_weight, tuple(rows))


def round_trip_failures(table: GeneratorTable, max_weight: int | None = None) -> list[Composition]:
    """Convergent compositions whose normal form does not expand back to themselves."""
    max_weight = table.max_weight if max_weight is None else min(max_weight, table.max_weight)
    failures = []
    for n in range(max_weight + 1):
        for c in enumerate_compositions(n, convergent_only=True):
            if table.normal_forms[c].expand() != FormalSum.monomial(c):
                failures.append(c)
    if failures:
        logger.warning(f"{len(failures)} normal forms do not expand back: {failures[:5]}")
    return failures
