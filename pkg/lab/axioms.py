"""Exhaustive symbolic checks of the stuffle product's algebra laws."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from algebra.composition import EMPTY, Composition, FormalSum, enumerate_compositions, is_convergent
from algebra.stuffle import stuffle, stuffle_bilinear

logger = logging.getLogger(__name__)

LAWS = ("commutative", "graded", "depth_bounds", "integral", "convergent", "unit", "associative")


@dataclass
class LawTally:
    checked: int = 0
    failures: int = 0
    first_failure: str | None = None

    def record(self, ok: bool, what: str):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = what


@dataclass
class AxiomReport:
    max_weight: int
    associativity_weight: int
    laws: dict[str, LawTally] = field(default_factory=lambda: {law: LawTally() for law in LAWS})

    @property
    def passed(self) -> bool:
        return all(t.failures == 0 for t in self.laws.values())


def _convergent(max_weight: int) -> list[Composition]:
    return [c for n in range(2, max_weight + 1) for c in enumerate_compositions(n, convergent_only=True)]


def _check_pair(report: AxiomReport, a: Composition, b: Composition):
    ab = stuffle(a, b)
    pair = f"{a!r}⋆{b!r}"
    laws = report.laws
    laws["commutative"].record(ab == stuffle(b, a), pair)
    laws["graded"].record(ab.weights() == {a.weight + b.weight}, pair)
    lo, hi = max(a.depth, b.depth), a.depth + b.depth
    laws["depth_bounds"].record(all(lo <= t.depth <= hi for t in ab), pair)
    laws["integral"].record(all(q.denominator == 1 and q > 0 for q in ab.values()), pair)
    laws["convergent"].record(all(is_convergent(t) for t in ab), pair)


def check_stuffle_axioms(max_weight: int = 8, associativity_weight: int = 9) -> AxiomReport:
    """Laws for every convergent pair of total weight ≤ max_weight and every
    convergent triple of total weight ≤ associativity_weight."""
    report = AxiomReport(max_weight, associativity_weight)
    comps = _convergent(max(max_weight, associativity_weight))

    for a in comps:
        report.laws["unit"].record(stuffle(a, EMPTY) == FormalSum.monomial(a) == stuffle(EMPTY, a), repr(a))
        for b in comps:
            if a.weight + b.weight <= max_weight:
                _check_pair(report, a, b)

    for a in comps:
        for b in comps:
            if a.weight + b.weight + 2 > associativity_weight:
                continue
            ab = stuffle(a, b)
            for c in comps:
                if a.weight + b.weight + c.weight > associativity_weight:
                    continue
                left = stuffle_bilinear(ab, FormalSum.monomial(c))
                right = stuffle_bilinear(FormalSum.monomial(a), stuffle(b, c))
                report.laws["associative"].record(left == right, f"({a!r}⋆{b!r})⋆{c!r}")

    for law, tally in report.laws.items():
        logger.debug(f"{law}: {tally.checked} checked, {tally.failures} failed")
    return report
