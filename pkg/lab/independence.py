"""Sampling certificates for ℂ(z)-linear independence of Hurwitz multizeta functions.

A relation Σ_c R_c(z)·He^c(z) = 0 with rational R_c becomes, after clearing
denominators, Σ_c Σ_{j≤d} a_{c,j} z^j He^c(z) = 0. Sampling z at m points
gives an m × (d+1)·k matrix; a numerically full column rank rules out any such
relation with polynomial degrees ≤ d. It never proves independence.
"""
from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from algebra.composition import EMPTY, Composition, enumerate_compositions
from algebra.errors import InsufficientPointsError
from algebra.stuffle import stuffle
from numerics.hurwitz import EvalRequest, EvalResult, eval_hmzf, to_mpc, working_context
from numerics.points import default_sample_points, format_point, parse_point
from numerics.settings import get_settings

logger = logging.getLogger(__name__)

# a candidate is a product of He-functions; () is the constant 1
Candidate = tuple[Composition, ...]


class Verdict(str, Enum):
    NO_RELATION_FOUND = "no-relation-found"
    RELATION_CANDIDATE = "relation-candidate"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IndependenceCertificate:
    candidates: tuple[str, ...]
    degree_bound: int
    points: tuple[str, ...]
    holdout: tuple[str, ...]
    rows: int
    columns: int
    singular_values: tuple[float, ...]
    threshold: float
    rank: int
    verdict: Verdict
    # one coefficient per (candidate, power of z), candidate-major
    relation: tuple[complex, ...] | None = None
    holdout_residuals: tuple[float, ...] = ()

    @property
    def full_rank(self) -> bool:
        return self.rank == self.columns

    @property
    def deficiency(self) -> int:
        return self.columns - self.rank

    def relation_for(self, candidate_index: int, power: int = 0) -> complex:
        if self.relation is None:
            raise ValueError("certificate carries no relation")
        return self.relation[candidate_index * (self.degree_bound + 1) + power]


def as_candidate(item) -> Candidate:
    if isinstance(item, Composition):
        return () if not item else (item,)
    return tuple(c for c in item if c)


def candidate_label(candidate: Candidate) -> str:
    if not candidate:
        return "1"
    return "·".join(f"He{c!r}" for c in candidate)


@lru_cache(maxsize=8192)
def _value(c: Composition, z: complex, precision: int, tolerance: float) -> EvalResult:
    return eval_hmzf(EvalRequest(c, z, tolerance, precision))


def _entry(ctx, candidate: Candidate, z: complex, precision: int, tolerance: float):
    """Value of the product at z and an error bound for it."""
    value = ctx.mpc(1)
    magnitude = ctx.mpf(1)
    upper = ctx.mpf(1)
    for c in candidate:
        r = _value(c, z, precision, tolerance)
        value *= r.value
        magnitude *= abs(r.value)
        upper *= abs(r.value) + r.error_bound
    return value, upper - magnitude


def _column_values(ctx, candidates, degree_bound, zs, precision, tolerance):
    """Rows of z^j·candidate(z), with matching entry errors."""
    values, errors = [], []
    for z in zs:
        zz = to_mpc(ctx, z)
        row, err_row = [], []
        for cand in candidates:
            v, e = _entry(ctx, cand, z, precision, tolerance)
            for j in range(degree_bound + 1):
                scale = zz ** j
                row.append(scale * v)
                err_row.append(abs(scale) * e)
        values.append(row)
        errors.append(err_row)
    return values, errors


def independence_certificate(candidates: Sequence, degree_bound: int = 0,
                             points: Sequence | None = None,
                             precision: int | None = None,
                             tolerance: float | None = None) -> IndependenceCertificate:
    settings = get_settings().lab
    precision = precision or settings.certificate_precision
    tolerance = tolerance or settings.certificate_tolerance
    if degree_bound < 0:
        raise ValueError(f"degree_bound must be ≥ 0, got {degree_bound}")
    cands = [as_candidate(c) for c in candidates]
    if not cands:
        raise ValueError("need at least one candidate")

    unknowns = (degree_bound + 1) * len(cands)
    needed = unknowns + settings.slack_points
    if points is None:
        points = default_sample_points(max(settings.default_point_count, needed))
    zs = [parse_point(p) if isinstance(p, str) else complex(p) for p in points]
    if len(set(zs)) != len(zs):
        raise InsufficientPointsError("sample points must be pairwise distinct")
    if len(zs) < needed:
        raise InsufficientPointsError(
            f"{len(zs)} points for {unknowns} unknowns; need at least {needed}")

    ctx = working_context(precision)
    held = settings.holdout_points
    fit, holdout = zs[:-held], zs[-held:]
    values, errors = _column_values(ctx, cands, degree_bound, fit, precision, tolerance)

    n = len(values[0])
    norms = [max(abs(values[i][k]) for i in range(len(fit))) for k in range(n)]
    norms = [x if x else ctx.mpf(1) for x in norms]
    A = ctx.matrix([[values[i][k] / norms[k] for k in range(n)] for i in range(len(fit))])
    worst = max(errors[i][k] / norms[k] for i in range(len(fit)) for k in range(n))
    threshold = settings.rank_factor * max(worst, ctx.eps)

    U, S, V = ctx.svd_c(A)
    sigma = [S[k] for k in range(n)]
    rank = sum(1 for s in sigma if s > threshold)
    logger.debug(f"{len(fit)}x{n} evaluation matrix, threshold {ctx.nstr(threshold, 3)}, rank {rank}")

    relation = None
    residuals: tuple[float, ...] = ()
    verdict = Verdict.NO_RELATION_FOUND
    if rank < n:
        smallest = min(range(n), key=lambda k: sigma[k])
        x = [ctx.conj(V[smallest, k]) for k in range(n)]
        held_values, _ = _column_values(ctx, cands, degree_bound, holdout, precision, tolerance)
        residuals = tuple(
            float(abs(ctx.fsum(x[k] * row[k] / norms[k] for k in range(n)))) for row in held_values)
        verdict = (Verdict.RELATION_CANDIDATE if all(r <= threshold for r in residuals)
                   else Verdict.INCONCLUSIVE)
        # back to unnormalized columns, largest coefficient scaled to 1
        coeffs = [x[k] / norms[k] for k in range(n)]
        lead = max(coeffs, key=abs)
        relation = tuple(complex(c / lead) for c in coeffs)

    return IndependenceCertificate(
        candidates=tuple(candidate_label(c) for c in cands),
        degree_bound=degree_bound,
        points=tuple(format_point(z) for z in fit),
        holdout=tuple(format_point(z) for z in holdout),
        rows=len(fit),
        columns=n,
        singular_values=tuple(float(s) for s in sorted(sigma, reverse=True)),
        threshold=float(threshold),
        rank=rank,
        verdict=verdict,
        relation=relation,
        holdout_residuals=residuals,
    )


def stuffle_relation(a: Composition, b: Composition) -> tuple[list[Candidate], list[int]]:
    """Candidates and exact coefficients of He^a·He^b - Σ coeff·He^t = 0."""
    expansion = stuffle(a, b)
    candidates: list[Candidate] = [(a, b)]
    coefficients = [1]
    for t, q in expansion.items():
        candidates.append((t,))
        coefficients.append(-int(q))
    return candidates, coefficients


@dataclass(frozen=True)
class TrialOutcome:
    certificate: IndependenceCertificate
    planted: bool
    expected: tuple[int, ...] | None = None
    coefficient_error: float | None = None

    @property
    def passed(self) -> bool:
        if not self.planted:
            return self.certificate.verdict is Verdict.NO_RELATION_FOUND
        return (self.certificate.verdict is Verdict.RELATION_CANDIDATE
                and self.coefficient_error is not None
                and self.coefficient_error <= 1e-6)


def _coefficient_error(certificate: IndependenceCertificate, expected: Sequence[int]) -> float:
    # compare up to scale, anchored on the product column
    anchor = certificate.relation_for(0)
    return max(abs(certificate.relation_for(i) / anchor - e / expected[0]) for i, e in enumerate(expected))


def run_independence_trials(trials: int | None = None, seed: int | None = None,
                            max_weight: int = 5, max_candidates: int = 6,
                            max_degree: int = 2, planted: int = 10) -> list[TrialOutcome]:
    """The {1, He(2), He(2,1)} triple, random candidate sets, then planted stuffle relations."""
    settings = get_settings().lab
    trials = settings.independence_trials if trials is None else trials
    rng = random.Random(settings.independence_seed if seed is None else seed)
    pool = [c for n in range(2, max_weight + 1) for c in enumerate_compositions(n, convergent_only=True)]

    outcomes = [TrialOutcome(
        independence_certificate([EMPTY, Composition.of(2), Composition.of(2, 1)], 2), planted=False)]
    for _ in range(trials):
        chosen = sorted(rng.sample(pool, rng.randint(1, min(max_candidates, len(pool)))))
        degree = rng.randint(0, max_degree)
        outcomes.append(TrialOutcome(independence_certificate(chosen, degree), planted=False))

    small = [c for c in pool if c.weight <= max_weight - 2]
    for _ in range(planted):
        a, b = rng.choice(small), rng.choice(small)
        candidates, expected = stuffle_relation(a, b)
        cert = independence_certificate(candidates, 0)
        error = _coefficient_error(cert, expected) if cert.relation is not None else None
        outcomes.append(TrialOutcome(cert, True, tuple(expected), error))

    failed = sum(1 for o in outcomes if not o.passed)
    if failed:
        logger.warning(f"{failed} of {len(outcomes)} independence trials did not match expectations")
    return outcomes
