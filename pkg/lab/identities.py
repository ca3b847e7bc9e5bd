"""Numerical checks of the identities satisfied by Hurwitz multizeta functions.

    Δ₋f(z) = f(z - 1) - f(z)
    Δ₋He^{s1..sr}(z) = z^{-sr} · He^{s1..s(r-1)}(z)
    He^a · He^b = Σ_t coeff_t · He^t          (t ranging over a ⋆ b)
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import mpmath

from algebra.composition import Composition, enumerate_compositions, is_convergent
from algebra.errors import DivergentCompositionError, DomainError
from algebra.graded import GeneratorTable, reduce_to_normal_form
from algebra.stuffle import stuffle
from numerics.hurwitz import (
    EvalRequest,
    EvalResult,
    check_tolerance,
    eval_h1,
    eval_hmzf,
    eval_polynomial,
    to_mpc,
    working_context,
)
from numerics.points import format_point, parse_point
from numerics.settings import get_settings

logger = logging.getLogger(__name__)

REGULARIZED = Composition.of(1)


@dataclass(frozen=True)
class CheckReport:
    kind: str
    description: str
    points: tuple[str, ...]
    residuals: tuple[float, ...]
    tolerance: float
    details: dict = field(default_factory=dict, compare=False)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class HurwitzFunction:
    """z ↦ He^c(z) as a plain callable; (1) evaluates the regularized He¹."""

    def __init__(self, composition: Composition, tolerance: float | None = None,
                 precision: int | None = None):
        settings = get_settings().evaluation
        if composition != REGULARIZED and not is_convergent(composition):
            raise DivergentCompositionError(composition)
        self.composition = composition
        self.tolerance = tolerance or settings.tolerance
        self.precision = precision or settings.precision

    def evaluate(self, z) -> EvalResult:
        if self.composition == REGULARIZED:
            return eval_h1(z, self.precision, self.tolerance)
        return eval_hmzf(EvalRequest(self.composition, z, self.tolerance, self.precision))

    def __call__(self, z):
        return self.evaluate(z).value

    def __repr__(self) -> str:
        return f"He{self.composition!r}"


def _as_point(z):
    return parse_point(z) if isinstance(z, str) else z


def _point_text(z) -> str:
    return z if isinstance(z, str) else format_point(complex(z))


def difference_operator(f: Callable, z):
    """Δ₋f(z) = f(z - 1) - f(z); poles surface as the DomainError raised by ``f``."""
    z = _as_point(z)
    return f(z - 1) - f(z)


def j_kernel(c: Composition, z, precision: int | None = None):
    """z^{-s1} for a depth-1 composition, 0 otherwise."""
    ctx = working_context(precision or get_settings().evaluation.precision)
    zz = to_mpc(ctx, _as_point(z))
    if zz == 0:
        raise DomainError("the J kernel is undefined at z = 0")
    if c.depth != 1:
        return ctx.mpc(0)
    return zz ** (-c[0])


def _inner_tolerance(tolerance: float, precision: int) -> float:
    guard = get_settings().evaluation.guard_digits
    return max(min(get_settings().evaluation.tolerance, tolerance / 100),
               10.0 ** (-(precision - guard)))


def _precision(precision: int | None) -> int:
    return precision or get_settings().evaluation.precision


def check_difference_equation(c: Composition, points: Sequence, tolerance: float | None = None,
                              precision: int | None = None) -> CheckReport:
    if not c:
        raise ValueError("the difference equation needs a nonempty composition")
    if not is_convergent(c):
        raise DivergentCompositionError(c)
    tolerance = tolerance or get_settings().lab.check_tolerance
    precision = _precision(precision)
    check_tolerance(tolerance, precision)
    inner = _inner_tolerance(tolerance, precision)
    ctx = working_context(precision)

    f = HurwitzFunction(c, inner, precision)
    # the difference equation drops the last exponent
    shorter = HurwitzFunction(c[:-1], inner, precision)
    residuals = []
    for raw in points:
        z = to_mpc(ctx, _as_point(raw))
        lhs = difference_operator(f, z)
        rhs = z ** (-c[-1]) * shorter(z)
        residuals.append(float(abs(lhs - rhs)))
    report = CheckReport(
        kind="diffeq",
        description=f"Δ₋He{c!r}(z) = z^-{c[-1]}·He{c[:-1]!r}(z)",
        points=tuple(_point_text(p) for p in points),
        residuals=tuple(residuals),
        tolerance=tolerance,
    )
    logger.debug(f"{report.description}: max residual {report.max_residual:.3g}")
    return report


def check_stuffle_identity(a: Composition, b: Composition, points: Sequence,
                           tolerance: float | None = None, precision: int | None = None) -> CheckReport:
    for c in (a, b):
        if not is_convergent(c):
            raise DivergentCompositionError(c)
    tolerance = tolerance or get_settings().lab.check_tolerance
    precision = _precision(precision)
    check_tolerance(tolerance, precision)
    inner = _inner_tolerance(tolerance, precision)
    ctx = working_context(precision)

    expansion = stuffle(a, b)
    residuals = []
    for raw in points:
        z = _as_point(raw)
        values = {}

        def he(c):
            if c not in values:
                values[c] = HurwitzFunction(c, inner, precision)(z)
            return values[c]

        lhs = he(a) * he(b)
        rhs = ctx.mpc(0)
        for t, q in expansion.items():
            rhs += (ctx.mpf(q.numerator) / q.denominator) * he(t)
        residuals.append(float(abs(lhs - rhs)))
    return CheckReport(
        kind="stuffle",
        description=f"He{a!r}·He{b!r} = Σ He over {a!r}⋆{b!r}",
        points=tuple(_point_text(p) for p in points),
        residuals=tuple(residuals),
        tolerance=tolerance,
        details={"terms": len(expansion)},
    )


def end_to_end_check(c: Composition, z, tolerance: float | None, table: GeneratorTable,
                     precision: int | None = None) -> CheckReport:
    """Evaluate ``c`` directly and through its normal form; compare."""
    tolerance = tolerance or get_settings().lab.check_tolerance
    precision = _precision(precision)
    check_tolerance(tolerance, precision)
    inner = _inner_tolerance(tolerance, precision)

    normal_form = reduce_to_normal_form(c, table)
    direct = HurwitzFunction(c, inner, precision).evaluate(_as_point(z))
    via_generators = eval_polynomial(normal_form, _as_point(z), inner, precision)
    residual = float(abs(direct.value - via_generators.value))
    return CheckReport(
        kind="endtoend",
        description=f"He{c!r} = {normal_form}",
        points=(_point_text(z),),
        residuals=(residual,),
        tolerance=tolerance,
        details={"normal_form": str(normal_form)},
    )


def check_depth_one(s: int, points: Sequence, tolerance: float | None = None,
                    precision: int | None = None) -> CheckReport:
    """Compare He^s(z) with mpmath's own Hurwitz zeta ζ(s, z + 1)."""
    tolerance = tolerance or get_settings().evaluation.tolerance
    precision = _precision(precision)
    check_tolerance(tolerance, precision)
    c = Composition.of(s)
    f = HurwitzFunction(c, _inner_tolerance(tolerance, precision), precision)
    residuals = []
    with mpmath.workdps(precision + 10):
        for raw in points:
            z = _as_point(raw)
            reference = mpmath.zeta(s, mpmath.mpc(z) + 1)
            residuals.append(float(abs(mpmath.mpc(f(z)) - reference)))
    return CheckReport(
        kind="depth1",
        description=f"He{c!r}(z) = ζ({s}, z+1)",
        points=tuple(_point_text(p) for p in points),
        residuals=tuple(residuals),
        tolerance=tolerance,
    )


def _convergent_up_to(max_weight: int) -> list[Composition]:
    return [c for n in range(2, max_weight + 1) for c in enumerate_compositions(n, convergent_only=True)]


def difference_equation_suite(max_weight: int, points: Sequence | None = None,
                              tolerance: float | None = None,
                              precision: int | None = None) -> list[CheckReport]:
    points = points or get_settings().lab.diffeq_points
    return [check_difference_equation(c, points, tolerance, precision)
            for c in _convergent_up_to(max_weight)]


def stuffle_identity_suite(max_weight: int, points: Sequence | None = None,
                           tolerance: float | None = None,
                           precision: int | None = None) -> list[CheckReport]:
    """Every unordered convergent pair with total weight ≤ max_weight."""
    points = points or get_settings().lab.stuffle_points
    comps = _convergent_up_to(max_weight)
    reports = []
    for i, a in enumerate(comps):
        for b in comps[i:]:
            if a.weight + b.weight <= max_weight:
                reports.append(check_stuffle_identity(a, b, points, tolerance, precision))
    return reports


def end_to_end_suite(max_weight: int, table: GeneratorTable, points: Sequence | None = None,
                     tolerance: float | None = None,
                     precision: int | None = None) -> list[CheckReport]:
    points = points or get_settings().lab.endtoend_points
    return [end_to_end_check(c, z, tolerance, table, precision)
            for c in _convergent_up_to(max_weight) for z in points]


def depth_one_suite(exponents: Iterable[int] = (2, 3, 4), points: Sequence | None = None,
                    tolerance: float | None = None,
                    precision: int | None = None) -> list[CheckReport]:
    points = points or get_settings().lab.depth_one_points
    return [check_depth_one(s, points, tolerance, precision) for s in exponents]

