"""High-precision evaluation of Hurwitz multizeta functions.

    He^{s1,...,sr}(z) = Σ_{0 < n_r < ... < n_1} Π (n_i + z)^{-s_i}

For a prefix (s1..sk) let F_k(m) = Σ_{m < n_k < ... < n_1} Π_{i≤k} (n_i + z)^{-s_i}.
Then F_k(m) = F_k(m+1) + (m+1+z)^{-s_k} F_{k-1}(m+1) with F_0 = 1, and
He^s(z) = F_r(0). The tails F_k(N) at a shift point N come from an exact
rational asymptotic series in 1/(N+z): Euler-Maclaurin applied to pure powers
gives

    Σ_{j≥1} (x+j)^{-p} ~ x^{1-p}/(p-1) - x^{-p}/2
                         + Σ_k B_2k/(2k)! (p)_{2k-1} x^{-p-2k+1}

and each F_k is a sum of such terms, so the expansion propagates through the
depth with no numerical differentiation.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath

from algebra.composition import Composition, is_convergent
from algebra.errors import DivergentCompositionError, DomainError, PrecisionError
from algebra.graded import GeneratorPolynomial
from numerics.points import parse_point
from numerics.settings import get_settings

logger = logging.getLogger(__name__)

_local = threading.local()


class BoundKind(str, Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"
    UNVALIDATED = "heuristic-unvalidated"

    @classmethod
    def worst(cls, kinds) -> BoundKind:
        order = [cls.CERTIFIED, cls.HEURISTIC, cls.UNVALIDATED]
        return max(kinds, key=order.index, default=cls.CERTIFIED)


@dataclass(frozen=True)
class EvalParams:
    shift: int
    order: int
    precision: int
    bound_kind: BoundKind
    refinements: int = 0


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpc
    error_bound: mpmath.mpf
    params: EvalParams

    def __complex__(self) -> complex:
        return complex(self.value)

    @property
    def certified(self) -> bool:
        return self.params.bound_kind is BoundKind.CERTIFIED


@dataclass(frozen=True)
class EvalRequest:
    composition: Composition
    z: object = 0
    tolerance: float | None = None
    precision: int | None = None

    def __post_init__(self):
        settings = get_settings().evaluation
        if self.tolerance is None:
            object.__setattr__(self, "tolerance", settings.tolerance)
        if self.precision is None:
            object.__setattr__(self, "precision", settings.precision)
        check_tolerance(self.tolerance, self.precision)


def check_tolerance(tolerance: float, precision: int):
    guard = get_settings().evaluation.guard_digits
    if tolerance <= 0:
        raise PrecisionError(f"tolerance must be positive, got {tolerance}")
    if tolerance < 10.0 ** (-(precision - guard)):
        raise PrecisionError(
            f"tolerance {tolerance:g} needs more than {precision} - {guard} guard digits; "
            f"raise the precision")


def working_context(precision: int) -> mpmath.MPContext:
    # one private context per thread and precision: mpmath contexts hold
    # mutable precision state
    contexts = getattr(_local, "contexts", None)
    if contexts is None:
        contexts = _local.contexts = {}
    ctx = contexts.get(precision)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.dps = precision
        contexts[precision] = ctx
    return ctx


def to_mpc(ctx, z) -> mpmath.mpc:
    if isinstance(z, Fraction):
        return ctx.mpc(ctx.mpf(z.numerator) / z.denominator)
    if isinstance(z, str):
        z = parse_point(z)
    return ctx.mpc(z)


def check_off_poles(ctx, z, first_index: int, what: str = "z"):
    """Reject z within pole_distance of -first_index, -first_index-1, ..."""
    distance = get_settings().evaluation.pole_distance
    nearest = int(ctx.nint(z.real))
    if nearest <= -first_index and abs(z - nearest) < distance:
        raise DomainError(f"{what} = {ctx.nstr(z, 8)} is on the pole set")


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


def _rising(p: int, k: int) -> int:
    result = 1
    for i in range(k):
        result *= p + i
    return result


def _bernoulli_term(p: int, k: int) -> tuple[int, Fraction]:
    """k-th Euler-Maclaurin correction for Σ (x+j)^{-p}: (power, coefficient)."""
    return p + 2 * k - 1, bernoulli(2 * k) / math.factorial(2 * k) * _rising(p, 2 * k - 1)


@lru_cache(maxsize=None)
def _power_sum_series(p: int, cap: int) -> tuple[tuple[int, Fraction], ...]:
    """Expansion of Σ_{j≥1} (x+j)^{-p} in powers x^{-q} with q < cap."""
    terms = [(p - 1, Fraction(1, p - 1)), (p, Fraction(-1, 2))]
    k = 1
    while p + 2 * k - 1 < cap:
        terms.append(_bernoulli_term(p, k))
        k += 1
    return tuple((q, c) for q, c in terms if q < cap)


@lru_cache(maxsize=1024)
def tail_series(parts: tuple[int, ...], order: int) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    """Asymptotic series of F_k(x) for every prefix k = 1..r.

    Each series keeps ``order`` powers starting at its leading one.
    """
    series: dict[int, Fraction] = {0: Fraction(1)}
    prefixes = []
    for s in parts:
        lead = min(series) + s - 1
        cap = lead + order
        grown: dict[int, Fraction] = {}
        for q, c in series.items():
            for power, coeff in _power_sum_series(q + s, cap):
                grown[power] = grown.get(power, Fraction(0)) + c * coeff
        series = {q: c for q, c in grown.items() if c}
        prefixes.append(tuple(sorted(series.items())))
    return tuple(prefixes)


def _eval_series(ctx, series, u):
    """Σ c_q u^q, plus the magnitude of the highest retained term."""
    total = ctx.mpc(0)
    last = ctx.mpf(0)
    for q, c in series:
        term = (ctx.mpf(c.numerator) / c.denominator) * u ** q
        total += term
        last = abs(term)
    return total, last


def _nested_sum(ctx, parts: tuple[int, ...], z, shift: int, order: int):
    u = 1 / (shift + z)
    F = [ctx.mpc(1)]
    truncation = ctx.mpf(0)
    for series in tail_series(parts, order):
        value, last = _eval_series(ctx, series, u)
        F.append(value)
        truncation += last
    r = len(parts)
    for m in range(shift - 1, -1, -1):
        inv = 1 / (m + 1 + z)
        for k in range(r, 0, -1):
            F[k] += inv ** parts[k - 1] * F[k - 1]
    return F[r], truncation


def _default_shift(z, precision: int) -> int:
    # keep Re(N + z) ≥ precision + 10 so the asymptotic tails are far in
    return precision + 10 + max(0, int(math.ceil(-float(z.real))))


def _rounding_floor(ctx, value, steps: int):
    return ctx.eps * (steps + 10) * max(1, abs(value))


def _evaluate(parts: tuple[int, ...], z, tolerance: float, precision: int) -> EvalResult:
    settings = get_settings().evaluation
    ctx = working_context(precision)
    zz = to_mpc(ctx, z)
    check_off_poles(ctx, zz, first_index=1)

    shift = _default_shift(zz, precision)
    order = precision + 10
    value, truncation = _nested_sum(ctx, parts, zz, shift, order)

    if len(parts) == 1:
        # depth-1 tail: with f(t) = (x+t)^{-p} the Euler-Maclaurin remainder is at most
        # the first omitted correction plus |B_2k|/(2k)! ∫|f^(2k)|, and |x+t| ≥ Re x + t
        # turns that integral into the same correction taken at 1/Re x.
        # For real x the remainder is bounded by the omitted correction alone.
        p = parts[0]
        k = 1
        while _bernoulli_term(p, k)[0] < p - 1 + order:
            k += 1
        power, coeff = _bernoulli_term(p, k)
        size = abs(ctx.mpf(coeff.numerator) / coeff.denominator)
        x = shift + zz
        omitted = size * abs(1 / x) ** power
        if zz.imag != 0:
            omitted += size * (1 / x.real) ** power
        bound = omitted + _rounding_floor(ctx, value, shift)
        params = EvalParams(shift, order, precision, BoundKind.CERTIFIED)
        return EvalResult(value, bound, params)

    validated = False
    diff = ctx.mpf(0)
    refinements = 0
    for refinements in range(1, settings.max_refinements + 1):
        shift, order = 2 * shift, order + 8
        refined, truncation = _nested_sum(ctx, parts, zz, shift, order)
        diff = abs(refined - value)
        value = refined
        logger.debug(f"{parts} at z={zz}: refinement {refinements}, change {ctx.nstr(diff, 3)}")
        if diff <= tolerance / 4:
            validated = True
            break

    kind = BoundKind.HEURISTIC
    weight = sum(parts)
    if not validated or len(parts) > settings.depth_cap or weight > settings.weight_cap:
        kind = BoundKind.UNVALIDATED
    if not validated:
        logger.warning(f"He^{parts} at z={ctx.nstr(zz, 8)}: refinements disagree by {ctx.nstr(diff, 3)}")
    bound = diff + truncation + _rounding_floor(ctx, value, shift)
    return EvalResult(value, bound, EvalParams(shift, order, precision, kind, refinements))


def _exact_one(precision: int) -> EvalResult:
    ctx = working_context(precision)
    return EvalResult(ctx.mpc(1), ctx.mpf(0), EvalParams(0, 0, precision, BoundKind.CERTIFIED))


def hurwitz_zeta(s: int, a, precision: int | None = None, tolerance: float | None = None) -> EvalResult:
    """ζ(s, a) = Σ_{n≥0} (n + a)^{-s} for integer s ≥ 2."""
    settings = get_settings().evaluation
    precision = precision or settings.precision
    tolerance = tolerance or settings.tolerance
    if s < 2:
        raise ValueError(f"s must be ≥ 2, got {s}")
    check_tolerance(tolerance, precision)
    ctx = working_context(precision)
    aa = to_mpc(ctx, a)
    check_off_poles(ctx, aa, first_index=0, what="a")
    # ζ(s, a) = He^s(a - 1)
    return _evaluate((s,), aa - 1, tolerance, precision)


def eval_hmzf(req: EvalRequest) -> EvalResult:
    c = req.composition
    if not c:
        return _exact_one(req.precision)
    if not is_convergent(c):
        raise DivergentCompositionError(c)
    return _evaluate(c.parts, req.z, req.tolerance, req.precision)


def eval_mzv(c: Composition, tolerance: float | None = None, precision: int | None = None) -> EvalResult:
    return eval_hmzf(EvalRequest(c, 0, tolerance, precision))


def _digamma_shifted(ctx, y, terms: int):
    """Asymptotic ψ(y + 1) ~ ln y + 1/(2y) - Σ B_2k / (2k y^2k), with last term size."""
    total = ctx.log(y) + 1 / (2 * y)
    last = ctx.mpf(0)
    for k in range(1, terms + 1):
        b = bernoulli(2 * k)
        term = (ctx.mpf(b.numerator) / b.denominator) / (2 * k) / y ** (2 * k)
        total -= term
        last = abs(term)
    return total, last


def _h1_sum(ctx, z, shift: int, terms: int):
    direct = ctx.mpc(0)
    for n in range(1, shift + 1):
        direct += 1 / (n + z) - ctx.mpf(1) / n
    # Σ_{n>N} (1/(n+z) - 1/n) = ψ(N+1) - ψ(N+z+1)
    at_n, err_n = _digamma_shifted(ctx, ctx.mpf(shift), terms)
    at_x, err_x = _digamma_shifted(ctx, shift + z, terms)
    return direct + at_n - at_x, err_n + err_x


def eval_h1(z, precision: int | None = None, tolerance: float | None = None) -> EvalResult:
    """Regularized He^1(z) = Σ_{n>0} (1/(n+z) - 1/n)."""
    settings = get_settings().evaluation
    precision = precision or settings.precision
    tolerance = tolerance or settings.tolerance
    check_tolerance(tolerance, precision)
    ctx = working_context(precision)
    zz = to_mpc(ctx, z)
    check_off_poles(ctx, zz, first_index=1)
    if zz == 0:
        return EvalResult(ctx.mpc(0), ctx.mpf(0), EvalParams(0, 0, precision, BoundKind.CERTIFIED))

    shift = _default_shift(zz, precision)
    terms = precision // 2 + 5
    value, truncation = _h1_sum(ctx, zz, shift, terms)
    refined, truncation = _h1_sum(ctx, zz, 2 * shift, terms + 4)
    diff = abs(refined - value)
    kind = BoundKind.CERTIFIED if zz.imag == 0 else BoundKind.HEURISTIC
    if diff > tolerance / 4:
        kind = BoundKind.UNVALIDATED
        logger.warning(f"He^1 at z={ctx.nstr(zz, 8)}: refinements disagree by {ctx.nstr(diff, 3)}")
    bound = diff + truncation + _rounding_floor(ctx, refined, 2 * shift)
    return EvalResult(refined, bound, EvalParams(2 * shift, terms + 4, precision, kind, 1))


def eval_polynomial(p: GeneratorPolynomial, z, tolerance: float | None = None,
                    precision: int | None = None) -> EvalResult:
    """Substitute He-values for the generators of ``p`` and propagate the error."""
    settings = get_settings().evaluation
    precision = precision or settings.precision
    tolerance = tolerance or settings.tolerance
    check_tolerance(tolerance, precision)
    ctx = working_context(precision)

    spread = sum(abs(q) * max(1, m.total_degree) for m, q in p.items()) or 1
    inner_tolerance = max(tolerance / (10 * float(spread)), 10.0 ** (-(precision - settings.guard_digits)))
    values: dict[Composition, EvalResult] = {}
    for g in sorted(p.generators()):
        values[g] = eval_hmzf(EvalRequest(g, z, inner_tolerance, precision))

    total = ctx.mpc(0)
    error = ctx.mpf(0)
    for m, q in p.items():
        coeff = ctx.mpf(q.numerator) / q.denominator
        product = ctx.mpc(1)
        magnitude = ctx.mpf(1)
        upper = ctx.mpf(1)
        for g, e in m.factors:
            v = values[g]
            product *= v.value ** e
            magnitude *= abs(v.value) ** e
            upper *= (abs(v.value) + v.error_bound) ** e
        total += coeff * product
        error += abs(coeff) * (upper - magnitude)
    error += _rounding_floor(ctx, total, len(p))

    results = list(values.values())
    params = EvalParams(
        shift=max((r.params.shift for r in results), default=0),
        order=max((r.params.order for r in results), default=0),
        precision=precision,
        bound_kind=BoundKind.worst(r.params.bound_kind for r in results),
        refinements=max((r.params.refinements for r in results), default=0),
    )
    return EvalResult(total, error, params)
