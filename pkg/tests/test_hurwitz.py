import math
from fractions import Fraction

import mpmath
import pytest

from algebra.composition import EMPTY, Composition
from algebra.errors import DivergentCompositionError, DomainError, PrecisionError
from algebra.graded import reduce_to_normal_form
from numerics.hurwitz import (
    BoundKind,
    EvalRequest,
    bernoulli,
    eval_h1,
    eval_hmzf,
    eval_mzv,
    eval_polynomial,
    hurwitz_zeta,
    tail_series,
)

C = Composition.of

ZETA2 = 1.6449340668482264
ZETA3 = 1.2020569031595942
ZETA4 = 1.0823232337111381


def he(c, z=0, tolerance=1e-12, precision=28):
    return eval_hmzf(EvalRequest(c, z, tolerance, precision))


class TestMultipleZetaValues:
    def test_zeta_two(self):
        assert complex(eval_mzv(C(2))) == pytest.approx(ZETA2, abs=1e-12)

    def test_euler_sum(self):
        assert complex(eval_mzv(C(2, 1))) == pytest.approx(ZETA3, abs=1e-12)

    def test_two_two(self):
        assert complex(eval_mzv(C(2, 2))) == pytest.approx((ZETA2 ** 2 - ZETA4) / 2, abs=1e-12)

    def test_three_one(self):
        assert complex(eval_mzv(C(3, 1))) == pytest.approx(ZETA4 / 4, abs=1e-12)

    def test_two_one_one_is_zeta_four(self):
        assert complex(eval_mzv(C(2, 1, 1))) == pytest.approx(ZETA4, abs=1e-11)

    def test_empty_is_exactly_one(self):
        result = he(EMPTY, 0.5)
        assert result.value == 1
        assert result.error_bound == 0
        assert result.certified


class TestDepthOne:
    @pytest.mark.parametrize("s", [2, 3, 5])
    @pytest.mark.parametrize("z", [0, 0.5, 1, 10, -0.5, 2.25])
    def test_against_mpmath_zeta(self, s, z):
        result = he(C(s), z)
        with mpmath.workdps(40):
            truth = mpmath.zeta(s, mpmath.mpf(z) + 1)
            assert abs(mpmath.mpmathify(result.value) - truth) <= 2 * result.error_bound + mpmath.mpf(10) ** -26
        assert result.certified

    def test_complex_point(self):
        z = complex(1, 1)
        result = he(C(3), z)
        expected = complex(mpmath.zeta(3, mpmath.mpc(z) + 1))
        assert complex(result) == pytest.approx(expected, abs=1e-12)
        assert result.certified

    @pytest.mark.parametrize("s", [2, 3, 6])
    @pytest.mark.parametrize("z", [complex(1, 1), complex(0.5, -3), complex(-0.5, 0.25), complex(4, 40)])
    def test_complex_bound_contains_mpmath_value(self, s, z):
        result = he(C(s), z)
        assert result.certified
        with mpmath.workdps(40):
            truth = mpmath.zeta(s, mpmath.mpc(z) + 1)
            assert abs(mpmath.mpmathify(result.value) - truth) <= result.error_bound + mpmath.mpf(10) ** -26

    def test_hurwitz_zeta_at_complex_a_is_certified(self):
        result = hurwitz_zeta(4, complex(2, 1))
        assert result.certified
        assert complex(result) == pytest.approx(complex(mpmath.zeta(4, mpmath.mpc(2, 1))), abs=1e-13)

    def test_hurwitz_zeta_convention(self):
        assert complex(hurwitz_zeta(2, 1)) == pytest.approx(ZETA2, abs=1e-13)
        assert complex(hurwitz_zeta(2, 0.5)) == pytest.approx(math.pi ** 2 / 2, abs=1e-12)

    def test_hurwitz_zeta_domain(self):
        with pytest.raises(DomainError):
            hurwitz_zeta(2, 0)
        with pytest.raises(DomainError):
            hurwitz_zeta(2, -3)
        with pytest.raises(ValueError):
            hurwitz_zeta(1, 1)


class TestDeeperSums:
    def test_two_one_at_half(self):
        z = mpmath.mpf("0.5")
        with mpmath.workdps(30):
            # inner sum over n2 < n1 is ψ(n1 + z) - ψ(1 + z)
            truth = mpmath.nsum(
                lambda n: (n + z) ** -2 * (mpmath.digamma(n + z) - mpmath.digamma(1 + z)),
                [1, mpmath.inf], method="euler-maclaurin")
        assert complex(he(C(2, 1), 0.5)) == pytest.approx(complex(truth), abs=1e-10)

    def test_conjugate_symmetry(self):
        z = complex(0.5, 2)
        up = complex(he(C(3, 1), z))
        down = complex(he(C(3, 1), z.conjugate()))
        assert down == pytest.approx(up.conjugate(), abs=1e-12)

    def test_point_formats_agree(self):
        assert complex(he(C(2, 1), "1,1")) == pytest.approx(complex(he(C(2, 1), complex(1, 1))), abs=1e-14)

    def test_refinements_recorded(self):
        result = he(C(2, 1), 0.5)
        assert result.params.bound_kind is BoundKind.HEURISTIC
        assert result.params.refinements >= 1
        assert result.error_bound < 1e-12

    def test_deep_compositions_are_unvalidated(self):
        assert he(C(2, 1, 1, 1, 1), 1).params.bound_kind is BoundKind.UNVALIDATED
        assert he(C(8, 1), 1).params.bound_kind is BoundKind.UNVALIDATED

    def test_decays_with_z(self):
        far = complex(he(C(2, 1), 1000))
        assert 0 < far.real < 2e-3
        assert far.real < complex(he(C(2, 1), 10)).real


class TestRegularizedDepthOne:
    def test_half(self):
        assert complex(eval_h1(0.5)) == pytest.approx(2 * math.log(2) - 2, abs=1e-13)

    def test_zero_is_exact(self):
        result = eval_h1(0)
        assert result.value == 0 and result.error_bound == 0

    @pytest.mark.parametrize("z", [1, 3.5, complex(1, 1), -0.25])
    def test_against_digamma(self, z):
        expected = complex(-(mpmath.digamma(1 + mpmath.mpc(z)) + mpmath.euler))
        assert complex(eval_h1(z)) == pytest.approx(expected, abs=1e-12)

    def test_pole(self):
        with pytest.raises(DomainError):
            eval_h1(-2)


class TestPolynomials:
    def test_normal_form_matches_direct_value(self, table7):
        for c in (C(2, 2), C(3, 2), C(2, 2, 1)):
            nf = reduce_to_normal_form(c, table7)
            assert complex(eval_polynomial(nf, 0.5)) == pytest.approx(complex(he(c, 0.5)), abs=1e-10)

    def test_bound_kind_is_worst_of_factors(self, table7):
        nf = reduce_to_normal_form(C(2, 2), table7)
        assert eval_polynomial(nf, 0).params.bound_kind is BoundKind.CERTIFIED
        nf = reduce_to_normal_form(C(2, 2, 1), table7)
        assert eval_polynomial(nf, 0).params.bound_kind is BoundKind.HEURISTIC


class TestErrors:
    def test_divergent(self):
        with pytest.raises(DivergentCompositionError):
            he(C(1, 2))

    @pytest.mark.parametrize("z", [-1, -4, complex(-2, 1e-20)])
    def test_poles(self, z):
        with pytest.raises(DomainError):
            he(C(2), z)

    def test_negative_non_integer_is_fine(self):
        assert math.isfinite(abs(complex(he(C(2), -1.5))))

    def test_tolerance_beyond_precision(self):
        with pytest.raises(PrecisionError):
            EvalRequest(C(2), 0, 1e-30, 28)

    def test_tolerance_must_be_positive(self):
        with pytest.raises(PrecisionError):
            EvalRequest(C(2), 0, 0.0, 28)


class TestSeries:
    def test_bernoulli(self):
        assert [str(bernoulli(n)) for n in (0, 2, 4, 6)] == ["1", "1/6", "-1/30", "1/42"]

    def test_depth_one_tail_leading_terms(self):
        (series,) = tail_series((2,), 4)
        assert dict(series)[1] == 1
        assert dict(series)[2] == Fraction(-1, 2)
