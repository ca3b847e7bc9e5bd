import mpmath
import pytest

from algebra.composition import EMPTY, Composition
from algebra.errors import DivergentCompositionError, DomainError, PrecisionError
from lab.identities import (
    CheckReport,
    HurwitzFunction,
    check_depth_one,
    check_difference_equation,
    check_stuffle_identity,
    depth_one_suite,
    difference_equation_suite,
    difference_operator,
    end_to_end_check,
    end_to_end_suite,
    j_kernel,
    stuffle_identity_suite,
)

C = Composition.of


class TestCheckReport:
    def test_verdict(self):
        report = CheckReport("diffeq", "x", ("1", "2"), (1e-14, 3e-12), 1e-12)
        assert report.max_residual == 3e-12
        assert not report.passed
        assert report.verdict == "fail"

    def test_no_points_passes(self):
        assert CheckReport("stuffle", "x", (), (), 1e-9).passed


class TestDifferenceOperator:
    def test_on_a_polynomial(self):
        assert difference_operator(lambda z: z * z, 3) == 4 - 9

    def test_on_depth_one(self):
        f = HurwitzFunction(C(2))
        assert complex(difference_operator(f, 1)) == pytest.approx(1.0, abs=1e-12)

    def test_pole_surfaces(self):
        with pytest.raises(DomainError):
            difference_operator(HurwitzFunction(C(2)), 0)


class TestHurwitzFunction:
    def test_regularized_depth_one(self):
        assert complex(HurwitzFunction(C(1))(0.5)) == pytest.approx(-0.6137056388801094, abs=1e-12)

    def test_divergent(self):
        with pytest.raises(DivergentCompositionError):
            HurwitzFunction(C(1, 2))

    def test_repr(self):
        assert repr(HurwitzFunction(C(2, 1))) == "He(2,1)"


class TestJKernel:
    def test_depth_one(self):
        assert complex(j_kernel(C(3), 2)) == pytest.approx(0.125)

    def test_deeper_is_zero(self):
        assert j_kernel(C(2, 1), 2) == 0

    def test_zero_is_rejected(self):
        with pytest.raises(DomainError):
            j_kernel(C(2), 0)


class TestDifferenceEquation:
    @pytest.mark.parametrize("c", [C(2), C(2, 1), C(3, 1, 2), C(2, 1, 1)])
    def test_holds(self, c):
        report = check_difference_equation(c, ["1", "2", "0.5", "1,1"], tolerance=1e-9)
        assert report.passed, report
        assert report.kind == "diffeq"
        assert report.points == ("1", "2", "0.5", "1,1")

    def test_complex_point_values(self):
        report = check_difference_equation(C(2, 1), [complex(0.5, 2)], tolerance=1e-9)
        assert report.points == ("0.5+2.0i",)
        assert report.passed

    def test_empty_composition(self):
        with pytest.raises(ValueError):
            check_difference_equation(EMPTY, ["1"])

    def test_divergent(self):
        with pytest.raises(DivergentCompositionError):
            check_difference_equation(C(1, 2), ["1"])

    def test_tolerance_beyond_precision(self):
        with pytest.raises(PrecisionError):
            check_difference_equation(C(2), ["1"], tolerance=1e-30, precision=28)

    def test_suite_covers_every_composition(self):
        reports = difference_equation_suite(4, points=["1", "0.5"])
        assert len(reports) == 1 + 2 + 4
        assert all(r.passed for r in reports)


class TestStuffleIdentity:
    def test_square(self):
        report = check_stuffle_identity(C(2), C(2), ["0", "0.5", "1,1"])
        assert report.passed
        assert report.details == {"terms": 2}

    def test_mixed_depths(self):
        assert check_stuffle_identity(C(2, 1), C(3), ["0.5", "2,1"]).passed

    def test_empty_operand(self):
        assert check_stuffle_identity(EMPTY, C(2, 1), ["1"]).passed

    def test_divergent(self):
        with pytest.raises(DivergentCompositionError):
            check_stuffle_identity(C(1), C(2), ["1"])

    def test_suite_pairs(self):
        reports = stuffle_identity_suite(5, points=["0.5"])
        # (2)(2), (2)(3), (2)(2,1)
        assert len(reports) == 3
        assert all(r.passed for r in reports)


class TestEndToEnd:
    def test_square_of_two(self, table7):
        report = end_to_end_check(C(2, 2), "0.5", 1e-9, table7)
        assert report.passed
        assert report.details["normal_form"] == "-1/2·G(4) + 1/2·G(2)^2"

    def test_suite(self, table7):
        reports = end_to_end_suite(4, table7, points=["0", "1,1"])
        assert len(reports) == 7 * 2
        assert all(r.passed for r in reports)


class TestDepthOneReference:
    def test_against_mpmath(self):
        report = check_depth_one(3, ["0", "0.5", "-0.5", "1,1"], tolerance=1e-12)
        assert report.passed
        assert report.kind == "depth1"

    def test_suite(self):
        reports = depth_one_suite((2, 4), points=["1", "10"])
        assert [r.description for r in reports] == ["He(2)(z) = ζ(2, z+1)", "He(4)(z) = ζ(4, z+1)"]
        assert all(r.passed for r in reports)

    def test_reference_is_mpmath_hurwitz_zeta(self):
        with mpmath.workdps(30):
            direct = complex(mpmath.zeta(2, 1.5))
        assert complex(HurwitzFunction(C(2))(0.5)) == pytest.approx(direct, abs=1e-12)


@pytest.mark.slow
class TestFullScale:
    def test_difference_equation_to_weight_six(self):
        reports = difference_equation_suite(6)
        assert len(reports) == 1 + 2 + 4 + 8 + 16
        assert all(r.points == ("1", "2", "0.5", "1,1") for r in reports)
        assert all(r.passed for r in reports), [r.description for r in reports if not r.passed]

    def test_stuffle_identity_to_weight_six(self):
        reports = stuffle_identity_suite(6)
        assert len(reports) == 10
        assert all(r.points == ("0", "0.5", "1,1") for r in reports)
        assert all(r.passed for r in reports), [r.description for r in reports if not r.passed]

    def test_end_to_end_to_weight_five(self, table7):
        reports = end_to_end_suite(5, table7)
        assert len(reports) == (1 + 2 + 4 + 8) * 3
        assert all(r.passed for r in reports), [r.description for r in reports if not r.passed]
