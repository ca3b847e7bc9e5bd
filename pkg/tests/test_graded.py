from fractions import Fraction

import pytest

from algebra.composition import EMPTY, Composition, FormalSum, enumerate_compositions
from algebra.errors import DivergentCompositionError, TableRangeError
from algebra.graded import (
    GeneratorPolynomial,
    Monomial,
    build_generator_table,
    dimension,
    euler_product_series,
    reduce_to_normal_form,
    round_trip_failures,
    stated_dimension,
    verify_freeness,
)
from algebra.linalg import EchelonBasis, SingularMatrixError, fraction_free_rank, invert
from algebra.lyndon import count_lyndon

C = Composition.of
G = GeneratorPolynomial.generator


class TestDimension:
    def test_first_values(self):
        assert [dimension(n) for n in range(0, 7)] == [1, 0, 1, 2, 4, 8, 16]

    @pytest.mark.parametrize("n", range(2, 13))
    def test_power_of_two(self, n):
        assert dimension(n) == 2 ** (n - 2)

    def test_printed_formula_is_off_by_one_power(self):
        assert stated_dimension(0) == dimension(0)
        assert stated_dimension(1) == dimension(1)
        assert all(stated_dimension(n) == 2 * dimension(n) for n in range(2, 10))


class TestGenerators:
    def test_low_weights(self, table7):
        assert table7.generators[2] == (C(2),)
        assert table7.generators[3] == (C(3), C(2, 1))
        assert table7.generators[4] == (C(4), C(3, 1), C(2, 1, 1))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_counts_match_lyndon(self, table7, n):
        assert table7.generator_count(n) == count_lyndon(n)

    def test_first_counts(self, table7):
        assert [table7.generator_count(n) for n in range(2, 7)] == [1, 2, 3, 6, 9]

    def test_generators_are_convergent(self, table7):
        assert all(g.parts[0] >= 2 for g in table7.all_generators())

    def test_no_dependent_products(self, table7):
        assert not table7.dependent_products

    def test_monomial_counts_are_dimensions(self, table7):
        assert all(len(table7.monomials[n]) == dimension(n) for n in range(2, 8))

    def test_deterministic(self, table7):
        again = build_generator_table(7)
        assert again.generators == table7.generators
        assert again.normal_forms == table7.normal_forms

    def test_smaller_table_is_a_prefix(self, table7):
        small = build_generator_table(5)
        assert all(small.generators[n] == table7.generators[n] for n in range(2, 6))

    def test_range(self):
        with pytest.raises(TableRangeError):
            build_generator_table(1)


class TestNormalForms:
    def test_generator_is_itself(self, table7):
        assert reduce_to_normal_form(C(2, 1), table7) == G(C(2, 1))

    def test_square_of_two(self, table7):
        expected = GeneratorPolynomial({
            Monomial.of(C(2), C(2)): Fraction(1, 2),
            Monomial.of(C(4)): Fraction(-1, 2),
        })
        assert reduce_to_normal_form(C(2, 2), table7) == expected
        assert str(expected) == "-1/2·G(4) + 1/2·G(2)^2"

    def test_empty(self, table7):
        assert reduce_to_normal_form(EMPTY, table7) == GeneratorPolynomial.one()

    @pytest.mark.parametrize("n", range(2, 8))
    def test_round_trip(self, table7, n):
        for c in enumerate_compositions(n, convergent_only=True):
            assert reduce_to_normal_form(c, table7).expand() == FormalSum.monomial(c)

    def test_round_trip_failures_empty(self, table7):
        assert round_trip_failures(table7) == []
        assert round_trip_failures(table7, 4) == []

    @pytest.mark.parametrize("n", range(2, 8))
    def test_homogeneous(self, table7, n):
        for c in enumerate_compositions(n, convergent_only=True):
            nf = reduce_to_normal_form(c, table7)
            assert nf.weight_profile() == {n}
            assert nf.is_homogeneous()
            assert nf.generators() <= set(table7.all_generators())

    def test_mixed_weights_are_not_homogeneous(self):
        mixed = GeneratorPolynomial({Monomial.of(C(2)): 1, Monomial.of(C(3)): 1})
        assert mixed.weight_profile() == {2, 3}
        assert not mixed.is_homogeneous()
        assert GeneratorPolynomial.one().is_homogeneous()

    def test_divergent(self, table7):
        with pytest.raises(DivergentCompositionError):
            reduce_to_normal_form(C(1, 2), table7)

    def test_beyond_table(self, table7):
        with pytest.raises(TableRangeError):
            reduce_to_normal_form(C(8), table7)


class TestMonomial:
    def test_merges_repeated_generators(self):
        assert Monomial.of(C(2), C(3), C(2)) == Monomial(((C(2), 2), (C(3), 1)))
        assert Monomial.of(C(2), C(2)).weight == 4
        assert Monomial.of(C(2), C(2)).total_degree == 2

    def test_expand(self):
        assert Monomial.of(C(2), C(2)).expand() == FormalSum({C(2, 2): 2, C(4): 1})
        assert Monomial().expand() == FormalSum.one()

    def test_rejects_zero_exponent(self):
        with pytest.raises(ValueError):
            Monomial(((C(2), 0),))


class TestFreeness:
    def test_report_passes(self, table7):
        report = verify_freeness(7, table7)
        assert report.passed
        assert [r.weight for r in report.rows] == list(range(8))

    def test_euler_coefficients(self, table7):
        report = verify_freeness(6, table7)
        assert [r.euler_coefficient for r in report.rows] == [1, 0, 1, 2, 4, 8, 16]

    def test_discrepancies(self, table7):
        assert verify_freeness(5, table7).dimension_discrepancies == [2, 3, 4, 5]

    def test_builds_its_own_table(self):
        assert verify_freeness(4).passed

    def test_range(self):
        with pytest.raises(TableRangeError):
            verify_freeness(1)

    def test_euler_series(self):
        assert euler_product_series({2: 1, 3: 2, 4: 3, 5: 6, 6: 9}, 6) == [1, 0, 1, 2, 4, 8, 16]
        assert euler_product_series({1: 1}, 4) == [1, 1, 1, 1, 1]


class TestLinearAlgebra:
    def test_rank(self):
        assert fraction_free_rank([[1, 2], [2, 4]]) == 1
        assert fraction_free_rank([[1, 2, 3], [0, 1, 4], [5, 6, 0]]) == 3
        assert fraction_free_rank([]) == 0

    def test_echelon_basis(self):
        basis = EchelonBasis(3)
        assert basis.add([1, 1, 0])
        assert basis.add([0, 1, 1])
        assert not basis.add([1, 2, 1])
        assert basis.contains([2, 0, -2])
        assert len(basis) == 2

    def test_invert(self):
        inverse = invert([[2, 1], [1, 1]])
        assert inverse == [[1, -1], [-1, 2]]
        with pytest.raises(SingularMatrixError):
            invert([[1, 2], [2, 4]])
