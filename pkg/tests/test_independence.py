import pytest

from algebra.composition import EMPTY, Composition
from algebra.errors import InsufficientPointsError
from lab.independence import (
    IndependenceCertificate,
    Verdict,
    as_candidate,
    candidate_label,
    independence_certificate,
    run_independence_trials,
    stuffle_relation,
)

C = Composition.of


class TestCandidates:
    def test_as_candidate(self):
        assert as_candidate(EMPTY) == ()
        assert as_candidate(C(2)) == (C(2),)
        assert as_candidate([C(2), EMPTY, C(3)]) == (C(2), C(3))

    def test_labels(self):
        assert candidate_label(()) == "1"
        assert candidate_label((C(2), C(2, 1))) == "He(2)·He(2,1)"

    def test_stuffle_relation(self):
        candidates, coefficients = stuffle_relation(C(2), C(2))
        assert candidates[0] == (C(2), C(2))
        assert dict(zip(candidates, coefficients)) == {(C(2), C(2)): 1, (C(2, 2),): -2, (C(4),): -1}

    def test_stuffle_relation_follows_canonical_order(self):
        candidates, coefficients = stuffle_relation(C(2), C(2))
        assert candidates == [(C(2), C(2)), (C(4),), (C(2, 2),)]
        assert coefficients == [1, -1, -2]


class TestCertificate:
    def test_constant_and_two_functions_with_quadratic_coefficients(self):
        cert = independence_certificate([EMPTY, C(2), C(2, 1)], degree_bound=2)
        assert cert.verdict is Verdict.NO_RELATION_FOUND
        assert cert.full_rank
        assert cert.columns == 9
        assert cert.rows >= cert.columns + 5
        assert cert.relation is None
        assert cert.candidates == ("1", "He(2)", "He(2,1)")
        assert list(cert.singular_values) == sorted(cert.singular_values, reverse=True)

    def test_duplicate_candidate_is_found(self):
        cert = independence_certificate([C(2), C(2)])
        assert cert.verdict is Verdict.RELATION_CANDIDATE
        assert cert.deficiency == 1
        assert cert.relation_for(1) / cert.relation_for(0) == pytest.approx(-1, abs=1e-8)

    def test_planted_stuffle_relation(self):
        candidates, expected = stuffle_relation(C(2), C(2))
        cert = independence_certificate(candidates)
        assert cert.verdict is Verdict.RELATION_CANDIDATE
        assert max(abs(x) for x in cert.relation) == pytest.approx(1)
        ratios = [cert.relation_for(i) / cert.relation_for(0) for i in range(3)]
        assert ratios == pytest.approx(expected, abs=1e-8)
        assert all(r <= cert.threshold for r in cert.holdout_residuals)

    def test_relation_requires_deficiency(self):
        cert = independence_certificate([C(2), C(3)])
        with pytest.raises(ValueError):
            cert.relation_for(0)

    def test_too_few_points(self):
        with pytest.raises(InsufficientPointsError):
            independence_certificate([C(2)], points=["1", "2", "3"])

    def test_duplicate_points(self):
        points = [str(k) for k in range(1, 15)] + ["1"]
        with pytest.raises(InsufficientPointsError):
            independence_certificate([C(2)], points=points)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            independence_certificate([C(2)], degree_bound=-1)

    def test_explicit_points_and_holdout(self):
        points = [str(k / 2) for k in range(1, 12)] + ["1,1"]
        cert = independence_certificate([C(2), C(3)], points=points)
        assert cert.holdout == ("5.0", "5.5", "1.0+1.0i")
        assert cert.rows == 9
        assert isinstance(cert, IndependenceCertificate)


@pytest.mark.slow
def test_trials_match_expectations():
    outcomes = run_independence_trials(trials=5, seed=7, planted=3)
    assert len(outcomes) == 1 + 5 + 3
    assert sum(o.planted for o in outcomes) == 3
    assert all(o.passed for o in outcomes)


@pytest.mark.slow
def test_fifty_random_sets_and_ten_planted_relations():
    outcomes = run_independence_trials()
    assert len(outcomes) == 1 + 50 + 10
    random_sets = [o for o in outcomes[1:] if not o.planted]
    assert len(random_sets) == 50
    assert all(o.certificate.verdict is Verdict.NO_RELATION_FOUND for o in random_sets)
    assert all(o.certificate.verdict is Verdict.RELATION_CANDIDATE for o in outcomes if o.planted)
    assert all(o.passed for o in outcomes)
