from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath
from pydantic import BaseModel, RootModel, field_validator

from algebra.composition import Composition, FormalSum
from algebra.graded import (
    FreenessReport,
    FreenessRow,
    GeneratorPolynomial,
    GeneratorTable,
    Monomial,
    build_generator_table,
)
from algebra.lyndon import CFLFactorization
from lab.axioms import AxiomReport
from lab.identities import CheckReport
from lab.independence import IndependenceCertificate, TrialOutcome, Verdict
from numerics.hurwitz import BoundKind, EvalParams, EvalResult


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _mp_text(x, digits: int) -> str:
    return mpmath.nstr(x, digits)


class CompositionModel(RootModel[List[int]]):
    @field_validator("root")
    @classmethod
    def positive_parts(cls, parts):
        if any(p < 1 for p in parts):
            raise ValueError("composition parts must be ≥ 1")
        return parts

    @classmethod
    def from_domain(cls, c: Composition) -> "CompositionModel":
        return cls(list(c.parts))

    def to_domain(self) -> Composition:
        return Composition(tuple(self.root))


class FormalSumTerm(BaseModel):
    coeff: str
    composition: CompositionModel


class FormalSumModel(BaseModel):
    terms: List[FormalSumTerm]

    @classmethod
    def from_domain(cls, s: FormalSum) -> "FormalSumModel":
        return cls(terms=[FormalSumTerm(coeff=format_rational(s[c]), composition=CompositionModel.from_domain(c))
                          for c in s])

    def to_domain(self) -> FormalSum:
        return FormalSum({t.composition.to_domain(): Fraction(t.coeff) for t in self.terms})


class StuffleModel(BaseModel):
    left: CompositionModel
    right: CompositionModel
    expansion: FormalSumModel
    text: str


class FactorModel(BaseModel):
    generator: CompositionModel
    exponent: int


class PolynomialTerm(BaseModel):
    coeff: str
    monomial: List[FactorModel]


class GeneratorPolynomialModel(BaseModel):
    terms: List[PolynomialTerm]

    @classmethod
    def from_domain(cls, p: GeneratorPolynomial) -> "GeneratorPolynomialModel":
        return cls(terms=[
            PolynomialTerm(
                coeff=format_rational(p[m]),
                monomial=[FactorModel(generator=CompositionModel.from_domain(g), exponent=e) for g, e in m.factors],
            )
            for m in p
        ])

    def to_domain(self) -> GeneratorPolynomial:
        return GeneratorPolynomial({
            Monomial(tuple((f.generator.to_domain(), f.exponent) for f in t.monomial)): Fraction(t.coeff)
            for t in self.terms
        })


class GeneratorTableModel(BaseModel):
    max_weight: int
    generators: Dict[int, List[CompositionModel]]

    @classmethod
    def from_domain(cls, table: GeneratorTable) -> "GeneratorTableModel":
        return cls(
            max_weight=table.max_weight,
            generators={n: [CompositionModel.from_domain(g) for g in table.generators[n]]
                        for n in range(2, table.max_weight + 1)},
        )

    def to_domain(self) -> GeneratorTable:
        """Rebuild the table and confirm it chooses the same generators."""
        table = build_generator_table(self.max_weight)
        for n, gens in self.generators.items():
            if tuple(g.to_domain() for g in gens) != table.generators[n]:
                raise ValueError(f"weight {n} generators differ from a fresh build")
        return table


class ReductionModel(BaseModel):
    composition: CompositionModel
    max_weight: int
    normal_form: GeneratorPolynomialModel
    text: str


class ComplexModel(BaseModel):
    re: str
    im: str

    @classmethod
    def from_domain(cls, value, digits: int = 20) -> "ComplexModel":
        if not hasattr(value, "_mpc_"):
            value = mpmath.mpc(value)
        return cls(re=_mp_text(value.real, digits), im=_mp_text(value.imag, digits))

    def to_domain(self) -> mpmath.mpc:
        with mpmath.workdps(max(len(self.re), len(self.im), 15)):
            return mpmath.mpc(mpmath.mpf(self.re), mpmath.mpf(self.im))


class EvalParamsModel(BaseModel):
    shift: int
    order: int
    precision: int
    bound_kind: BoundKind
    refinements: int

    @classmethod
    def from_domain(cls, params: EvalParams) -> "EvalParamsModel":
        return cls(**params.__dict__)

    def to_domain(self) -> EvalParams:
        return EvalParams(**self.model_dump())


class EvalResultModel(BaseModel):
    composition: CompositionModel
    z: ComplexModel
    value: ComplexModel
    error_bound: str
    params: EvalParamsModel

    @classmethod
    def from_domain(cls, c: Composition, z, result: EvalResult) -> "EvalResultModel":
        digits = result.params.precision
        return cls(
            composition=CompositionModel.from_domain(c),
            z=ComplexModel.from_domain(z, digits),
            value=ComplexModel.from_domain(result.value, digits),
            error_bound=_mp_text(result.error_bound, 5),
            params=EvalParamsModel.from_domain(result.params),
        )

    def to_domain(self) -> EvalResult:
        return EvalResult(self.value.to_domain(), mpmath.mpf(self.error_bound), self.params.to_domain())


class CheckReportModel(BaseModel):
    kind: str
    description: str
    points: List[str]
    residuals: List[float]
    max_residual: float
    tolerance: float
    verdict: str
    details: Dict[str, Any] = {}

    @classmethod
    def from_domain(cls, report: CheckReport) -> "CheckReportModel":
        return cls(
            kind=report.kind,
            description=report.description,
            points=list(report.points),
            residuals=list(report.residuals),
            max_residual=report.max_residual,
            tolerance=report.tolerance,
            verdict=report.verdict,
            details=dict(report.details),
        )

    def to_domain(self) -> CheckReport:
        return CheckReport(self.kind, self.description, tuple(self.points), tuple(self.residuals),
                           self.tolerance, dict(self.details))


class PlainComplexModel(BaseModel):
    re: float
    im: float


class CertificateModel(BaseModel):
    candidates: List[str]
    degree_bound: int
    points: List[str]
    holdout: List[str]
    rows: int
    columns: int
    singular_values: List[float]
    threshold: float
    rank: int
    verdict: Verdict
    relation: Optional[List[PlainComplexModel]] = None
    holdout_residuals: List[float] = []

    @classmethod
    def from_domain(cls, cert: IndependenceCertificate) -> "CertificateModel":
        data = dict(cert.__dict__)
        if cert.relation is not None:
            data["relation"] = [PlainComplexModel(re=x.real, im=x.imag) for x in cert.relation]
        return cls(**data)

    def to_domain(self) -> IndependenceCertificate:
        data = self.model_dump()
        data.update(
            candidates=tuple(self.candidates),
            points=tuple(self.points),
            holdout=tuple(self.holdout),
            singular_values=tuple(self.singular_values),
            holdout_residuals=tuple(self.holdout_residuals),
            relation=None if self.relation is None else tuple(complex(x.re, x.im) for x in self.relation),
        )
        return IndependenceCertificate(**data)


class TrialModel(BaseModel):
    planted: bool
    expected: Optional[List[int]] = None
    coefficient_error: Optional[float] = None
    passed: bool
    certificate: CertificateModel

    @classmethod
    def from_domain(cls, outcome: TrialOutcome) -> "TrialModel":
        return cls(
            planted=outcome.planted,
            expected=list(outcome.expected) if outcome.expected is not None else None,
            coefficient_error=outcome.coefficient_error,
            passed=outcome.passed,
            certificate=CertificateModel.from_domain(outcome.certificate),
        )


class FreenessRowModel(BaseModel):
    weight: int
    dimension: int
    stated_dimension: int
    generator_count: int
    lyndon_count: Optional[int] = None
    monomial_count: int
    monomial_rank: int
    euler_coefficient: int
    independent: bool
    spanning: bool
    lyndon_match: bool
    passed: bool


class FreenessReportModel(BaseModel):
    max_weight: int
    rows: List[FreenessRowModel]
    dimension_discrepancies: List[int]
    passed: bool

    @classmethod
    def from_domain(cls, report: FreenessReport) -> "FreenessReportModel":
        rows = [FreenessRowModel(**r.__dict__, independent=r.independent, spanning=r.spanning,
                                 lyndon_match=r.lyndon_match, passed=r.passed) for r in report.rows]
        return cls(max_weight=report.max_weight, rows=rows,
                   dimension_discrepancies=report.dimension_discrepancies, passed=report.passed)

    def to_domain(self) -> FreenessReport:
        fields = FreenessRow.__dataclass_fields__
        rows = tuple(FreenessRow(**{k: v for k, v in r.model_dump().items() if k in fields}) for r in self.rows)
        return FreenessReport(self.max_weight, rows)


class LawModel(BaseModel):
    checked: int
    failures: int
    first_failure: Optional[str] = None


class AxiomReportModel(BaseModel):
    max_weight: int
    associativity_weight: int
    laws: Dict[str, LawModel]
    passed: bool

    @classmethod
    def from_domain(cls, report: AxiomReport) -> "AxiomReportModel":
        return cls(
            max_weight=report.max_weight,
            associativity_weight=report.associativity_weight,
            laws={k: LawModel(**v.__dict__) for k, v in report.laws.items()},
            passed=report.passed,
        )


class FactorizationModel(BaseModel):
    word: CompositionModel
    factors: List[CompositionModel]

    @classmethod
    def from_domain(cls, f: CFLFactorization) -> "FactorizationModel":
        return cls(word=CompositionModel.from_domain(f.word),
                   factors=[CompositionModel.from_domain(x) for x in f.factors])


class DimensionRowModel(BaseModel):
    weight: int
    dimension: int
    stated_dimension: int


class Envelope(BaseModel):
    """Every structured output: the subcommand, its expanded parameters, the result."""
    command: str
    parameters: Dict[str, Any]
    result: Any
    passed: Optional[bool] = None
