"""Command-line front end.

    python -m cli stuffle 2 3
    python -m cli eval 2,1 --z 0 --tol 1e-10
    python -m cli verify diffeq --max-weight 4 --tol 1e-9
    python -m cli --format structured report --max-weight 6

Exit status: 0 on success, 1 when a verification fails, 2 on usage or domain errors.
"""
import argparse
import logging
import os
import sys
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.composition import Composition, measures, parse_composition, render_composition, render_sum
from algebra.errors import HmzfError
from algebra.graded import (
    build_generator_table,
    dimension,
    reduce_to_normal_form,
    round_trip_failures,
    stated_dimension,
)
from algebra.graded import verify_freeness as freeness_report
from algebra.lyndon import cfl_factorize, count_lyndon, generate_lyndon, is_lyndon
from algebra.stuffle import stuffle_product
from cli.schemas import (
    AxiomReportModel,
    CertificateModel,
    CheckReportModel,
    CompositionModel,
    DimensionRowModel,
    Envelope,
    EvalResultModel,
    FactorizationModel,
    FormalSumModel,
    FreenessReportModel,
    GeneratorPolynomialModel,
    GeneratorTableModel,
    ReductionModel,
    StuffleModel,
    TrialModel,
)
from database.store import RecordedCheck, clear_old_runs, export_run, list_runs, record_run
from lab.axioms import check_stuffle_axioms
from lab.identities import (
    CheckReport,
    HurwitzFunction,
    depth_one_suite,
    difference_equation_suite,
    end_to_end_suite,
    stuffle_identity_suite,
)
from lab.independence import Verdict, independence_certificate, run_independence_trials
from numerics.points import format_point, parse_point
from numerics.settings import get_settings

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class Outcome(NamedTuple):
    parameters: Dict[str, Any]
    result: Any
    text: List[str]
    passed: Optional[bool] = None
    checks: Sequence[RecordedCheck] = ()


def _composition(text: str) -> Composition:
    if text.strip() in ("∅", "()"):
        return Composition()
    return parse_composition(text)


def _points(values) -> List[str]:
    # validate now, keep the text for the reports
    for v in values:
        parse_point(v)
    return list(values)


def _header(command: str, parameters: Dict[str, Any]) -> str:
    shown = " ".join(f"{k}={_show(v)}" for k, v in parameters.items())
    return f"# {command} {shown}".rstrip()


def _show(value) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + " ".join(str(v) for v in value) + "]"
    return str(value)


def _recorded(report: CheckReport) -> RecordedCheck:
    return RecordedCheck(report.kind, report.description, report.max_residual, report.tolerance,
                         report.passed, CheckReportModel.from_domain(report).model_dump(mode="json"))


def _report_lines(reports: List[CheckReport]) -> List[str]:
    lines = [f"  [{r.verdict.upper()}] {r.description}  max residual {r.max_residual:.3e}" for r in reports]
    failed = sum(1 for r in reports if not r.passed)
    lines.append(f"{len(reports) - failed}/{len(reports)} checks passed")
    return lines


def _suite(parameters, reports: List[CheckReport]) -> Outcome:
    return Outcome(parameters, [CheckReportModel.from_domain(r) for r in reports], _report_lines(reports),
                   all(r.passed for r in reports), [_recorded(r) for r in reports])


# -- algebra ---------------------------------------------------------------

def cmd_stuffle(args) -> Outcome:
    a, b = _composition(args.a), _composition(args.b)
    product = stuffle_product(a, b)
    text = render_sum(product.expansion)
    model = StuffleModel(left=CompositionModel.from_domain(a), right=CompositionModel.from_domain(b),
                         expansion=FormalSumModel.from_domain(product.expansion), text=text)
    return Outcome({"a": render_composition(a), "b": render_composition(b)}, model, [text])


def cmd_lyndon(args) -> Outcome:
    if args.action == "test":
        w = _composition(args.word)
        verdict = is_lyndon(w)
        return Outcome({"word": render_composition(w)}, {"word": list(w.parts), "lyndon": verdict},
                       [f"{w!r} is {'' if verdict else 'not '}a Lyndon word"])
    if args.action == "factorize":
        w = _composition(args.word)
        f = cfl_factorize(w)
        return Outcome({"word": render_composition(w)}, FactorizationModel.from_domain(f), [f"{w!r} = {f}"])
    if args.action == "list":
        groups = generate_lyndon(args.max_weight)
        text = [f"weight {n}: " + " ".join(repr(w) for w in words) for n, words in groups.items()]
        result = {n: [list(w.parts) for w in words] for n, words in groups.items()}
        return Outcome({"max_weight": args.max_weight}, result, text)
    count = count_lyndon(args.weight)
    return Outcome({"weight": args.weight}, {"weight": args.weight, "count": count},
                   [f"{count} Lyndon compositions of weight {args.weight}"])


def cmd_dims(args) -> Outcome:
    rows = [DimensionRowModel(weight=n, dimension=dimension(n), stated_dimension=stated_dimension(n))
            for n in range(args.max_weight + 1)]
    text = [f"{'weight':>6} {'dimension':>10} {'printed':>10}"]
    for r in rows:
        flag = "" if r.dimension == r.stated_dimension else "  differs from printed 2^(n-1)"
        text.append(f"{r.weight:>6} {r.dimension:>10} {r.stated_dimension:>10}{flag}")
    return Outcome({"max_weight": args.max_weight}, rows, text)


def cmd_generators(args) -> Outcome:
    table = build_generator_table(args.max_weight)
    text = []
    for n in range(2, args.max_weight + 1):
        gens = table.generators[n]
        text.append(f"weight {n} ({len(gens)}, Lyndon count {count_lyndon(n)}): "
                    + " ".join(repr(g) for g in gens))
    return Outcome({"max_weight": args.max_weight}, GeneratorTableModel.from_domain(table), text)


def cmd_reduce(args) -> Outcome:
    c = _composition(args.composition)
    table = build_generator_table(max(args.max_weight, 2))
    normal_form = reduce_to_normal_form(c, table)
    model = ReductionModel(composition=CompositionModel.from_domain(c), max_weight=table.max_weight,
                           normal_form=GeneratorPolynomialModel.from_domain(normal_form), text=str(normal_form))
    return Outcome({"composition": render_composition(c), "max_weight": args.max_weight}, model,
                   [f"{c!r} = {normal_form}"])


# -- numerics --------------------------------------------------------------

def _numerics(args) -> Dict[str, Any]:
    settings = get_settings().evaluation
    return {
        "tol": args.tol if args.tol is not None else settings.tolerance,
        "precision": args.precision if args.precision is not None else settings.precision,
    }


def cmd_eval(args) -> Outcome:
    c = _composition(args.composition)
    z = parse_point(args.z)
    numerics = _numerics(args)
    result = HurwitzFunction(c, numerics["tol"], numerics["precision"]).evaluate(z)
    weight, depth, degree = measures(c)
    model = EvalResultModel.from_domain(c, z, result)
    text = [
        f"He{c!r}({format_point(z)}) = {model.value.re}" + (f" + ({model.value.im})i" if result.value.imag else ""),
        f"error bound {model.error_bound} ({result.params.bound_kind.value})",
        f"weight {weight}, depth {depth}, degree {degree}; shift {result.params.shift}, "
        f"order {result.params.order}, refinements {result.params.refinements}",
    ]
    return Outcome({"composition": render_composition(c), "z": format_point(z), **numerics}, model, text)


# -- verification ----------------------------------------------------------

def _verify_points(args, default):
    return _points(args.points) if args.points else list(default)


def verify_stuffle(args) -> Outcome:
    numerics = _check_numerics(args)
    points = _verify_points(args, get_settings().lab.stuffle_points)
    reports = stuffle_identity_suite(args.max_weight, points, numerics["tol"], numerics["precision"])
    return _suite({"max_weight": args.max_weight, "points": points, **numerics}, reports)


def verify_diffeq(args) -> Outcome:
    numerics = _check_numerics(args)
    points = _verify_points(args, get_settings().lab.diffeq_points)
    reports = difference_equation_suite(args.max_weight, points, numerics["tol"], numerics["precision"])
    return _suite({"max_weight": args.max_weight, "points": points, **numerics}, reports)


def verify_endtoend(args) -> Outcome:
    numerics = _check_numerics(args)
    points = _verify_points(args, get_settings().lab.endtoend_points)
    table = build_generator_table(max(args.max_weight, 2))
    reports = end_to_end_suite(args.max_weight, table, points, numerics["tol"], numerics["precision"])
    return _suite({"max_weight": args.max_weight, "points": points, **numerics}, reports)


def verify_depth1(args) -> Outcome:
    settings = get_settings()
    tol = args.tol if args.tol is not None else settings.evaluation.tolerance
    precision = args.precision if args.precision is not None else settings.evaluation.precision
    points = _verify_points(args, settings.lab.depth_one_points)
    reports = depth_one_suite((2, 3, 4), points, tol, precision)
    return _suite({"exponents": [2, 3, 4], "points": points, "tol": tol, "precision": precision}, reports)


def _check_numerics(args):
    settings = get_settings()
    tol = args.tol if args.tol is not None else settings.lab.check_tolerance
    precision = args.precision if args.precision is not None else settings.evaluation.precision
    return {"tol": tol, "precision": precision}


def verify_freeness(args) -> Outcome:
    report = freeness_report(args.max_weight)
    model = FreenessReportModel.from_domain(report)
    text = [f"{'n':>3} {'dim':>5} {'printed':>8} {'g_n':>4} {'lyndon':>7} {'rank':>5} {'euler':>6}  verdict"]
    for r in report.rows:
        lyndon = "-" if r.lyndon_count is None else str(r.lyndon_count)
        text.append(f"{r.weight:>3} {r.dimension:>5} {r.stated_dimension:>8} {r.generator_count:>4} "
                    f"{lyndon:>7} {r.monomial_rank:>5} {r.euler_coefficient:>6}  {'pass' if r.passed else 'FAIL'}")
    if report.dimension_discrepancies:
        text.append("enumerated dimension differs from the printed 2^(n-1) at weights "
                    + ", ".join(map(str, report.dimension_discrepancies)))
    checks = [RecordedCheck("freeness", f"weight {r.weight}", None, None, r.passed, row.model_dump(mode="json"))
              for r, row in zip(report.rows, model.rows)]
    return Outcome({"max_weight": args.max_weight}, model, text, report.passed, checks)


def verify_axioms(args) -> Outcome:
    report = check_stuffle_axioms(args.max_weight, args.associativity_weight)
    model = AxiomReportModel.from_domain(report)
    text = [f"  {law:<13} {t.checked:>6} checked  {t.failures} failed"
            + (f"  first: {t.first_failure}" if t.first_failure else "") for law, t in report.laws.items()]
    checks = [RecordedCheck("axiom", law, None, None, t.failures == 0, m.model_dump(mode="json"))
              for (law, t), m in zip(report.laws.items(), model.laws.values())]
    return Outcome({"max_weight": args.max_weight, "associativity_weight": args.associativity_weight},
                   model, text, report.passed, checks)


def verify_independence(args) -> Outcome:
    lab = get_settings().lab
    parameters = {"degree_bound": args.degree_bound, "precision": lab.certificate_precision,
                  "tol": lab.certificate_tolerance}
    if args.candidates:
        cands = [_composition(c) for c in args.candidates]
        points = _points(args.points) if args.points else None
        cert = independence_certificate(cands, args.degree_bound, points)
        model = CertificateModel.from_domain(cert)
        text = [f"candidates {', '.join(cert.candidates)}; {cert.rows}x{cert.columns} matrix, "
                f"rank {cert.rank}, threshold {cert.threshold:.3e}", f"verdict: {cert.verdict.value}"]
        if cert.relation is not None:
            text.append("relation: " + " ".join(f"{x.real:+.12g}" + (f"{x.imag:+.3g}i" if abs(x.imag) > 1e-12 else "")
                                                for x in cert.relation))
        passed = cert.verdict is not Verdict.INCONCLUSIVE
        check = RecordedCheck("independence", ", ".join(cert.candidates), None, cert.threshold, passed,
                              model.model_dump(mode="json"))
        parameters.update(candidates=[render_composition(c) for c in cands],
                          points=list(cert.points) + list(cert.holdout))
        return Outcome(parameters, model, text, passed, [check])

    trials = args.trials if args.trials is not None else lab.independence_trials
    seed = args.seed if args.seed is not None else lab.independence_seed
    outcomes = run_independence_trials(trials, seed, planted=args.planted)
    models = [TrialModel.from_domain(o) for o in outcomes]
    text = [f"  [{'PASS' if o.passed else 'FAIL'}] {'planted ' if o.planted else ''}"
            f"{', '.join(o.certificate.candidates)} (d={o.certificate.degree_bound}): {o.certificate.verdict.value}"
            for o in outcomes]
    failed = sum(1 for o in outcomes if not o.passed)
    text.append(f"{len(outcomes) - failed}/{len(outcomes)} trials matched expectations")
    checks = [RecordedCheck("independence", ", ".join(o.certificate.candidates), o.coefficient_error,
                            o.certificate.threshold, o.passed, m.model_dump(mode="json"))
              for o, m in zip(outcomes, models)]
    parameters.update(trials=trials, seed=seed, planted=args.planted)
    return Outcome(parameters, models, text, failed == 0, checks)


VERIFIERS: Dict[str, Callable] = {
    "stuffle": verify_stuffle,
    "diffeq": verify_diffeq,
    "independence": verify_independence,
    "endtoend": verify_endtoend,
    "freeness": verify_freeness,
    "axioms": verify_axioms,
    "depth1": verify_depth1,
}


def cmd_verify(args) -> Outcome:
    return VERIFIERS[args.suite](args)


def cmd_report(args) -> Outcome:
    """Every acceptance table in one run."""
    lab = get_settings().lab
    tol = args.tol if args.tol is not None else lab.check_tolerance
    precision = args.precision if args.precision is not None else get_settings().evaluation.precision
    sections: Dict[str, Any] = {}
    text: List[str] = []
    checks: List[RecordedCheck] = []
    passed = True

    def section(title: str, outcome: Outcome):
        nonlocal passed
        sections[title] = outcome.result
        text.append(f"== {title} ==")
        text.extend(outcome.text)
        checks.extend(outcome.checks)
        passed = passed and outcome.passed is not False

    ns = argparse.Namespace
    section("axioms", verify_axioms(ns(max_weight=8, associativity_weight=9)))
    section("dimensions", cmd_dims(ns(max_weight=12)))
    section("freeness", verify_freeness(ns(max_weight=args.table_weight)))

    table = build_generator_table(args.table_weight)
    failures = round_trip_failures(table)
    sections["round_trip"] = {"max_weight": args.table_weight, "failures": [list(c.parts) for c in failures]}
    text.append("== round_trip ==")
    text.append(f"normal forms expand back exactly up to weight {args.table_weight}: "
                + ("yes" if not failures else f"no, {len(failures)} failures"))
    checks.append(RecordedCheck("round_trip", f"weight ≤ {args.table_weight}", None, None, not failures,
                                sections["round_trip"]))
    passed = passed and not failures

    numeric = dict(tol=tol, precision=precision, points=None)
    section("diffeq", verify_diffeq(ns(max_weight=args.max_weight, **numeric)))
    section("stuffle", verify_stuffle(ns(max_weight=args.max_weight, **numeric)))
    section("endtoend", verify_endtoend(ns(max_weight=min(args.max_weight, 5), **numeric)))
    section("depth1", verify_depth1(ns(tol=None, precision=precision, points=None)))
    section("independence", verify_independence(ns(candidates=None, degree_bound=2, points=None,
                                                   trials=args.trials, seed=None, planted=args.planted)))
    parameters = {"max_weight": args.max_weight, "table_weight": args.table_weight, "tol": tol,
                  "precision": precision, "trials": args.trials, "planted": args.planted}
    return Outcome(parameters, sections, text, passed, checks)


# -- run store -------------------------------------------------------------

def cmd_runs(args) -> Outcome:
    if args.action == "list":
        runs = list_runs()
        if not runs:
            return Outcome({}, runs, ["No runs recorded"])
        text = [f"  - {r['run_id']} {r['subcommand']}: {r['status']} "
                f"({r['checks_total'] - r['checks_failed']}/{r['checks_total']} passed)" for r in runs]
        return Outcome({}, runs, text)
    if args.action == "export":
        path = export_run(args.run_id, args.output)
        if path is None:
            raise HmzfError(f"run {args.run_id} not found")
        return Outcome({"run_id": args.run_id}, {"output": path}, [f"Saved to: {path}"])
    deleted = clear_old_runs(args.keep)
    return Outcome({"keep": args.keep}, {"deleted": deleted}, [f"Deleted {deleted} old run(s)"])


COMMANDS: Dict[str, Callable] = {
    "stuffle": cmd_stuffle,
    "lyndon": cmd_lyndon,
    "dims": cmd_dims,
    "generators": cmd_generators,
    "reduce": cmd_reduce,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "report": cmd_report,
    "runs": cmd_runs,
}


def _add_numerics(p, points: bool = True):
    p.add_argument("--tol", type=float, help="tolerance (default from numerics/config.json)")
    p.add_argument("--precision", type=int, help="working decimal digits")
    if points:
        p.add_argument("--points", nargs="+", help="sample points: re or re,im")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmzf", description="Hurwitz multizeta algebra and numerics")
    parser.add_argument("--format", choices=["text", "structured"], default="text")
    parser.add_argument("--record", action="store_true", help="store verify/report results in the run database")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stuffle", help="stuffle product of two compositions")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("lyndon", help="Lyndon words over the composition alphabet")
    lyn = p.add_subparsers(dest="action", required=True)
    lyn.add_parser("test").add_argument("word")
    lyn.add_parser("factorize").add_argument("word")
    lyn.add_parser("list").add_argument("--max-weight", type=int, default=6)
    lyn.add_parser("count").add_argument("weight", type=int)

    sub.add_parser("dims", help="dimensions of the weight components").add_argument(
        "--max-weight", type=int, default=12)
    sub.add_parser("generators", help="greedy generator table").add_argument(
        "--max-weight", type=int, default=8)

    p = sub.add_parser("reduce", help="normal form in the generators")
    p.add_argument("composition")
    p.add_argument("--max-weight", type=int, default=8)

    p = sub.add_parser("eval", help="evaluate He^C(z); C = 1 gives the regularized He^1")
    p.add_argument("composition")
    p.add_argument("--z", default="0")
    _add_numerics(p, points=False)

    p = sub.add_parser("verify", help="run one verification suite")
    suites = p.add_subparsers(dest="suite", required=True)
    for name, weight in (("stuffle", 6), ("diffeq", 6), ("endtoend", 5)):
        s = suites.add_parser(name)
        s.add_argument("--max-weight", type=int, default=weight)
        _add_numerics(s)
    _add_numerics(suites.add_parser("depth1"))
    suites.add_parser("freeness").add_argument("--max-weight", type=int, default=7)
    s = suites.add_parser("axioms")
    s.add_argument("--max-weight", type=int, default=8)
    s.add_argument("--associativity-weight", type=int, default=9)
    s = suites.add_parser("independence")
    s.add_argument("candidates", nargs="*", help="compositions; ∅ for the constant 1")
    s.add_argument("--degree-bound", type=int, default=2)
    s.add_argument("--points", nargs="+")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--planted", type=int, default=10)

    p = sub.add_parser("report", help="reproduce every acceptance table")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--table-weight", type=int, default=7)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--planted", type=int, default=10)
    _add_numerics(p, points=False)

    p = sub.add_parser("runs", help="recorded verification runs")
    runs = p.add_subparsers(dest="action", required=True)
    runs.add_parser("list")
    e = runs.add_parser("export")
    e.add_argument("run_id")
    e.add_argument("--output")
    runs.add_parser("clear").add_argument("--keep", type=int, default=1)
    return parser


def _command_name(args) -> str:
    for extra in ("suite", "action"):
        if getattr(args, extra, None):
            return f"{args.command} {getattr(args, extra)}"
    return args.command


def _configure_logging(verbose: bool):
    level = "DEBUG" if verbose else os.getenv("HMZF_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=level, format='%(levelname)s: %(message)s', stream=sys.stderr, force=True)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    _configure_logging(args.verbose)
    command = _command_name(args)
    try:
        outcome = COMMANDS[args.command](args)
    except (HmzfError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "structured":
        envelope = Envelope(command=command, parameters=outcome.parameters, result=outcome.result,
                            passed=outcome.passed)
        print(envelope.model_dump_json(indent=2))
    else:
        print(_header(command, outcome.parameters))
        for line in outcome.text:
            print(line)

    if args.record and args.command in ("verify", "report"):
        run_id = record_run({"command": command, "parameters": outcome.parameters}, outcome.checks)
        print(f"recorded {run_id}", file=sys.stderr)

    return EXIT_FAILED if outcome.passed is False else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
