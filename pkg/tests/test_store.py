import json

import pytest

from database.models import CheckRecord, VerificationRun
from database.store import RecordedCheck, clear_old_runs, export_run, list_runs, record_run


def _checks(failed=0):
    checks = [RecordedCheck("diffeq", "Δ₋He(2)(z) = z^-2·He∅(z)", 1e-15, 1e-9, True, {"points": ["1"]})]
    checks += [RecordedCheck("stuffle", "He(2)·He(2)", 1e-3, 1e-9, False, {}) for _ in range(failed)]
    return checks


def test_record_and_list(db_session):
    run_id = record_run({"command": "verify", "check": "diffeq"}, _checks(), db=db_session)
    assert run_id.startswith("run_")

    runs = list_runs(db=db_session)
    assert len(runs) == 1
    assert runs[0]["run_id"] == run_id
    assert runs[0]["status"] == "passed"
    assert runs[0]["checks_total"] == 1
    assert db_session.query(CheckRecord).count() == 1


def test_failed_checks_mark_the_run(db_session):
    record_run({"command": "verify"}, _checks(failed=2), db=db_session)
    run = db_session.query(VerificationRun).one()
    assert run.status == "failed"
    assert run.checks_failed == 2
    assert json.loads(run.invocation) == {"command": "verify"}


def test_run_ids_are_unique_within_a_second(db_session):
    first = record_run({"command": "report"}, [], db=db_session)
    second = record_run({"command": "report"}, [], db=db_session)
    assert first != second


def test_export(db_session, tmp_path):
    run_id = record_run({"command": "verify", "tol": 1e-9}, _checks(failed=1), db=db_session)
    path = export_run(run_id, str(tmp_path / "run.json"), db=db_session)

    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    assert data["run_id"] == run_id
    assert data["invocation"] == {"command": "verify", "tol": 1e-9}
    assert [c["kind"] for c in data["checks"]] == ["diffeq", "stuffle"]
    assert data["checks"][0]["payload"] == {"points": ["1"]}


def test_export_unknown_run(db_session, tmp_path):
    assert export_run("run_missing", str(tmp_path / "x.json"), db=db_session) is None


def test_clear_keeps_most_recent(db_session):
    ids = [record_run({"command": "verify"}, _checks(), db=db_session) for _ in range(3)]
    assert clear_old_runs(keep=1, db=db_session) == 2
    assert [r["run_id"] for r in list_runs(db=db_session)] == [ids[-1]]
    # check records go with their runs
    assert db_session.query(CheckRecord).count() == 1


def test_clear_rejects_negative_keep(db_session):
    with pytest.raises(ValueError):
        clear_old_runs(keep=-1, db=db_session)


def test_default_session_commits(memory_store):
    run_id = record_run({"command": "verify"}, _checks())
    assert [r["run_id"] for r in list_runs()] == [run_id]
