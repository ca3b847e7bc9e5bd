"""Persisted verification runs: record, list, export, prune."""
import json
import logging
from datetime import datetime
from typing import Iterable, NamedTuple, Optional

from database.connection import session_scope
from database.models import CheckRecord, VerificationRun

logger = logging.getLogger(__name__)


class RecordedCheck(NamedTuple):
    kind: str
    description: str
    max_residual: Optional[float]
    tolerance: Optional[float]
    passed: bool
    payload: dict


def _new_run_id(db, started: datetime) -> str:
    base = f"run_{started.strftime('%Y%m%d_%H%M%S')}"
    run_id = base
    suffix = 2
    while db.query(VerificationRun).filter(VerificationRun.run_id == run_id).first():
        run_id = f"{base}_{suffix}"
        suffix += 1
    return run_id


def record_run(invocation: dict, checks: Iterable[RecordedCheck], db=None) -> str:
    """Store one CLI invocation and its checks; returns the new run id."""
    checks = list(checks)
    started = datetime.now()
    failed = sum(1 for c in checks if not c.passed)

    with session_scope(db) as session:
        run = VerificationRun(
            run_id=_new_run_id(session, started),
            subcommand=str(invocation.get("command", "")),
            invocation=json.dumps(invocation, sort_keys=True),
            status="passed" if failed == 0 else "failed",
            checks_total=len(checks),
            checks_failed=failed,
            start_time=started,
            end_time=datetime.now(),
        )
        for check in checks:
            run.checks.append(CheckRecord(
                kind=check.kind,
                description=check.description,
                max_residual=check.max_residual,
                tolerance=check.tolerance,
                passed=check.passed,
                payload=json.dumps(check.payload, sort_keys=True),
            ))
        session.add(run)
        session.flush()
        logger.info(f"recorded {run.run_id}: {len(checks)} checks, {failed} failed")
        return run.run_id


def list_runs(db=None) -> list[dict]:
    """Most recent first."""
    with session_scope(db) as session:
        runs = session.query(VerificationRun).order_by(
            VerificationRun.start_time.desc(), VerificationRun.id.desc()).all()
        return [
            {
                "run_id": run.run_id,
                "subcommand": run.subcommand,
                "status": run.status,
                "checks_total": run.checks_total,
                "checks_failed": run.checks_failed,
                "start_time": run.start_time.isoformat() if run.start_time else None,
            }
            for run in runs
        ]


def export_run(run_id: str, output_file: Optional[str] = None, db=None) -> Optional[str]:
    """Write one run with all its checks to JSON; None when the run is unknown."""
    if not output_file:
        output_file = f"{run_id}.json"

    with session_scope(db) as session:
        run = session.query(VerificationRun).filter(VerificationRun.run_id == run_id).first()
        if run is None:
            logger.warning(f"Run {run_id} not found")
            return None

        data = {
            "run_id": run.run_id,
            "invocation": json.loads(run.invocation),
            "status": run.status,
            "checks_total": run.checks_total,
            "checks_failed": run.checks_failed,
            "start_time": run.start_time.isoformat() if run.start_time else None,
            "end_time": run.end_time.isoformat() if run.end_time else None,
            "checks": [
                {
                    "kind": check.kind,
                    "description": check.description,
                    "max_residual": check.max_residual,
                    "tolerance": check.tolerance,
                    "passed": check.passed,
                    "payload": json.loads(check.payload) if check.payload else None,
                }
                for check in sorted(run.checks, key=lambda c: c.id)
            ],
        }

    with open(output_file, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
    logger.info(f"Exported {len(data['checks'])} checks of {run_id} to {output_file}")
    return output_file


def clear_old_runs(keep: int = 1, db=None) -> int:
    """Delete all runs except the ``keep`` most recent; returns how many went."""
    if keep < 0:
        raise ValueError(f"keep must be ≥ 0, got {keep}")
    with session_scope(db) as session:
        runs = session.query(VerificationRun).order_by(
            VerificationRun.start_time.desc(), VerificationRun.id.desc()).all()
        doomed = runs[keep:]
        for run in doomed:
            # check records go with the run (delete-orphan cascade)
            session.delete(run)
        session.flush()
        if doomed:
            logger.info(f"Deleted {len(doomed)} old run(s), kept {len(runs) - len(doomed)}")
        return len(doomed)
