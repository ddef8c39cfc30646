"""Tests for cst/models.py and the ledger helpers in cst/db.py."""
import pytest
from sqlalchemy.exc import IntegrityError

from cst.db import recent_runs, record_suite_run
from cst.descriptor import load_space_descriptor
from cst.models import Base, SuiteFailure, SuiteRun
from cst.suites import run_suite


def test_suite_run_table_name():
    assert SuiteRun.__tablename__ == "suite_runs"


def test_suite_failure_table_name():
    assert SuiteFailure.__tablename__ == "suite_failures"


def test_base_has_all_tables():
    names = set(Base.metadata.tables.keys())
    assert {"suite_runs", "suite_failures"} <= names


def test_create_run(db_session):
    run = SuiteRun(suite="laws", space_id="vector(2)", seed=1, cases=10)
    db_session.add(run)
    db_session.commit()
    assert run.id is not None
    assert run.created_at is not None
    assert run.failure_count == 0


def test_failure_needs_run(db_session):
    db_session.add(SuiteFailure(run_id=999, law="unit-law", case_json="{}"))
    with pytest.raises(IntegrityError):
        db_session.commit()
    db_session.rollback()


def test_cascade_delete(db_session):
    run = SuiteRun(suite="laws", space_id="t", seed=1, cases=1, failure_count=1, exit_status=1)
    run.failures.append(SuiteFailure(law="idempotency", case_json='{"x":"a"}'))
    db_session.add(run)
    db_session.commit()
    db_session.delete(run)
    db_session.commit()
    assert db_session.query(SuiteFailure).count() == 0


def test_record_suite_run(db_session, descriptor_path):
    space = load_space_descriptor(descriptor_path("corrupted_table.json"))
    result = run_suite("laws", space, seed=7, cases=100)
    run = record_suite_run(db_session, result, space)
    assert run.failure_count == len(result.failures) > 0
    assert run.exit_status == 1
    stored = db_session.query(SuiteFailure).filter_by(run_id=run.id).all()
    assert len(stored) == len(result.failures)
    assert all(f.case_json.startswith("{") for f in stored)


def test_recent_runs_newest_first(db_session, descriptor_path):
    space = load_space_descriptor(descriptor_path("vector2.json"))
    for seed in (1, 2, 3):
        record_suite_run(db_session, run_suite("laws", space, seed=seed, cases=5))
    runs = recent_runs(db_session, limit=2)
    assert [r.seed for r in runs] == [3, 2]
