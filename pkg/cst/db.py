#!/usr/bin/env python
"""
DB: suite-run ledger
"""
# ========================================================
# IMPORTS
# ========================================================
from sqlalchemy import create_engine, event
from sqlalchemy.orm import scoped_session, sessionmaker

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import DB_PATH
from cst.models import Base, SuiteFailure, SuiteRun  # ensure models import happens before create_all
from cst.suites import SuiteResult, dump_case, encode_case

# ========================================================
# GLOBALS
# ========================================================
DATABASE_URL = f"sqlite:///{DB_PATH}"
engine = create_engine(
    DATABASE_URL,
    echo=False,
    future=True,
    connect_args={"check_same_thread": False},
)

SessionLocal = scoped_session(sessionmaker(bind=engine, autoflush=False,
                                           autocommit=False))


# ========================================================
# EVENT LISTENER
# ========================================================
@event.listens_for(engine, "connect")
def set_sqlite_pragma(dbapi_connection, connection_record):
    cursor = dbapi_connection.cursor()
    try:
        cursor.execute("PRAGMA journal_mode=WAL;")
        cursor.execute("PRAGMA foreign_keys=ON;")
    finally:
        cursor.close()


# ========================================================
# Create tables
# ========================================================
Base.metadata.create_all(bind=engine)


# ========================================================
# DB-level helpers
# ========================================================
def record_suite_run(db, result: SuiteResult, space=None) -> SuiteRun:
    """Store *result* and its failures; *space* encodes failure inputs when given."""
    run = SuiteRun(
        suite=result.suite,
        space_id=result.space_id,
        seed=result.seed,
        cases=result.cases,
        checked=result.checked,
        failure_count=len(result.failures),
        exit_status=result.exit_status,
    )
    for failure in result.failures:
        if space is not None:
            case = dump_case(encode_case(space, failure))
        else:
            case = repr(dict(failure.inputs))
        run.failures.append(SuiteFailure(law=failure.law, case_json=case))
    db.add(run)
    db.commit()
    return run


def recent_runs(db, limit: int = 20) -> list[SuiteRun]:
    """Most recent runs first."""
    return (db.query(SuiteRun)
            .order_by(SuiteRun.created_at.desc(), SuiteRun.id.desc())
            .limit(limit)
            .all())
