#!/usr/bin/env python
"""
Models
"""
# ========================================================
# IMPORTS
# ========================================================
from datetime import datetime
from datetime import timezone as _timezone

UTC = _timezone.utc

from sqlalchemy import Column, DateTime, ForeignKey, Integer, String, Text
from sqlalchemy.orm import declarative_base, relationship

# ========================================================
# GLOBALS
# ========================================================
Base = declarative_base()


# ========================================================
# CLASSES (MODELS from BASE)
# ========================================================
class SuiteRun(Base):
    """
    One recorded suite run
    """
    __tablename__ = "suite_runs"

    id = Column(Integer, primary_key=True)
    # laws, algebra, lawvere, coefficient-change, roundtrip
    suite = Column(String(50), nullable=False, index=True)
    space_id = Column(String(200), nullable=False, index=True)
    seed = Column(Integer, nullable=False)
    cases = Column(Integer, nullable=False)
    checked = Column(Integer, nullable=False, default=0)
    failure_count = Column(Integer, nullable=False, default=0)
    exit_status = Column(Integer, nullable=False, default=0)
    created_at = Column(DateTime, default=lambda: datetime.now(UTC),
                        nullable=False)

    failures = relationship("SuiteFailure", back_populates="run",
                            cascade="all, delete-orphan", order_by="SuiteFailure.id")


class SuiteFailure(Base):
    """
    A failing check of a run, stored as its report line's case JSON
    """
    __tablename__ = "suite_failures"

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey("suite_runs.id", ondelete="CASCADE"),
                    nullable=False, index=True)
    law = Column(String(50), nullable=False, index=True)
    case_json = Column(Text, nullable=False)

    run = relationship("SuiteRun", back_populates="failures")
