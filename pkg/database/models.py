from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import declarative_base, relationship

Base = declarative_base()


class VerificationRun(Base):
    __tablename__ = "verification_runs"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(String(100), nullable=False, unique=True, index=True)
    subcommand = Column(String(100), nullable=False)
    invocation = Column(Text, nullable=False)  # JSON, defaults expanded
    status = Column(String(20), nullable=False, index=True)
    checks_total = Column(Integer, default=0)
    checks_failed = Column(Integer, default=0)
    start_time = Column(DateTime, default=lambda: datetime.now())
    end_time = Column(DateTime)

    checks = relationship("CheckRecord", back_populates="run", cascade="all, delete-orphan")


class CheckRecord(Base):
    __tablename__ = "check_records"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("verification_runs.id"), nullable=False)
    kind = Column(String(50), nullable=False, index=True)
    description = Column(Text, nullable=False)
    max_residual = Column(Float)
    tolerance = Column(Float)
    passed = Column(Boolean, default=False, index=True)
    payload = Column(Text)  # structured JSON of the report
    created_at = Column(DateTime, default=lambda: datetime.now())

    run = relationship("VerificationRun", back_populates="checks")
