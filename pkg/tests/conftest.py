import os
import sys

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.graded import build_generator_table
from database.connection import create_tables


@pytest.fixture(scope="session")
def table7():
    return build_generator_table(7)


@pytest.fixture
def memory_engine():
    engine = create_engine("sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool)
    create_tables(bind=engine)
    yield engine
    engine.dispose()


@pytest.fixture
def db_session(memory_engine):
    db = sessionmaker(bind=memory_engine, autocommit=False, autoflush=False)()
    try:
        yield db
    finally:
        db.close()


@pytest.fixture
def memory_store(memory_engine, monkeypatch):
    """Point the default run store at an in-memory database."""
    import database.connection as connection

    monkeypatch.setattr(connection, "engine", memory_engine)
    monkeypatch.setattr(connection, "SessionLocal",
                        sessionmaker(bind=memory_engine, autocommit=False, autoflush=False))
    return memory_engine
