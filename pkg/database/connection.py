import logging
import os
from contextlib import contextmanager

from dotenv import load_dotenv
from sqlalchemy import create_engine
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import sessionmaker

from database.models import Base

load_dotenv()

logger = logging.getLogger(__name__)

DATABASE_URL = os.getenv(
    "DATABASE_URL",
    "sqlite:///hmzf_runs.db"  # Default to SQLite
)

try:
    engine = create_engine(DATABASE_URL, pool_pre_ping=True, pool_recycle=300)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
except Exception as e:
    logger.error(f"Database connection failed: {e}")
    raise


def create_tables(bind=None):
    try:
        Base.metadata.create_all(bind=bind or engine)
    except SQLAlchemyError as e:
        logger.error(f"Failed to create tables: {e}")
        raise


@contextmanager
def session_scope(db=None):
    """Yield ``db`` untouched, or a fresh session that is committed and closed."""
    if db is not None:
        yield db
        return
    create_tables()
    db = SessionLocal()
    try:
        yield db
        db.commit()
    except SQLAlchemyError:
        db.rollback()
        raise
    finally:
        db.close()
