"""Database utilities for the results store.

``init_db`` returns a SQLAlchemy engine and session factory for a database
URI and creates the tables. ``results_db`` builds the SQLite URI for the
``results.db`` file inside a benchmark output directory, creating the
directory first.
"""

from __future__ import annotations

from pathlib import Path

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from .models import Base

RESULTS_DB = "results.db"


def results_db(output_dir: str | Path) -> str:
    """SQLite URI of the results database under ``output_dir``."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return f"sqlite:///{(out / RESULTS_DB).as_posix()}"


def init_db(database_uri: str):
    """Initialise the engine and session factory and create missing tables.

    Parameters
    ----------
    database_uri: str
        SQLAlchemy database URI, e.g. ``sqlite:///out/results.db`` or
        ``sqlite://`` for an in-memory database.

    Returns
    -------
    engine: sqlalchemy.engine.Engine
    Session: sqlalchemy.orm.sessionmaker
    """
    engine = create_engine(database_uri)
    Base.metadata.create_all(bind=engine)
    Session = sessionmaker(bind=engine)
    return engine, Session
