"""Database models for benchmark results.

We use SQLAlchemy's declarative system. A ``Batch`` is one ``bench``
invocation (its effective spec is kept verbatim as JSON); each
``RunRecord`` is one algorithm executed on one randomized instance of
that batch. Failed runs are stored like the others with ``status='error'``
and iters equal to the iteration cap, so SQL aggregates see exactly the
rows the JSON report was built from.
"""

from __future__ import annotations

from sqlalchemy import Boolean, Float, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column, relationship


class Base(DeclarativeBase):
    """Base class for SQLAlchemy declarative models."""

    pass


class Batch(Base):
    __tablename__ = "batches"
    id: Mapped[int] = mapped_column(Integer, primary_key=True)
    base_seed: Mapped[int] = mapped_column(Integer)
    runs: Mapped[int] = mapped_column(Integer)
    m: Mapped[int] = mapped_column(Integer)
    n: Mapped[int] = mapped_column(Integer)
    k: Mapped[int] = mapped_column(Integer)
    noise_std: Mapped[float] = mapped_column(Float)
    spec_json: Mapped[str] = mapped_column(Text)

    records: Mapped[list["RunRecord"]] = relationship(back_populates="batch", cascade="all, delete-orphan")


class RunRecord(Base):
    """One algorithm on one instance of a batch."""

    __tablename__ = "run_records"
    id: Mapped[int] = mapped_column(Integer, primary_key=True)
    batch_id: Mapped[int] = mapped_column(ForeignKey("batches.id"))
    run_index: Mapped[int] = mapped_column(Integer)
    seed: Mapped[int] = mapped_column(Integer)
    algorithm: Mapped[str] = mapped_column(String)
    status: Mapped[str] = mapped_column(String, default="ok")
    iters: Mapped[int] = mapped_column(Integer)
    converged: Mapped[bool] = mapped_column(Boolean)
    support_recovered: Mapped[bool | None] = mapped_column(Boolean, nullable=True)
    final_residual: Mapped[float | None] = mapped_column(Float, nullable=True)
    final_l1: Mapped[float | None] = mapped_column(Float, nullable=True)
    final_l0: Mapped[int | None] = mapped_column(Integer, nullable=True)
    max_l1: Mapped[float | None] = mapped_column(Float, nullable=True)
    overshoot: Mapped[float | None] = mapped_column(Float, nullable=True)
    error: Mapped[str | None] = mapped_column(Text, nullable=True)

    batch: Mapped["Batch"] = relationship(back_populates="records")

    __table_args__ = (UniqueConstraint("batch_id", "run_index", "algorithm", name="uq_record_batch_run_alg"),)
