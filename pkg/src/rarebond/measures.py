"""Exact supports and the bond measure.

All quantities are absolute transaction counts; bond values are exact
rationals (``fractions.Fraction``), never floats, so that equality of
bond values is well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import kernels
from .db import TransactionDatabase, as_pattern
from .errors import EmptyDatabaseError, UndefinedMeasureError


@dataclass(frozen=True)
class MeasuredPattern:
    """A pattern with its conjunctive/disjunctive supports and bond value."""

    pattern: tuple[int, ...]
    conj: int
    disj: int
    bond: Fraction

    def __post_init__(self):
        if not 0 < self.conj <= self.disj:
            raise ValueError(f"invalid supports conj={self.conj} disj={self.disj}")
        if self.bond != Fraction(self.conj, self.disj):
            raise ValueError("bond does not equal conj/disj")

    @classmethod
    def from_counts(cls, pattern, conj, disj):
        return cls(tuple(pattern), int(conj), int(disj), Fraction(int(conj), int(disj)))


def _supports(db: TransactionDatabase, pattern: Iterable[int]) -> tuple[int, int]:
    idx = db.indices(as_pattern(pattern))
    conj = kernels.count_bits(kernels.and_mask(db._item_words, idx))
    disj = kernels.count_bits(kernels.or_mask(db._item_words, idx))
    return conj, disj


def conjunctive_support(db: TransactionDatabase, pattern: Iterable[int]) -> int:
    """Number of transactions containing every item of the pattern."""
    return _supports(db, pattern)[0]


def disjunctive_support(db: TransactionDatabase, pattern: Iterable[int]) -> int:
    """Number of transactions containing at least one item of the pattern."""
    return _supports(db, pattern)[1]


def negative_support(db: TransactionDatabase, pattern: Iterable[int]) -> int:
    """Number of transactions containing no item of the pattern."""
    return db.num_transactions - disjunctive_support(db, pattern)


def bond(db: TransactionDatabase, pattern: Iterable[int]) -> Fraction:
    """bond = conjunctive support / disjunctive support, as an exact rational."""
    conj, disj = _supports(db, pattern)
    if disj == 0:
        raise UndefinedMeasureError("bond is undefined: no item of the pattern occurs")
    return Fraction(conj, disj)


def measure(db: TransactionDatabase, pattern: Iterable[int]) -> MeasuredPattern:
    """MeasuredPattern for a pattern of nonzero conjunctive support."""
    p = as_pattern(pattern)
    conj, disj = _supports(db, p)
    if conj == 0:
        raise UndefinedMeasureError(f"pattern {p} has zero conjunctive support")
    return MeasuredPattern(p, conj, disj, Fraction(conj, disj))


def cross_support_violates(db: TransactionDatabase, pattern: Iterable[int],
                           minbond: Fraction) -> bool:
    """True iff two items of the pattern have a support ratio below minbond.

    A sound pruning test: a violating pattern cannot reach ``bond >= minbond``.
    """
    supports = [db.item_support(item) for item in as_pattern(pattern)]
    return Fraction(min(supports), max(supports)) < minbond


def cross_support_trivial_threshold(db: TransactionDatabase) -> Fraction:
    """MinR = (smallest item support) / (largest item support).

    For any ``minbond <= MinR`` no pair of items violates cross-support,
    so the pruning test can be skipped wholesale.
    """
    if not db.items:
        raise EmptyDatabaseError("database has no items")
    supports = db._item_supports
    return Fraction(min(supports), max(supports))
