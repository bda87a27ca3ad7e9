"""Closure operators tied to the bond measure.

The bond closure of a pattern is the largest superset with the same bond
value. It is computed as the intersection of the conjunctive closure
(intersection of all covering transactions) and the disjunctive closure
(items occurring only inside the pattern's universe); a definitional
item-by-item implementation lives in the oracle module for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .db import Pattern, TransactionDatabase, as_pattern
from .errors import UndefinedClosureError
from .measures import _supports


@dataclass(frozen=True)
class ClosureTriple:
    conjunctive: Pattern
    disjunctive: Pattern
    bond: Pattern


def conjunctive_closure(db: TransactionDatabase, pattern: Iterable[int]) -> Pattern:
    """Intersection of all transactions containing the pattern."""
    p = as_pattern(pattern)
    idx = db.indices(p)
    cover = kernels.and_mask(db._item_words, idx)
    tids = kernels.unpack_mask(cover, db.num_transactions)
    if not tids:
        raise UndefinedClosureError(f"pattern {p} has zero conjunctive support")
    closed = kernels.and_mask(db._row_words, tids)
    return tuple(db.item_at(d) for d in kernels.unpack_mask(closed, len(db.items)))


def disjunctive_closure(db: TransactionDatabase, pattern: Iterable[int]) -> Pattern:
    """Items occurring only in transactions that intersect the pattern."""
    p = as_pattern(pattern)
    idx = db.indices(p)
    universe = kernels.or_mask(db._item_words, idx)
    inside = kernels.rows_within(db._item_words, universe)
    return tuple(db.item_at(d) for d in np.flatnonzero(inside))


def closure_triple(db: TransactionDatabase, pattern: Iterable[int]) -> ClosureTriple:
    f_c = conjunctive_closure(db, pattern)
    f_d = disjunctive_closure(db, pattern)
    f_bond = tuple(sorted(set(f_c) & set(f_d)))
    return ClosureTriple(f_c, f_d, f_bond)


def f_bond_closure(db: TransactionDatabase, pattern: Iterable[int]) -> Pattern:
    """Largest superset of the pattern with the same bond value."""
    return closure_triple(db, pattern).bond


def is_minimal_correlated(db: TransactionDatabase, pattern: Iterable[int]) -> bool:
    """True iff no direct subset has the same bond value.

    Direct subsets suffice: bond is anti-monotone, so an equal-bond strict
    subset implies an equal-bond direct subset.
    """
    p = as_pattern(pattern)
    if len(p) == 1:
        return True
    conj, disj = _supports(db, p)
    for drop in range(len(p)):
        sub = p[:drop] + p[drop + 1:]
        sc, sd = _supports(db, sub)
        if conj * sd == sc * disj:
            return False
    return True
