"""Brute-force reference implementations for testing and golden values.

Everything here works by direct application of the definitions over the
exhaustively enumerated pattern lattice, with supports recounted from
the row view. It shares no code path with the kernels or the miners, so
agreement between the two is a meaningful check. Capacity is capped at
24 items.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .db import Pattern, TransactionDatabase, as_pattern
from .errors import CapacityError
from .measures import MeasuredPattern
from .miner import (MiningParams, Representation, RepresentationKind,
                    RoleFlaggedPattern)

MAX_ITEMS = 24


@dataclass(frozen=True)
class OracleSets:
    """The definitional pattern families for one (db, params) pair."""

    mc: frozenset[Pattern]
    mcf: frozenset[Pattern]
    mcmax: frozenset[Pattern]
    mrmin: frozenset[Pattern]
    mmcr: frozenset[Pattern]
    mfcr: frozenset[Pattern]
    mmcrmin: frozenset[Pattern]
    mfcrmax: frozenset[Pattern]


def _check_capacity(db: TransactionDatabase) -> None:
    if len(db.items) > MAX_ITEMS:
        raise CapacityError(
            f"{len(db.items)} items exceed the exhaustive-scan cap of {MAX_ITEMS}")


def pattern_measures(db: TransactionDatabase) -> dict[Pattern, tuple[int, int]]:
    """(conj, disj) for every non-empty pattern, by scanning the row view.

    The row sets are enumerated once; each transaction contributes to the
    conjunctive count of the subsets it contains and to the disjunctive
    count of every pattern it intersects.
    """
    _check_capacity(db)
    items = db.items
    pos = {item: i for i, item in enumerate(items)}
    n = len(items)
    conj = [0] * (1 << n)
    neg = [0] * (1 << n)
    for row in db.transactions:
        row_mask = 0
        for item in row:
            row_mask |= 1 << pos[item]
        # enumerate submasks of the row (patterns fully inside it)
        sub = row_mask
        while sub:
            conj[sub] += 1
            sub = (sub - 1) & row_mask
        # and submasks of its complement (patterns it misses entirely)
        comp = ((1 << n) - 1) ^ row_mask
        sub = comp
        while sub:
            neg[sub] += 1
            sub = (sub - 1) & comp
    total = db.num_transactions
    out = {}
    for mask in range(1, 1 << n):
        pattern = tuple(items[i] for i in range(n) if mask >> i & 1)
        out[pattern] = (conj[mask], total - neg[mask])
    return out


def oracle_measure(db: TransactionDatabase, pattern: Iterable[int]) -> tuple[int, int]:
    """(conj, disj) of one pattern by direct row scanning."""
    target = set(as_pattern(pattern))
    conj = disj = 0
    for row in db.transactions:
        row_set = set(row)
        if target <= row_set:
            conj += 1
        if target & row_set:
            disj += 1
    return conj, disj


def definitional_f_bond(db: TransactionDatabase, pattern: Iterable[int],
                        measures: dict[Pattern, tuple[int, int]] | None = None) -> Pattern:
    """Item-by-item bond closure, straight from its definition."""
    p = as_pattern(pattern)
    if measures is None:
        measures = pattern_measures(db)
    conj, disj = measures[p]
    out = set(p)
    for item in db.items:
        if item in out:
            continue
        grown = tuple(sorted(p + (item,)))
        gc, gd = measures[grown]
        if conj * gd == gc * disj:
            out.add(item)
    return tuple(sorted(out))


def oracle_mcr(db: TransactionDatabase, params: MiningParams,
               measures: dict[Pattern, tuple[int, int]] | None = None
               ) -> list[MeasuredPattern]:
    """The rare correlated set by exhaustive filtering."""
    if measures is None:
        measures = pattern_measures(db)
    num, den = params.minbond.numerator, params.minbond.denominator
    out = [MeasuredPattern.from_counts(p, conj, disj)
           for p, (conj, disj) in measures.items()
           if 0 < conj < params.minsupp and conj * den >= num * disj]
    out.sort(key=lambda m: (len(m.pattern), m.pattern))
    return out


def oracle_sets(db: TransactionDatabase, params: MiningParams,
                measures: dict[Pattern, tuple[int, int]] | None = None) -> OracleSets:
    """Every pattern family of interest, computed from the definitions."""
    if measures is None:
        measures = pattern_measures(db)
    num, den = params.minbond.numerator, params.minbond.denominator
    minsupp = params.minsupp

    def correlated(p):
        conj, disj = measures[p]
        return conj * den >= num * disj

    mc = {p for p in measures if correlated(p)}
    mcf = {p for p in mc if measures[p][0] >= minsupp}
    mcr = {p for p in mc if 0 < measures[p][0] < minsupp}

    mc_frozen = {p: frozenset(p) for p in mc}
    mc_by_bond: dict[Fraction, list[frozenset]] = {}
    for p in mc:
        conj, disj = measures[p]
        mc_by_bond.setdefault(Fraction(conj, disj), []).append(mc_frozen[p])

    def has_equal_bond_superset(p):
        conj, disj = measures[p]
        ps = mc_frozen[p]
        return any(other > ps for other in mc_by_bond[Fraction(conj, disj)])

    def has_equal_bond_subset(p):
        conj, disj = measures[p]
        ps = mc_frozen[p]
        return any(other < ps for other in mc_by_bond[Fraction(conj, disj)])

    mcmax = {p for p in mc
             if not any(other > mc_frozen[p] for other in mc_frozen.values())}
    mfcr = {p for p in mcr if not has_equal_bond_superset(p)}
    mmcr = {p for p in mcr if not has_equal_bond_subset(p)}

    # direct subsets suffice below: conjunctive support is anti-monotone
    def all_direct_subsets_frequent(p):
        if len(p) == 1:
            return True
        return all(measures[p[:i] + p[i + 1:]][0] >= minsupp for i in range(len(p)))

    mrmin = {p for p in measures
             if 0 < measures[p][0] < minsupp and all_direct_subsets_frequent(p)}
    return OracleSets(
        mc=frozenset(mc),
        mcf=frozenset(mcf),
        mcmax=frozenset(mcmax),
        mrmin=frozenset(mrmin),
        mmcr=frozenset(mmcr),
        mfcr=frozenset(mfcr),
        mmcrmin=frozenset(mmcr & mrmin),
        mfcrmax=frozenset(mfcr & mcmax),
    )


def oracle_representation(db: TransactionDatabase, params: MiningParams,
                          kind: RepresentationKind,
                          measures: dict[Pattern, tuple[int, int]] | None = None
                          ) -> Representation:
    """Build any representation kind from the definitional sets.

    Role flags mirror what the miners emit for the same kind, so results
    are directly comparable.
    """
    if measures is None:
        measures = pattern_measures(db)
    if kind is RepresentationKind.MCR:
        entries = tuple(RoleFlaggedPattern(m) for m in oracle_mcr(db, params, measures))
        return Representation(kind, params, entries)
    sets = oracle_sets(db, params, measures)

    def entry(p, with_cmax, with_mmin):
        conj, disj = measures[p]
        return RoleFlaggedPattern(
            MeasuredPattern.from_counts(p, conj, disj),
            is_minimal=p in sets.mmcr,
            is_closed=p in sets.mfcr,
            is_closed_maximal=with_cmax and p in sets.mfcrmax,
            is_minimal_minimal=with_mmin and p in sets.mmcrmin)

    if kind is RepresentationKind.RMCR:
        pool, cmax, mmin = sets.mmcr | sets.mfcr, False, False
    elif kind is RepresentationKind.RMMAXF:
        pool, cmax, mmin = sets.mmcr | sets.mfcrmax, True, False
    elif kind is RepresentationKind.RMINMF:
        pool, cmax, mmin = sets.mfcr | sets.mmcrmin, False, True
    elif kind is RepresentationKind.RMINMMAXF:
        pool, cmax, mmin = sets.mfcrmax | sets.mmcrmin, True, True
    else:
        raise ValueError(f"unknown representation kind {kind!r}")
    entries = tuple(entry(p, cmax, mmin) for p in pool)
    return Representation(kind, params, entries)
