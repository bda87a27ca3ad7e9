"""Level-wise mining of rare correlated patterns and their concise forms.

The mined universe is the set of patterns that are simultaneously rare
(conjunctive support strictly below ``minsupp``, but nonzero) and
correlated (bond at least ``minbond``). Because rarity is monotone and
correlation is anti-monotone, the search space is a band delimited by
the rare members of the maximal-correlated border and the correlated
members of the minimal-rare border; the miners walk it bottom-up.

All pattern containment work runs on dense item indices and integer
bitmasks; support counting goes through the bitset kernels.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .db import Pattern, TransactionDatabase
from .errors import RepresentationConsistencyError, RepresentationKindError
from .measures import MeasuredPattern, cross_support_trivial_threshold


@dataclass(frozen=True)
class MiningParams:
    """Thresholds of a mining run (absolute minsupp, exact-rational minbond)."""

    minsupp: int
    minbond: Fraction
    num_transactions: int

    def __post_init__(self):
        if self.minsupp < 1:
            raise ValueError("minsupp must be a positive transaction count")
        object.__setattr__(self, "minbond", Fraction(self.minbond))
        if not 0 < self.minbond <= 1:
            raise ValueError("minbond must lie in (0, 1]")
        if self.num_transactions < 0:
            raise ValueError("num_transactions must be non-negative")

    @property
    def maxsupp(self) -> int:
        return self.minsupp - 1

    @property
    def minsupp_rel(self) -> Fraction:
        return Fraction(self.minsupp, self.num_transactions)


@dataclass(frozen=True)
class RoleFlaggedPattern:
    """Representation member with its roles inside the equivalence classes."""

    measured: MeasuredPattern
    is_minimal: bool = False
    is_closed: bool = False
    is_closed_maximal: bool = False
    is_minimal_minimal: bool = False

    def __post_init__(self):
        if self.is_closed_maximal and not self.is_closed:
            raise ValueError("closed-maximal implies closed")
        if self.is_minimal_minimal and not self.is_minimal:
            raise ValueError("minimal-minimal implies minimal")

    @property
    def pattern(self) -> Pattern:
        return self.measured.pattern


class RepresentationKind(enum.Enum):
    MCR = "mcr"
    RMCR = "rmcr"
    RMMAXF = "rmmaxf"
    RMINMF = "rminmf"
    RMINMMAXF = "rminmmaxf"


@dataclass(frozen=True)
class Representation:
    """An ordered, immutable collection of role-flagged patterns."""

    kind: RepresentationKind
    params: MiningParams
    entries: tuple[RoleFlaggedPattern, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.entries,
                               key=lambda e: (len(e.pattern), e.pattern)))
        object.__setattr__(self, "entries", ordered)
        seen = set()
        for entry in ordered:
            if entry.pattern in seen:
                raise ValueError(f"duplicate entry {entry.pattern}")
            seen.add(entry.pattern)
            if self.kind is not RepresentationKind.MCR:
                if not (entry.is_minimal or entry.is_closed):
                    raise ValueError(f"{entry.pattern} carries no role flag")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, pattern) -> bool:
        return tuple(pattern) in self._by_pattern

    @cached_property
    def _by_pattern(self) -> dict[Pattern, RoleFlaggedPattern]:
        return {e.pattern: e for e in self.entries}

    @cached_property
    def _item_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(e.pattern) for e in self.entries)

    def get(self, pattern) -> RoleFlaggedPattern | None:
        return self._by_pattern.get(tuple(pattern))

    def patterns(self) -> tuple[Pattern, ...]:
        return tuple(e.pattern for e in self.entries)

    def minimal_entries(self) -> tuple[RoleFlaggedPattern, ...]:
        return tuple(e for e in self.entries if e.is_minimal)

    def closed_entries(self) -> tuple[RoleFlaggedPattern, ...]:
        return tuple(e for e in self.entries if e.is_closed)


# ---------------------------------------------------------------------------
# candidate generation

def apriori_gen(level: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Classic join-and-prune candidate generation.

    Joins pairs of same-size sorted patterns sharing their first ``n-1``
    items, then keeps a candidate only if every direct subset occurs in
    the input level.
    """
    level_set = {tuple(p) for p in level}
    if not level_set:
        return []
    sizes = {len(p) for p in level_set}
    if len(sizes) != 1:
        raise ValueError("apriori_gen expects same-size patterns")
    groups: dict[tuple, list[int]] = {}
    for p in sorted(level_set):
        groups.setdefault(p[:-1], []).append(p[-1])
    out = []
    for prefix, lasts in groups.items():
        for a, b in combinations(lasts, 2):
            cand = prefix + (a, b)
            if all(cand[:i] + cand[i + 1:] in level_set for i in range(len(cand) - 2)):
                out.append(cand)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# dense helpers

def _mask(dense: tuple[int, ...]) -> int:
    m = 0
    for d in dense:
        m |= 1 << d
    return m


def _inside_any(mask: int, borders: list[int], strict: bool) -> bool:
    for border in borders:
        if mask & border == mask and (not strict or mask != border):
            return True
    return False


def _level_measures(db: TransactionDatabase,
                    cands: list[tuple[int, ...]]) -> dict[tuple[int, ...], tuple[int, int]]:
    """Conjunctive/disjunctive supports for same-size dense candidates."""
    if not cands:
        return {}
    conj, disj = kernels.level_supports(db._item_words,
                                        np.asarray(cands, dtype=np.intp))
    return {c: (int(cj), int(dj)) for c, cj, dj in zip(cands, conj, disj)}


def _f_bond_dense(db: TransactionDatabase, dense: tuple[int, ...]) -> tuple[int, ...]:
    """Bond closure on dense indices: conjunctive ∩ disjunctive closure."""
    idx = list(dense)
    cover = kernels.and_mask(db._item_words, idx)
    tids = kernels.unpack_mask(cover, db.num_transactions)
    closed_conj = kernels.and_mask(db._row_words, tids)
    universe = kernels.or_mask(db._item_words, idx)
    inside = kernels.rows_within(db._item_words, universe)
    return tuple(d for d in kernels.unpack_mask(closed_conj, len(db.items))
                 if inside[d])


def _to_pattern(db: TransactionDatabase, dense: tuple[int, ...]) -> Pattern:
    return tuple(db.item_at(d) for d in dense)


def _cross_support_ok(db: TransactionDatabase, dense: tuple[int, ...],
                      minbond: Fraction) -> bool:
    supports = [db._item_supports[d] for d in dense]
    return min(supports) * minbond.denominator >= minbond.numerator * max(supports)


# ---------------------------------------------------------------------------
# correlated-pattern enumeration and the maximal border

def _correlated_levels(db: TransactionDatabase, minbond: Fraction,
                       use_cross_support: bool = True):
    """Yield per level the dict of correlated dense patterns -> (conj, disj).

    Standard Apriori walk of the correlation order ideal: bond is
    anti-monotone, so every correlated pattern is reachable through
    correlated subsets only.
    """
    minr = cross_support_trivial_threshold(db)
    check_cross = use_cross_support and minbond > minr
    num, den = minbond.numerator, minbond.denominator
    level = {(d,): (s, s) for d, s in enumerate(db._item_supports)}
    while level:
        yield level
        cands = apriori_gen(sorted(level))
        if check_cross:
            cands = [c for c in cands if _cross_support_ok(db, c, minbond)]
        measures = _level_measures(db, cands)
        level = {c: (cj, dj) for c, (cj, dj) in measures.items()
                 if cj * den >= num * dj}


def correlated_census(db: TransactionDatabase, minbond: Fraction,
                      minsupp: int | None = None):
    """Maximal correlated patterns, plus correlated/frequent-correlated tallies.

    Returns ``(maximals, num_correlated, num_frequent_correlated)``; the
    frequent tally is None when ``minsupp`` is None.
    """
    levels = list(_correlated_levels(db, minbond))
    total = sum(len(level) for level in levels)
    frequent = None
    if minsupp is not None:
        frequent = sum(1 for level in levels
                       for conj, _ in level.values() if conj >= minsupp)
    maximals: list[MeasuredPattern] = []
    for depth, level in enumerate(levels):
        covered = set()
        if depth + 1 < len(levels):
            for bigger in levels[depth + 1]:
                for i in range(len(bigger)):
                    covered.add(bigger[:i] + bigger[i + 1:])
        for dense, (conj, disj) in level.items():
            if dense not in covered:
                maximals.append(MeasuredPattern.from_counts(
                    _to_pattern(db, dense), conj, disj))
    maximals.sort(key=lambda m: (len(m.pattern), m.pattern))
    return maximals, total, frequent


def extract_mcmax(db: TransactionDatabase, minbond: Fraction) -> list[MeasuredPattern]:
    """Maximal elements (by inclusion) of the correlated patterns."""
    return correlated_census(db, Fraction(minbond))[0]


# ---------------------------------------------------------------------------
# MCR mining

def _split_border(db, maximals, minsupp):
    rare = [(tuple(db.indices(m.pattern)), m) for m in maximals if m.conj < minsupp]
    frequent = [tuple(db.indices(m.pattern)) for m in maximals if m.conj >= minsupp]
    return rare, frequent


def mine_mcr(db: TransactionDatabase, params: MiningParams, *,
             use_cross_support: bool = True, use_border_prunes: bool = True,
             _maximals: list[MeasuredPattern] | None = None) -> Representation:
    """All rare correlated patterns, with exact conjunctive support and bond.

    Seeds the result with the rare maximal correlated patterns, then walks
    the lattice level by level under the rare-maximal border. The prunes
    only skip work; disabling them yields the same output.
    """
    _check_params(db, params)
    maximals = extract_mcmax(db, params.minbond) if _maximals is None else _maximals
    rare_max, freq_max = _split_border(db, maximals, params.minsupp)
    num, den = params.minbond.numerator, params.minbond.denominator

    found: dict[tuple[int, ...], tuple[int, int]] = {}
    for dense, m in rare_max:
        found[dense] = (m.conj, m.disj)

    if use_border_prunes and not rare_max:
        return _build_mcr(db, params, found)

    rare_masks = [_mask(d) for d, _ in rare_max]
    freq_masks = [_mask(d) for d in freq_max]
    minr = cross_support_trivial_threshold(db)
    check_cross = use_cross_support and params.minbond > minr

    level1 = {(d,): (s, s) for d, s in enumerate(db._item_supports)}
    for dense, (conj, disj) in level1.items():
        if conj < params.minsupp and dense not in found:
            found[dense] = (conj, disj)

    pool = sorted(level1)
    while pool:
        cands = apriori_gen(pool)
        if check_cross:
            cands = [c for c in cands if _cross_support_ok(db, c, params.minbond)]
        if use_border_prunes:
            cands = [c for c in cands
                     if _inside_any(_mask(c), rare_masks, strict=True)]
        pool = cands
        if not pool:
            break
        eval_set = pool
        if use_border_prunes and freq_masks:
            eval_set = [c for c in pool
                        if not _inside_any(_mask(c), freq_masks, strict=True)]
        for dense, (conj, disj) in _level_measures(db, eval_set).items():
            if 0 < conj < params.minsupp and conj * den >= num * disj:
                found.setdefault(dense, (conj, disj))
    return _build_mcr(db, params, found)


def _build_mcr(db, params, found):
    entries = tuple(
        RoleFlaggedPattern(MeasuredPattern.from_counts(_to_pattern(db, dense), cj, dj))
        for dense, (cj, dj) in found.items())
    return Representation(RepresentationKind.MCR, params, entries)


# ---------------------------------------------------------------------------
# RMCR mining (minimal and closed rare correlated patterns)

def mine_rmcr(db: TransactionDatabase, params: MiningParams, *,
              use_cross_support: bool = True, use_border_prunes: bool = True,
              use_minimal_prune: bool = True,
              _maximals: list[MeasuredPattern] | None = None) -> Representation:
    """The exact concise representation: minimal and closed members of
    every rare correlated equivalence class, with role flags.

    Minimality of a candidate is decided against its direct subsets,
    whose measures are always available from the previous level; the
    closure of each minimal is the intersection of its conjunctive and
    disjunctive closures.
    """
    _check_params(db, params)
    maximals = extract_mcmax(db, params.minbond) if _maximals is None else _maximals
    rare_max, freq_max = _split_border(db, maximals, params.minsupp)
    num, den = params.minbond.numerator, params.minbond.denominator

    minimal_found: dict[tuple[int, ...], tuple[int, int]] = {}
    closed_found: dict[tuple[int, ...], tuple[int, int]] = {}

    def record_minimal(dense, conj, disj):
        minimal_found[dense] = (conj, disj)
        closure = _f_bond_dense(db, dense)
        previous = closed_found.setdefault(closure, (conj, disj))
        if previous != (conj, disj):
            raise AssertionError(f"inconsistent class measures at {closure}")

    if use_border_prunes and not rare_max:
        return _build_rmcr(db, params, minimal_found, closed_found)

    rare_masks = [_mask(d) for d, _ in rare_max]
    freq_masks = [_mask(d) for d in freq_max]
    minr = cross_support_trivial_threshold(db)
    check_cross = use_cross_support and params.minbond > minr

    prev_supports = {(d,): (s, s) for d, s in enumerate(db._item_supports)}
    prev_minimal = {dense: True for dense in prev_supports}  # singletons
    for dense, (conj, disj) in prev_supports.items():
        if 0 < conj < params.minsupp:
            record_minimal(dense, conj, disj)

    pool = sorted(prev_supports)
    while pool:
        cands = apriori_gen(pool)
        if check_cross:
            cands = [c for c in cands if _cross_support_ok(db, c, params.minbond)]
        if use_border_prunes:
            cands = [c for c in cands
                     if _inside_any(_mask(c), rare_masks, strict=False)]
        if use_minimal_prune:
            # minimal correlated patterns form an order ideal: a candidate
            # with a correlated non-minimal direct subset cannot be minimal,
            # nor can any of its supersets.
            kept = []
            for c in cands:
                ok = True
                for i in range(len(c)):
                    sub = c[:i] + c[i + 1:]
                    scj, sdj = prev_supports[sub]
                    if scj * den >= num * sdj and not prev_minimal[sub]:
                        ok = False
                        break
                if ok:
                    kept.append(c)
            cands = kept
        pool = cands
        if not pool:
            break
        supports = _level_measures(db, pool)
        cur_minimal = {}
        for dense, (conj, disj) in supports.items():
            distinct = True
            for i in range(len(dense)):
                sub = dense[:i] + dense[i + 1:]
                scj, sdj = prev_supports[sub]
                if conj * sdj == scj * disj:
                    distinct = False
                    break
            cur_minimal[dense] = distinct
        skip_frequent_border = use_border_prunes and bool(freq_masks)
        for dense, (conj, disj) in supports.items():
            if skip_frequent_border and _inside_any(_mask(dense), freq_masks,
                                                    strict=True):
                continue
            if not 0 < conj < params.minsupp:
                continue
            if conj * den < num * disj:
                continue
            if cur_minimal[dense]:
                record_minimal(dense, conj, disj)
        prev_supports, prev_minimal = supports, cur_minimal
    return _build_rmcr(db, params, minimal_found, closed_found)


def _build_rmcr(db, params, minimal_found, closed_found):
    entries = []
    for dense in set(minimal_found) | set(closed_found):
        conj, disj = (minimal_found.get(dense) or closed_found[dense])
        if dense in minimal_found and dense in closed_found:
            if minimal_found[dense] != closed_found[dense]:
                raise AssertionError(f"role measures disagree at {dense}")
        entries.append(RoleFlaggedPattern(
            MeasuredPattern.from_counts(_to_pattern(db, dense), conj, disj),
            is_minimal=dense in minimal_found,
            is_closed=dense in closed_found))
    return Representation(RepresentationKind.RMCR, params, tuple(entries))


# ---------------------------------------------------------------------------
# derived representations

def _check_params(db, params):
    if params.num_transactions != db.num_transactions:
        raise RepresentationConsistencyError(
            f"parameters carry |T|={params.num_transactions}, "
            f"database has {db.num_transactions}")


def _check_rmcr(db, rmcr):
    if rmcr.kind is not RepresentationKind.RMCR:
        raise RepresentationKindError(f"expected an RMCR representation, got {rmcr.kind.value}")
    _check_params(db, rmcr.params)
    for entry in rmcr.entries:
        for item in entry.pattern:
            if item not in db:
                raise RepresentationConsistencyError(
                    f"representation item {item} is unknown to the database")


def _flag_closed_maximal(db, rmcr, maximals):
    border = {m.pattern for m in maximals}
    return {e.pattern: e.is_closed and e.pattern in border for e in rmcr.entries}


def _flag_minimal_minimal(db, rmcr):
    flags = {}
    for entry in rmcr.entries:
        flag = False
        if entry.is_minimal:
            p = tuple(db.indices(entry.pattern))
            if len(p) == 1:
                flag = True
            else:
                subs = [p[:i] + p[i + 1:] for i in range(len(p))]
                flag = all(conj >= rmcr.params.minsupp
                           for conj, _ in _level_measures(db, subs).values())
        flags[entry.pattern] = flag
    return flags


def _rebuild(entry, cmax, mmin):
    return RoleFlaggedPattern(entry.measured,
                              is_minimal=entry.is_minimal,
                              is_closed=entry.is_closed,
                              is_closed_maximal=cmax,
                              is_minimal_minimal=mmin)


def derive_rmmaxf(db: TransactionDatabase, rmcr: Representation, *,
                  _maximals=None) -> Representation:
    """Keep the minimal entries plus only the maximal closed entries."""
    _check_rmcr(db, rmcr)
    maximals = extract_mcmax(db, rmcr.params.minbond) if _maximals is None else _maximals
    cmax = _flag_closed_maximal(db, rmcr, maximals)
    entries = tuple(_rebuild(e, cmax[e.pattern], e.is_minimal_minimal)
                    for e in rmcr.entries
                    if e.is_minimal or cmax[e.pattern])
    return Representation(RepresentationKind.RMMAXF, rmcr.params, entries)


def derive_rminmf(db: TransactionDatabase, rmcr: Representation) -> Representation:
    """Keep the closed entries plus only the minimal-rare minimal entries."""
    _check_rmcr(db, rmcr)
    mmin = _flag_minimal_minimal(db, rmcr)
    entries = tuple(_rebuild(e, e.is_closed_maximal, mmin[e.pattern])
                    for e in rmcr.entries
                    if e.is_closed or mmin[e.pattern])
    return Representation(RepresentationKind.RMINMF, rmcr.params, entries)


def derive_rminmmaxf(db: TransactionDatabase, rmcr: Representation, *,
                     _maximals=None) -> Representation:
    """Approximate representation: maximal closed plus minimal-rare minimal."""
    _check_rmcr(db, rmcr)
    maximals = extract_mcmax(db, rmcr.params.minbond) if _maximals is None else _maximals
    cmax = _flag_closed_maximal(db, rmcr, maximals)
    mmin = _flag_minimal_minimal(db, rmcr)
    entries = tuple(_rebuild(e, cmax[e.pattern], mmin[e.pattern])
                    for e in rmcr.entries
                    if cmax[e.pattern] or mmin[e.pattern])
    return Representation(RepresentationKind.RMINMMAXF, rmcr.params, entries)


# ---------------------------------------------------------------------------
# cardinality statistics (the reporting shape of the benchmark tables)

@dataclass
class MiningStatistics:
    params: MiningParams
    cardinalities: dict[str, int]
    wall_time: float = 0.0

    COLUMNS = ("MCR", "MCF", "MMCR", "MFCR", "MMCRMin", "MFCRMax",
               "RMCR", "RMMaxF", "RMinMF", "RMinMMaxF")


def collect_statistics(db: TransactionDatabase, params: MiningParams) -> MiningStatistics:
    """One benchmark-style cardinality row for a database and thresholds."""
    start = time.perf_counter()
    maximals, _, mcf = correlated_census(db, params.minbond, params.minsupp)
    mcr = mine_mcr(db, params, _maximals=maximals)
    rmcr = mine_rmcr(db, params, _maximals=maximals)
    rmmaxf = derive_rmmaxf(db, rmcr, _maximals=maximals)
    rminmf = derive_rminmf(db, rmcr)
    rminmmaxf = derive_rminmmaxf(db, rmcr, _maximals=maximals)
    counts = {
        "MCR": len(mcr),
        "MCF": mcf,
        "MMCR": len(rmcr.minimal_entries()),
        "MFCR": len(rmcr.closed_entries()),
        "MMCRMin": sum(1 for e in rminmf.entries if e.is_minimal_minimal),
        "MFCRMax": sum(1 for e in rmmaxf.entries if e.is_closed_maximal),
        "RMCR": len(rmcr),
        "RMMaxF": len(rmmaxf),
        "RMinMF": len(rminmf),
        "RMinMMaxF": len(rminmmaxf),
    }
    return MiningStatistics(params, counts, time.perf_counter() - start)
