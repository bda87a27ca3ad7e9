"""Querying, regeneration and serialization of representations.

Exact representations answer membership and yield exact supports for any
pattern; the approximate one yields interval bounds instead. A stored
representation embeds its thresholds and the transaction count, so no
database access is needed at query time.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .db import Pattern, as_pattern
from .errors import (CorruptRepresentationError, RepresentationKindError)
from .measures import MeasuredPattern
from .miner import (MiningParams, Representation, RepresentationKind,
                    RoleFlaggedPattern)

EXACT_KINDS = (RepresentationKind.RMCR, RepresentationKind.RMMAXF,
               RepresentationKind.RMINMF)


@dataclass(frozen=True)
class QueryAnswer:
    """Exact query result: either a member with its four measures, or not."""

    member: bool
    conj: int | None = None
    disj: int | None = None
    neg: int | None = None
    bond: Fraction | None = None

    @property
    def status(self) -> str:
        return "member" if self.member else "not-rare-correlated"


@dataclass(frozen=True)
class BoundsAnswer:
    """Approximate query result: interval bounds around the true measures."""

    member: bool
    conj_range: tuple[int, int] | None = None
    disj_range: tuple[int, int] | None = None
    neg_range: tuple[int, int] | None = None
    bond_range: tuple[Fraction, Fraction] | None = None

    @property
    def status(self) -> str:
        return "member" if self.member else "not-rare-correlated"


NOT_MEMBER = QueryAnswer(False)


def _entry_disj(entry: RoleFlaggedPattern) -> int:
    return entry.measured.disj


def _answer_from(conj: int, bond: Fraction, num_transactions: int) -> QueryAnswer:
    disj = Fraction(conj) / bond
    if disj.denominator != 1:
        raise CorruptRepresentationError(
            f"conj={conj} with bond={bond} yields a non-integral disjunctive support")
    disj = int(disj)
    return QueryAnswer(True, conj, disj, num_transactions - disj, bond)


def query_pattern(rep: Representation, pattern: Iterable[int],
                  num_transactions: int | None = None) -> QueryAnswer:
    """Decide membership of a pattern in the rare correlated set and, for
    members, recover its exact measures from an exact representation.

    A pattern not in the representation is a member exactly when it has
    both a subset and a superset among the entries; its measures are then
    those of its closure (smallest stored superset), or, for the
    maximal-closed variant, the minima over its stored subsets.
    """
    if rep.kind not in EXACT_KINDS:
        raise RepresentationKindError(
            f"{rep.kind.value} is not an exact representation; use approximate_query")
    ntrans = rep.params.num_transactions if num_transactions is None else num_transactions
    p = as_pattern(pattern)

    entry = rep.get(p)
    if entry is not None:
        return _answer_from(entry.measured.conj, entry.measured.bond, ntrans)

    target = frozenset(p)
    subsets = []
    supersets = []
    for candidate_set, candidate in zip(rep._item_sets, rep.entries):
        if candidate_set <= target:
            subsets.append(candidate)
        elif candidate_set >= target:
            supersets.append(candidate)
    if not subsets or not supersets:
        return NOT_MEMBER

    if rep.kind is RepresentationKind.RMMAXF:
        conj = min(e.measured.conj for e in subsets)
        bond = min(e.measured.bond for e in subsets)
        return _answer_from(conj, bond, ntrans)
    closure = min(supersets, key=lambda e: (len(e.pattern), e.pattern))
    return _answer_from(closure.measured.conj, closure.measured.bond, ntrans)


def regenerate_all(rmcr: Representation) -> Representation:
    """Expand an RMCR representation back into the full rare correlated set.

    Every entry is emitted as is; in addition, for each minimal entry the
    patterns strictly between it and its closure are emitted with the
    closure's measures.
    """
    if rmcr.kind is not RepresentationKind.RMCR:
        raise RepresentationKindError(f"expected an RMCR representation, got {rmcr.kind.value}")
    found: dict[Pattern, MeasuredPattern] = {
        e.pattern: e.measured for e in rmcr.entries}
    closed = [e for e in rmcr.entries if e.is_closed]
    for entry in rmcr.minimal_entries():
        if entry.is_closed:
            continue  # its class is the singleton {entry}
        base = frozenset(entry.pattern)
        covering = [e for e in closed if frozenset(e.pattern) > base]
        if not covering:
            raise CorruptRepresentationError(
                f"minimal entry {entry.pattern} has no covering closed entry")
        closure = min(covering, key=lambda e: (len(e.pattern), e.pattern))
        if closure.measured.conj != entry.measured.conj or \
                closure.measured.bond != entry.measured.bond:
            raise CorruptRepresentationError(
                f"closure {closure.pattern} disagrees with minimal {entry.pattern}")
        extra = sorted(set(closure.pattern) - set(entry.pattern))
        for size in range(1, len(extra)):
            for added in combinations(extra, size):
                grown = tuple(sorted(entry.pattern + added))
                if grown not in found:
                    found[grown] = MeasuredPattern(
                        grown, closure.measured.conj, closure.measured.disj,
                        closure.measured.bond)
    entries = tuple(RoleFlaggedPattern(m) for m in found.values())
    return Representation(RepresentationKind.MCR, rmcr.params, entries)


def approximate_query(rep: Representation, pattern: Iterable[int],
                      num_transactions: int | None = None) -> BoundsAnswer:
    """Membership plus interval bounds from the approximate representation.

    Bounds combine the stored measures of the maximal closed supersets and
    the minimal-rare subsets of the pattern; the true conjunctive and
    disjunctive supports and bond always fall inside the returned ranges.
    """
    if rep.kind is not RepresentationKind.RMINMMAXF:
        raise RepresentationKindError(
            f"expected the approximate representation, got {rep.kind.value}")
    ntrans = rep.params.num_transactions if num_transactions is None else num_transactions
    p = as_pattern(pattern)

    entry = rep.get(p)
    if entry is not None:
        conj = entry.measured.conj
        disj = entry.measured.disj
        bond = entry.measured.bond
        return BoundsAnswer(True, (conj, conj), (disj, disj),
                            (ntrans - disj, ntrans - disj), (bond, bond))

    target = frozenset(p)
    has_subset = any(s <= target for s in rep._item_sets)
    has_superset = any(s >= target for s in rep._item_sets)
    if not has_subset or not has_superset:
        return BoundsAnswer(False)

    maximal_supersets = [e for e, s in zip(rep.entries, rep._item_sets)
                         if e.is_closed_maximal and s >= target]
    minimal_subsets = [e for e, s in zip(rep.entries, rep._item_sets)
                       if e.is_minimal_minimal and s <= target]
    if not maximal_supersets or not minimal_subsets:
        raise CorruptRepresentationError(
            "sandwiched pattern lacks flagged subsets or supersets")
    r1 = max(e.measured.conj for e in maximal_supersets)
    r2 = min(e.measured.conj for e in minimal_subsets)
    r3 = min(_entry_disj(e) for e in maximal_supersets)
    r4 = max(_entry_disj(e) for e in minimal_subsets)
    min_conj, max_conj = min(r1, r2), max(r1, r2)
    min_disj, max_disj = min(r3, r4), max(r3, r4)
    return BoundsAnswer(
        True,
        (min_conj, max_conj),
        (min_disj, max_disj),
        (ntrans - max_disj, ntrans - min_disj),
        (Fraction(min_conj, max_disj), Fraction(max_conj, min_disj)),
    )


# ---------------------------------------------------------------------------
# TSV serialization

_FLAG_NAMES = (("M", "is_minimal"), ("C", "is_closed"),
               ("CMax", "is_closed_maximal"), ("MMin", "is_minimal_minimal"))


def _format_bond(bond: Fraction) -> str:
    return f"{bond.numerator}/{bond.denominator}"


def dump_representation(rep: Representation) -> str:
    """Render a representation in the TSV exchange format."""
    out = io.StringIO()
    out.write(f"#kind\t{rep.kind.value}\n")
    out.write(f"#minsupp\t{rep.params.minsupp}\n")
    out.write(f"#minbond\t{_format_bond(rep.params.minbond)}\n")
    out.write(f"#ntrans\t{rep.params.num_transactions}\n")
    for entry in rep.entries:
        flags = ",".join(name for name, attr in _FLAG_NAMES if getattr(entry, attr))
        items = " ".join(map(str, entry.pattern))
        out.write(f"{items}\t{entry.measured.conj}\t"
                  f"{_format_bond(entry.measured.bond)}\t{flags}\n")
    return out.getvalue()


def save_representation(rep: Representation, path) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(dump_representation(rep))


def parse_representation(text: str) -> Representation:
    """Parse the TSV exchange format back into a Representation."""
    headers = {}
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            try:
                key, value = line[1:].split("\t")
            except ValueError:
                raise CorruptRepresentationError(f"line {lineno}: bad header {line!r}")
            headers[key] = value
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise CorruptRepresentationError(f"line {lineno}: expected 4 fields")
        items_text, conj_text, bond_text, flags_text = parts
        try:
            pattern = as_pattern(int(tok) for tok in items_text.split())
            conj = int(conj_text)
            bond = Fraction(bond_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise CorruptRepresentationError(f"line {lineno}: {exc}") from None
        disj = Fraction(conj) / bond
        if conj <= 0 or disj.denominator != 1:
            raise CorruptRepresentationError(
                f"line {lineno}: inconsistent conj/bond pair")
        flags = set(filter(None, flags_text.split(",")))
        known = {name for name, _ in _FLAG_NAMES}
        if not flags <= known:
            raise CorruptRepresentationError(f"line {lineno}: unknown flags {flags - known}")
        try:
            entries.append(RoleFlaggedPattern(
                MeasuredPattern.from_counts(pattern, conj, int(disj)),
                is_minimal="M" in flags,
                is_closed="C" in flags,
                is_closed_maximal="CMax" in flags,
                is_minimal_minimal="MMin" in flags))
        except ValueError as exc:
            raise CorruptRepresentationError(f"line {lineno}: {exc}") from None
    missing = {"kind", "minsupp", "minbond", "ntrans"} - set(headers)
    if missing:
        raise CorruptRepresentationError(f"missing headers: {sorted(missing)}")
    try:
        kind = RepresentationKind(headers["kind"])
        params = MiningParams(int(headers["minsupp"]), Fraction(headers["minbond"]),
                              int(headers["ntrans"]))
    except ValueError as exc:
        raise CorruptRepresentationError(str(exc)) from None
    try:
        return Representation(kind, params, tuple(entries))
    except ValueError as exc:
        raise CorruptRepresentationError(str(exc)) from None


def load_representation(path) -> Representation:
    with open(path, "r", encoding="ascii") as handle:
        return parse_representation(handle.read())
