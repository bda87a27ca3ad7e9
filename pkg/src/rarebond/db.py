"""Transaction databases: FIMI parsing, validation and bitset indexing.

A database is immutable once built. Items are arbitrary non-negative
integers (FIMI convention); internally they are renumbered densely so
that transaction-id sets pack into fixed-width bitsets.
"""

from __future__ import annotations

import io
from functools import cached_property
from typing import Iterable

from . import kernels
from .errors import EmptyDatabaseError, FimiParseError, UnknownItemError

Pattern = tuple[int, ...]


def as_pattern(items: Iterable[int]) -> Pattern:
    """Normalize an iterable of item ids into a sorted, duplicate-free pattern."""
    pattern = tuple(sorted(set(items)))
    if not pattern:
        raise ValueError("a pattern must contain at least one item")
    for item in pattern:
        if not isinstance(item, int) or isinstance(item, bool) or item < 0:
            raise ValueError(f"item ids must be non-negative integers, got {item!r}")
    return pattern


class TransactionDatabase:
    """Immutable transaction database over integer items.

    Attributes
    ----------
    num_transactions : int
        Number of rows.
    items : tuple[int, ...]
        Sorted distinct item ids (the union of all rows).
    transactions : tuple[Pattern, ...]
        Row view; each row is a sorted duplicate-free item tuple.
    """

    def __init__(self, transactions: Iterable[Iterable[int]]):
        rows = []
        for row in transactions:
            pattern = as_pattern(row)
            rows.append(pattern)
        if not rows:
            raise EmptyDatabaseError("database has no usable transactions")
        self.transactions = tuple(rows)
        self.num_transactions = len(rows)
        universe = sorted(set().union(*map(set, rows)))
        self.items = tuple(universe)
        self._pos = {item: i for i, item in enumerate(universe)}

        item_tids = [[] for _ in universe]
        row_dense = []
        for tid, row in enumerate(rows):
            dense = [self._pos[item] for item in row]
            row_dense.append(dense)
            for d in dense:
                item_tids[d].append(tid)
        self._item_words = kernels.pack_indices(item_tids, self.num_transactions)
        self._row_words = kernels.pack_indices(row_dense, len(universe))
        self._item_supports = [len(tids) for tids in item_tids]

    # -- lookups ---------------------------------------------------------

    def __contains__(self, item: int) -> bool:
        return item in self._pos

    def index_of(self, item: int) -> int:
        """Dense index of an item; raises UnknownItemError if absent."""
        try:
            return self._pos[item]
        except KeyError:
            raise UnknownItemError(f"item {item} does not occur in the database") from None

    def indices(self, pattern: Iterable[int]) -> list[int]:
        return [self.index_of(item) for item in pattern]

    def item_at(self, dense_index: int) -> int:
        return self.items[dense_index]

    def tidset(self, item: int) -> frozenset[int]:
        """Set of transaction indices containing ``item``."""
        d = self.index_of(item)
        return frozenset(kernels.unpack_mask(self._item_words[d], self.num_transactions))

    @cached_property
    def tidsets(self) -> dict[int, frozenset[int]]:
        """Mapping item -> tidset for every item."""
        return {item: self.tidset(item) for item in self.items}

    def item_support(self, item: int) -> int:
        return self._item_supports[self.index_of(item)]

    # -- serialization ---------------------------------------------------

    def to_fimi(self) -> str:
        """Render back to FIMI text (one space-separated line per row)."""
        return "".join(" ".join(map(str, row)) + "\n" for row in self.transactions)


def parse_database(source) -> TransactionDatabase:
    """Parse a FIMI stream or string into a TransactionDatabase.

    One transaction per non-blank line; items are whitespace-separated
    non-negative integers. Duplicate items within a line are dropped,
    blank lines are skipped.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = []
    for lineno, line in enumerate(source, start=1):
        tokens = line.split()
        if not tokens:
            continue
        try:
            row = [int(tok) for tok in tokens]
        except ValueError:
            raise FimiParseError(f"line {lineno}: non-integer token in {line.strip()!r}",
                                 line_number=lineno) from None
        if any(item < 0 for item in row):
            raise FimiParseError(f"line {lineno}: negative item id", line_number=lineno)
        rows.append(row)
    if not rows:
        raise EmptyDatabaseError("no transactions found in input")
    return TransactionDatabase(rows)


def load_database(path) -> TransactionDatabase:
    with open(path, "r", encoding="ascii") as handle:
        return parse_database(handle)
