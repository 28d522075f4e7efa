"""Hybrid transaction store: one flat cell per item occurrence, linked
horizontally (within its transaction), vertically (per item, across
transactions in ascending order), and mirrored by a per-transaction bitmap.

Support counting at a search node runs in one of two modes over the node's
projected transactions (its Pdr): a horizontal scan that walks each
transaction's cells, or bitmap probes against the tail. ``select_mode``
switches on how short the projected transactions are relative to the tail.
The store is immutable after ``build_hdr`` and safe to share between
concurrent mining runs; Pdr objects are per-node and never mutated after
creation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .dataset import TransactionDatabase


class CountMode(enum.Enum):
    HORIZONTAL = "horizontal"
    BITMAP = "bitmap"
    AUTO = "auto"


@dataclass
class CostCounters:
    """Work tallies, accumulated across counting calls and never reset
    internally. Horizontal calls bill one cells_touched per tail-member cell
    visited; bitmap calls bill one bit_tests per (transaction, tail item)
    probe."""

    cells_touched: int = 0
    bit_tests: int = 0


@dataclass(frozen=True)
class Cell:
    """Read-only view of one occurrence. Link fields are cell indices or
    None at a chain end."""

    item: int
    txn: int
    h_prev: int | None
    h_next: int | None
    v_prev: int | None
    v_next: int | None


@dataclass(slots=True)
class Pdr:
    """A node's projection: the ascending transaction indices containing its
    head, plus the count of their cells whose item lies in the node's tail
    (maintained during projection so the ATL read is O(1))."""

    txns: list[int]
    restricted_length_sum: int

    @property
    def atl(self) -> float:
        if not self.txns:
            return 0.0
        return self.restricted_length_sum / len(self.txns)


class HdrStore:
    """Cells grouped contiguously by transaction, with link arrays and
    per-transaction bitmaps. ``txn_first_cell`` has one trailing sentinel
    entry equal to the cell count, so transaction t owns the half-open cell
    range [txn_first_cell[t], txn_first_cell[t+1])."""

    __slots__ = (
        "db",
        "cell_item",
        "cell_txn",
        "h_prev",
        "h_next",
        "v_prev",
        "v_next",
        "txn_first_cell",
        "txn_bitmap",
        "item_first_cell",
    )

    def __init__(
        self,
        db: TransactionDatabase,
        cell_item: list[int],
        cell_txn: list[int],
        h_prev: list[int],
        h_next: list[int],
        v_prev: list[int],
        v_next: list[int],
        txn_first_cell: list[int],
        txn_bitmap: list[int],
        item_first_cell: list[int],
    ):
        self.db = db
        self.cell_item = cell_item
        self.cell_txn = cell_txn
        self.h_prev = h_prev
        self.h_next = h_next
        self.v_prev = v_prev
        self.v_next = v_next
        self.txn_first_cell = txn_first_cell
        self.txn_bitmap = txn_bitmap
        self.item_first_cell = item_first_cell

    @property
    def item_count(self) -> int:
        return self.db.item_count

    @property
    def txn_count(self) -> int:
        return len(self.db.transactions)

    @property
    def cell_count(self) -> int:
        return len(self.cell_item)

    def cell(self, index: int) -> Cell:
        def opt(link: int) -> int | None:
            return None if link == -1 else link

        return Cell(
            item=self.cell_item[index],
            txn=self.cell_txn[index],
            h_prev=opt(self.h_prev[index]),
            h_next=opt(self.h_next[index]),
            v_prev=opt(self.v_prev[index]),
            v_next=opt(self.v_next[index]),
        )

    def root_pdr(self) -> Pdr:
        """Projection of the empty head: every transaction, every cell in
        the tail (the tail at the root is the whole item range)."""
        return Pdr(list(range(self.txn_count)), self.cell_count)


def build_hdr(db: TransactionDatabase) -> HdrStore:
    """Lay out one cell per (transaction, item) occurrence and wire all four
    link families in a single pass."""
    n_txns = len(db.transactions)
    cell_item: list[int] = []
    cell_txn: list[int] = []
    h_prev: list[int] = []
    h_next: list[int] = []
    v_prev: list[int] = []
    v_next: list[int] = []
    txn_first = [0] * (n_txns + 1)
    bitmaps: list[int] = []
    item_first = [-1] * db.item_count
    last_of_item = [-1] * db.item_count
    ci = 0
    for t, txn in enumerate(db.transactions):
        txn_first[t] = ci
        bits = 0
        prev = -1
        for x in txn:
            cell_item.append(x)
            cell_txn.append(t)
            h_prev.append(prev)
            h_next.append(-1)
            if prev != -1:
                h_next[prev] = ci
            tail_cell = last_of_item[x]
            v_prev.append(tail_cell)
            v_next.append(-1)
            if tail_cell != -1:
                v_next[tail_cell] = ci
            else:
                item_first[x] = ci
            last_of_item[x] = ci
            bits |= 1 << x
            prev = ci
            ci += 1
        bitmaps.append(bits)
    txn_first[n_txns] = ci
    return HdrStore(
        db, cell_item, cell_txn, h_prev, h_next, v_prev, v_next,
        txn_first, bitmaps, item_first,
    )


def select_mode(pdr_atl: float, tail_size: int) -> CountMode:
    """Horizontal scanning pays off while projected transactions stay shorter
    than half the tail; at or past that point, probe bitmaps."""
    if pdr_atl < tail_size / 2:
        return CountMode.HORIZONTAL
    return CountMode.BITMAP


def count_supports(
    store: HdrStore,
    pdr: Pdr,
    tail,
    mode: CountMode = CountMode.AUTO,
    counters: CostCounters | None = None,
) -> dict[int, int]:
    """Support of head∪{y} for every tail item y, over the node's projected
    transactions. Identical results in both modes; only the cost profile
    (and the billed counter) differs."""
    if mode is CountMode.AUTO:
        mode = select_mode(pdr.atl, len(tail))
    counts = [0] * store.item_count
    if mode is CountMode.HORIZONTAL:
        member = bytearray(store.item_count)
        for y in tail:
            member[y] = 1
        cell_item = store.cell_item
        first = store.txn_first_cell
        for t in pdr.txns:
            for x in cell_item[first[t]:first[t + 1]]:
                if member[x]:
                    counts[x] += 1
        result = {y: counts[y] for y in tail}
        if counters is not None:
            counters.cells_touched += sum(result.values())
    else:
        tail_mask = 0
        for y in tail:
            tail_mask |= 1 << y
        bitmaps = store.txn_bitmap
        for t in pdr.txns:
            bits = bitmaps[t] & tail_mask
            while bits:
                low = bits & -bits
                counts[low.bit_length() - 1] += 1
                bits ^= low
        result = {y: counts[y] for y in tail}
        if counters is not None:
            counters.bit_tests += len(pdr.txns) * len(tail)
    return result


def project_vertical(
    store: HdrStore,
    parent: Pdr,
    y: int,
    tail_after,
    tail_mask: int | None = None,
) -> Pdr:
    """Child projection for branching on item y: the parent transactions that
    contain y, with the child's restricted length sum computed over
    ``tail_after`` in the same pass. ``tail_mask`` may carry a precomputed
    bitmask of tail_after. The parent is left untouched."""
    if tail_mask is None:
        tail_mask = 0
        for z in tail_after:
            tail_mask |= 1 << z
    bitmaps = store.txn_bitmap
    txns: list[int] = []
    restricted = 0
    if len(parent.txns) == store.txn_count:
        # Root projection: the item's vertical chain lists exactly the
        # transactions we want, in ascending order.
        ci = store.item_first_cell[y]
        cell_txn = store.cell_txn
        v_next = store.v_next
        while ci != -1:
            t = cell_txn[ci]
            txns.append(t)
            restricted += (bitmaps[t] & tail_mask).bit_count()
            ci = v_next[ci]
    else:
        ybit = 1 << y
        for t in parent.txns:
            bits = bitmaps[t]
            if bits & ybit:
                txns.append(t)
                restricted += (bits & tail_mask).bit_count()
    return Pdr(txns, restricted)


def verify_counts(store: HdrStore, pdr: Pdr, tail) -> bool:
    """Debug oracle: recompute tail supports four independent ways (raw
    transaction rescan, h-chain walks, v-chain walks, bitmap probes) and
    check the link structure along the way. True only if everything agrees.
    Slow by design; never used on the mining hot path."""
    try:
        return _verify_counts(store, pdr, tail)
    except IndexError:
        return False


def _verify_counts(store: HdrStore, pdr: Pdr, tail) -> bool:
    db = store.db
    tail_set = set(tail)
    in_pdr = set(pdr.txns)
    cell_count = store.cell_count

    raw = dict.fromkeys(tail, 0)
    for t in pdr.txns:
        for x in db.transactions[t]:
            if x in tail_set:
                raw[x] += 1

    horizontal = dict.fromkeys(tail, 0)
    for t in pdr.txns:
        ci = store.txn_first_cell[t]
        prev = -1
        steps = 0
        while ci != -1:
            steps += 1
            if steps > cell_count:
                return False
            if store.cell_txn[ci] != t or store.h_prev[ci] != prev:
                return False
            x = store.cell_item[ci]
            if x in tail_set:
                horizontal[x] += 1
            prev = ci
            ci = store.h_next[ci]
        if steps != len(db.transactions[t]):
            return False

    vertical = {}
    for y in tail:
        ci = store.item_first_cell[y]
        prev = -1
        last_txn = -1
        steps = 0
        hits = 0
        while ci != -1:
            steps += 1
            if steps > cell_count:
                return False
            if store.cell_item[ci] != y or store.v_prev[ci] != prev:
                return False
            t = store.cell_txn[ci]
            if t <= last_txn:
                return False
            if t in in_pdr:
                hits += 1
            prev = ci
            last_txn = t
            ci = store.v_next[ci]
        vertical[y] = hits

    bitmap = {
        y: sum(1 for t in pdr.txns if store.txn_bitmap[t] >> y & 1) for y in tail
    }
    return raw == horizontal == vertical == bitmap
