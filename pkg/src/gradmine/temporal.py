"""Transition-based semantics over temporally ordered objects.

The numeric table is first turned into a sign table with one row per pair of
consecutive objects: ``+`` when the value rises by more than ``sigma``, ``-``
when it falls by more than ``sigma``, ``o`` otherwise. A pattern is supported
by a transition when every item's sign matches exactly (``+`` for ``>=``,
``-`` for ``<=``).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .dataset import Dataset
from .errors import DimensionMismatch, InvalidParameter, NotTemporal
from .patterns import Direction, GradualItem, GradualPattern
from .thresholds import ThresholdVector

PLUS, ZERO, MINUS = 1, 0, -1
_SYMBOL = {PLUS: "+", ZERO: "o", MINUS: "-"}
_CODE = {"+": PLUS, "o": ZERO, "-": MINUS, "−": MINUS, "0": ZERO}

TransitionSet = frozenset


@dataclass(frozen=True, eq=False)
class SignTable:
    """``(n - 1, m)`` int8 array over ``{+1, 0, -1}``."""

    symbols: np.ndarray
    attribute_names: tuple[str, ...]

    def __post_init__(self):
        s = np.array(self.symbols, dtype=np.int8, copy=True)
        if s.ndim != 2 or s.shape[1] != len(self.attribute_names):
            raise DimensionMismatch(
                f"sign table shape {s.shape} does not match {len(self.attribute_names)} attributes")
        if not np.isin(s, (PLUS, ZERO, MINUS)).all():
            raise InvalidParameter("sign codes must be +1, 0 or -1")
        s.setflags(write=False)
        object.__setattr__(self, "symbols", s)
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))

    @property
    def n_transitions(self) -> int:
        return self.symbols.shape[0]

    @property
    def m(self) -> int:
        return self.symbols.shape[1]

    def __eq__(self, other):
        if not isinstance(other, SignTable):
            return NotImplemented
        return (self.attribute_names == other.attribute_names
                and np.array_equal(self.symbols, other.symbols))

    def item_mask(self, item: GradualItem) -> np.ndarray:
        want = PLUS if item.direction is Direction.GEQ else MINUS
        return self.symbols[:, item.attribute] == want

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("TID",) + self.attribute_names)
        for j, row in enumerate(self.symbols):
            w.writerow([f"t'{j + 1}"] + [_SYMBOL[int(c)] for c in row])
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SignTable":
        recs = [r for r in csv.reader(io.StringIO(text.strip())) if r]
        names = tuple(c.strip() for c in recs[0][1:])
        rows = [[_CODE[c.strip()] for c in r[1:]] for r in recs[1:]]
        return cls(np.array(rows, dtype=np.int8).reshape(len(rows), len(names)), names)


def num2cat(d: Dataset, t: ThresholdVector) -> SignTable:
    if not d.temporal_order:
        raise NotTemporal("dataset row order is not declared temporal")
    if len(t) != d.m:
        raise DimensionMismatch(f"{len(t)} thresholds for {d.m} attributes")
    x = d.rows
    sig = t.as_array()[None, :]
    nxt, cur = x[1:], x[:-1]
    s = np.zeros(nxt.shape, dtype=np.int8)
    s[nxt > cur + sig] = PLUS
    s[nxt < cur - sig] = MINUS
    return SignTable(s, d.attribute_names)


def g_extent(s: SignTable, g: GradualPattern) -> frozenset[int]:
    """Transitions whose signs match every item of ``g``."""
    mask = np.ones(s.n_transitions, bool)
    for item in g.items:
        mask &= s.item_mask(item)
    return frozenset(int(i) for i in np.flatnonzero(mask))


def support_temporal(s: SignTable, g: GradualPattern) -> Fraction:
    return Fraction(len(g_extent(s, g)), s.n_transitions)


def f_intent(s: SignTable, rows: Iterable[int]) -> frozenset[GradualItem]:
    """Gradual items whose sign is the same, non-zero, on every row given.

    The empty row set maps to all ``2m`` items.
    """
    idx = np.fromiter(sorted(rows), dtype=np.int64)
    if idx.size == 0:
        return frozenset(GradualItem(k, dr) for k in range(s.m) for dr in Direction)
    sub = s.symbols[idx]
    out = set()
    for k in range(s.m):
        col = sub[:, k]
        if (col == PLUS).all():
            out.add(GradualItem(k, Direction.GEQ))
        elif (col == MINUS).all():
            out.add(GradualItem(k, Direction.LEQ))
    return frozenset(out)


def closure(s: SignTable, g: GradualPattern) -> frozenset[GradualItem]:
    return f_intent(s, g_extent(s, g))


def is_closed(s: SignTable, g: GradualPattern) -> bool:
    return closure(s, g) == frozenset(g.items)


def min_transition_count(min_supp, n_transitions: int) -> int:
    return max(1, math.ceil(Fraction(str(min_supp)) * n_transitions))


def total_variation(values) -> float:
    return float(np.abs(np.diff(np.asarray(values, dtype=np.float64))).sum())


def property1_prunable(d: Dataset, attr: int, sigma: float, min_count: int) -> bool:
    """True when ``attr`` (either direction) cannot reach ``min_count`` transitions.

    Each supporting transition moves the value by more than ``sigma``, so the
    total consecutive variation must be at least ``sigma * min_count``.
    """
    return total_variation(d.column(attr)) < sigma * min_count
