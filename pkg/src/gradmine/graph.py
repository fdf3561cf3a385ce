"""Precedence-graph support: one boolean object-by-object matrix per item.

``bit(i, j) = 1`` means object ``t_i`` may precede ``t_j``. An itemset's
matrix is the AND of its items' matrices, and its support is the number of
objects on the longest path, over ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .dataset import Dataset
from .errors import CycleDetected, DimensionMismatch, IndexOutOfRange, NegativeSigma
from .patterns import Direction, GradualItem, GradualPattern
from .thresholds import ThresholdVector


@dataclass(frozen=True, eq=False)
class PrecedenceMatrix:
    n: int
    bits: np.ndarray
    alive: np.ndarray

    @classmethod
    def from_dense(cls, dense, alive=None) -> "PrecedenceMatrix":
        dense = np.asarray(dense, dtype=bool)
        n = dense.shape[0]
        if dense.shape != (n, n):
            raise DimensionMismatch(f"matrix must be square, got {dense.shape}")
        alive = np.ones(n, bool) if alive is None else np.asarray(alive, bool).copy()
        dense = dense & alive[:, None] & alive[None, :]
        np.fill_diagonal(dense, False)
        return cls(n, _kernels.pack_rows(dense), alive)

    def to_dense(self) -> np.ndarray:
        return _kernels.unpack_rows(self.bits, self.n)

    def __eq__(self, other):
        if not isinstance(other, PrecedenceMatrix):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.bits, other.bits)
                and np.array_equal(self.alive, other.alive))

    def edge_count(self) -> int:
        return int(self.to_dense().sum())

    def dump(self, labels: Sequence[str] | None = None, only_alive: bool = False) -> str:
        """0/1 grid with row and column labels, one row per line."""
        return dump_grid(self.to_dense(), labels, self.alive if only_alive else None)


def dump_grid(dense, labels=None, keep=None) -> str:
    dense = np.asarray(dense, dtype=bool)
    n = dense.shape[0]
    labels = list(labels) if labels is not None else [f"t{i + 1}" for i in range(n)]
    idx = [i for i in range(n) if keep is None or keep[i]]
    lines = [" ".join(["."] + [labels[j] for j in idx])]
    for i in idx:
        lines.append(" ".join([labels[i]] + ["1" if dense[i, j] else "0" for j in idx]))
    return "\n".join(lines) + "\n"


def parse_grid(text: str):
    """Inverse of :func:`dump_grid`: returns ``(labels, dense)``."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    col_labels = lines[0][1:]
    row_labels = [ln[0] for ln in lines[1:]]
    dense = np.array([[c == "1" for c in ln[1:]] for ln in lines[1:]], dtype=bool)
    if row_labels != col_labels:
        raise ValueError("row and column labels differ")
    return col_labels, dense


def item_matrix(d: Dataset, item: GradualItem, sigma: float) -> PrecedenceMatrix:
    """Thresholded precedence matrix of a single gradual item.

    For ``x>=``: ``bit(i, j) = 1`` iff ``t_j.x - t_i.x >= sigma`` (strictly
    positive when ``sigma == 0``, so ties never give an edge). ``x<=`` is the
    mirror image, i.e. the transpose.
    """
    if not sigma >= 0:
        raise NegativeSigma(f"sigma must be >= 0, got {sigma}")
    if not 0 <= item.attribute < d.m:
        raise IndexOutOfRange(f"attribute {item.attribute} outside [0, {d.m})")
    bits = _kernels.item_bits(d.column(item.attribute), float(sigma),
                              item.direction is Direction.GEQ)
    return PrecedenceMatrix(d.n, bits, np.ones(d.n, bool))


def and_join(m1: PrecedenceMatrix, m2: PrecedenceMatrix) -> PrecedenceMatrix:
    if m1.n != m2.n:
        raise DimensionMismatch(f"cannot join matrices over {m1.n} and {m2.n} objects")
    return PrecedenceMatrix(m1.n, m1.bits & m2.bits, m1.alive & m2.alive)


def prune_isolated(m: PrecedenceMatrix) -> PrecedenceMatrix:
    bits, alive = _kernels.isolated_free(m.bits, m.alive, m.n)
    return PrecedenceMatrix(m.n, bits, alive)


def longest_path(m: PrecedenceMatrix) -> int:
    """Number of nodes on the longest directed path through alive objects."""
    length = _kernels.longest_path_bits(m.bits, m.alive, m.n)
    if length < 0:
        raise CycleDetected("precedence graph has a cycle; longest path undefined")
    return length


def pattern_matrix(d: Dataset, g: GradualPattern, t: ThresholdVector) -> PrecedenceMatrix:
    it = iter(g.items)
    first = next(it)
    m = item_matrix(d, first, t[first.attribute])
    for item in it:
        m = prune_isolated(and_join(m, item_matrix(d, item, t[item.attribute])))
    return prune_isolated(m)


def support_count(m: PrecedenceMatrix) -> int:
    # a lone object is a (trivial) sequence respecting any pattern
    return max(longest_path(m), 1)


def support_graph(d: Dataset, g: GradualPattern, t: ThresholdVector) -> Fraction:
    return Fraction(support_count(pattern_matrix(d, g, t)), d.n)
