"""Hot loops for the precedence-graph semantics.

Each kernel has a jitted version and a plain numpy version with identical
results. The jitted ones are used when numba imports and ``GRAPGT_NO_JIT`` is
unset (or ``0``); both stay importable as ``*_jit`` / ``*_numpy`` so tests and
the backend benchmark can compare them.

Bit layout: a matrix over ``n`` objects is a ``(n, W)`` array of little-endian
``uint64`` words, ``W = ceil(n / 64)``; bit ``j`` of row ``i`` lives in word
``j >> 6`` at position ``j & 63``.
"""

from __future__ import annotations

import os

import numpy as np

WORD = np.dtype("<u8")

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None

_disabled = os.environ.get("GRAPGT_NO_JIT", "0").strip().lower() not in ("", "0", "false", "no")
HAVE_NUMBA = numba is not None
USE_JIT = HAVE_NUMBA and not _disabled
BACKEND = "numba" if USE_JIT else "numpy"


def n_words(n: int) -> int:
    return (n + 63) >> 6


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack an ``(r, n)`` boolean array into ``(r, W)`` words."""
    dense = np.asarray(dense, dtype=bool)
    r, n = dense.shape
    w = n_words(n)
    packed = np.packbits(dense, axis=1, bitorder="little")
    buf = np.zeros((r, w * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return buf.view(WORD).reshape(r, w)


def unpack_rows(bits: np.ndarray, n: int) -> np.ndarray:
    bits = np.ascontiguousarray(bits, dtype=WORD)
    as_bytes = bits.view(np.uint8).reshape(bits.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, count=n, bitorder="little").astype(bool)


# --- numpy path -------------------------------------------------------------

def item_bits_numpy(values: np.ndarray, sigma: float, geq: bool) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    # diff[i, j] = v[j] - v[i] for an increasing item, mirrored otherwise
    diff = v[None, :] - v[:, None] if geq else v[:, None] - v[None, :]
    return pack_rows((diff > 0.0) & (diff >= sigma))


def longest_path_numpy(bits: np.ndarray, alive: np.ndarray, n: int) -> int:
    """Node count of the longest path; ``-1`` if the alive subgraph has a cycle.

    Peels all zero in-degree nodes at once; the number of layers equals the
    number of nodes on the longest path.
    """
    alive = np.asarray(alive, dtype=bool)
    if not alive.any():
        return 0
    adj = unpack_rows(bits, n)
    adj &= alive[:, None]
    adj &= alive[None, :]
    indeg = adj.sum(axis=0, dtype=np.int64)
    remaining = alive.copy()
    layers = 0
    while remaining.any():
        frontier = remaining & (indeg == 0)
        if not frontier.any():
            return -1
        layers += 1
        remaining &= ~frontier
        indeg -= adj[frontier].sum(axis=0, dtype=np.int64)
    return layers


# --- numba path -------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _item_bits_kernel(v, sigma, geq, out):
        n = v.shape[0]
        one = np.uint64(1)
        for i in range(n):
            vi = v[i]
            for j in range(n):
                if geq:
                    d = v[j] - vi
                else:
                    d = vi - v[j]
                if d > 0.0 and d >= sigma:
                    out[i, j >> 6] |= one << np.uint64(j & 63)

    _DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
    _DEBRUIJN_INDEX = np.zeros(64, np.int64)
    for _b in range(64):
        _DEBRUIJN_INDEX[((1 << _b) * 0x03F79D71B4CB0A89 & 0xFFFFFFFFFFFFFFFF) >> 58] = _b

    @njit(cache=True, nogil=True, inline="always")
    def _lowest_bit(word, table):
        low = word & (~word + np.uint64(1))
        return table[(low * _DEBRUIJN) >> np.uint64(58)]

    @njit(cache=True, nogil=True)
    def _longest_path_kernel(bits, alive, n, table):
        w = bits.shape[1]
        zero = np.uint64(0)
        one = np.uint64(1)
        indeg = np.zeros(n, np.int64)
        n_alive = 0
        for i in range(n):
            if not alive[i]:
                continue
            n_alive += 1
            for k in range(w):
                word = bits[i, k]
                while word != zero:
                    j = (k << 6) + _lowest_bit(word, table)
                    word &= word - one
                    if alive[j]:
                        indeg[j] += 1
        if n_alive == 0:
            return 0
        level = np.zeros(n, np.int64)
        queue = np.empty(n_alive, np.int64)
        head = 0
        tail = 0
        for i in range(n):
            if alive[i] and indeg[i] == 0:
                queue[tail] = i
                level[i] = 1
                tail += 1
        best = 0
        while head < tail:
            u = queue[head]
            head += 1
            nxt = level[u] + 1
            if nxt - 1 > best:
                best = nxt - 1
            for k in range(w):
                word = bits[u, k]
                while word != zero:
                    j = (k << 6) + _lowest_bit(word, table)
                    word &= word - one
                    if not alive[j]:
                        continue
                    if nxt > level[j]:
                        level[j] = nxt
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        queue[tail] = j
                        tail += 1
        if tail < n_alive:
            return -1
        return best

    def item_bits_jit(values: np.ndarray, sigma: float, geq: bool) -> np.ndarray:
        v = np.ascontiguousarray(values, dtype=np.float64)
        out = np.zeros((v.shape[0], n_words(v.shape[0])), dtype=WORD)
        _item_bits_kernel(v, float(sigma), bool(geq), out)
        return out

    def longest_path_jit(bits: np.ndarray, alive: np.ndarray, n: int) -> int:
        return int(_longest_path_kernel(np.ascontiguousarray(bits, dtype=WORD),
                                        np.ascontiguousarray(alive, dtype=np.bool_), int(n),
                                        _DEBRUIJN_INDEX))

else:  # pragma: no cover
    item_bits_jit = item_bits_numpy
    longest_path_jit = longest_path_numpy


if USE_JIT:
    item_bits = item_bits_jit
    longest_path_bits = longest_path_jit
else:
    item_bits = item_bits_numpy
    longest_path_bits = longest_path_numpy


def isolated_free(bits: np.ndarray, alive: np.ndarray, n: int):
    """Drop objects whose row and column are both empty.

    Returns the masked bits and the new alive vector. Zeroing the row and
    column of an already-isolated object cannot isolate another one, so one
    pass reaches the fixpoint.
    """
    row_any = bits.any(axis=1)
    col_any = unpack_rows(np.bitwise_or.reduce(bits, axis=0, keepdims=True), n)[0]
    keep = np.asarray(alive, dtype=bool) & (row_any | col_any)
    out = bits & pack_rows(keep[None, :])
    out[~keep] = 0
    return out, keep
