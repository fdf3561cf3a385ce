"""Brute-force reference implementations for the test suite.

Nothing here touches the matrix kernels, the sign-table code or the miner:
adjacency is rebuilt from raw values with plain Python, paths are enumerated
exhaustively, and thresholds are recomputed with :mod:`statistics`.
"""

from __future__ import annotations

import itertools
import math
import statistics
from fractions import Fraction

from .errors import TooLarge

MAX_PATH_NODES = 12


def oracle_longest_path(adjacency) -> int:
    """Max node count over all simple directed paths (DFS, no memoization)."""
    adj = [[bool(x) for x in row] for row in adjacency]
    n = len(adj)
    if n > MAX_PATH_NODES:
        raise TooLarge(f"exhaustive path enumeration limited to {MAX_PATH_NODES} nodes")
    best = 0

    def walk(u, visited, length):
        nonlocal best
        best = max(best, length)
        for v in range(n):
            if adj[u][v] and v not in visited:
                visited.add(v)
                walk(v, visited, length + 1)
                visited.discard(v)

    for s in range(n):
        walk(s, {s}, 1)
    return best


def oracle_sigmas(rows, mode, k1=1.0, k2=0.0):
    m = len(rows[0])
    out = []
    for j in range(m):
        col = [r[j] for r in rows]
        if mode == "none":
            out.append(0.0)
        elif mode == "sd":
            out.append(k1 * statistics.stdev(col) + k2)
        elif mode == "cv":
            out.append(k1 * statistics.stdev(col) / statistics.fmean(col) + k2)
        elif mode == "gap-mean":
            s = sorted(col)
            out.append(k1 * statistics.fmean([b - a for a, b in zip(s, s[1:])]) + k2)
        else:
            raise ValueError(mode)
    return out


def _edge(a, b, sigma, increasing):
    d = (b - a) if increasing else (a - b)
    if sigma == 0:
        return d > 0
    return d >= sigma


def _canonical_patterns(m, max_len):
    for size in range(1, max_len + 1):
        for attrs in itertools.combinations(range(m), size):
            for tail in itertools.product((True, False), repeat=size - 1):
                yield tuple(zip(attrs, (True,) + tail))


def oracle_graph_support(rows, pattern, sigmas) -> Fraction:
    n = len(rows)
    adj = [[i != j and all(_edge(rows[i][a], rows[j][a], sigmas[a], up) for a, up in pattern)
            for j in range(n)] for i in range(n)]
    return Fraction(oracle_longest_path(adj), n)


def oracle_temporal_support(rows, pattern, sigmas) -> Fraction:
    hits = 0
    for prev, nxt in zip(rows, rows[1:]):
        ok = True
        for a, up in pattern:
            if up:
                ok = ok and nxt[a] > prev[a] + sigmas[a]
            else:
                ok = ok and nxt[a] < prev[a] - sigmas[a]
        hits += ok
    return Fraction(hits, len(rows) - 1)


def oracle_mine(rows, semantics, sigmas, max_len=None):
    """Support of every canonical pattern, keyed by ``((attr, increasing), ...)``.

    ``rows`` is a list of lists of floats (objects by attributes).
    """
    rows = [list(map(float, r)) for r in rows]
    n, m = len(rows), len(rows[0])
    if n > 8 or m > 5:
        raise TooLarge("oracle limited to 8 objects and 5 attributes")
    max_len = m if max_len is None else min(max_len, m)
    fn = oracle_graph_support if semantics == "graph" else oracle_temporal_support
    return {p: fn(rows, p, sigmas) for p in _canonical_patterns(m, max_len)}


def oracle_frequent(supports, min_supp, denominator):
    need = max(1, math.ceil(Fraction(str(min_supp)) * denominator))
    return {p: s for p, s in supports.items() if s * denominator >= need}


def oracle_mine_dataset(d, cfg):
    """Same as :func:`oracle_mine`, driven by a Dataset and a MiningConfig."""
    rows = d.rows.tolist()
    if cfg.thresholds is not None:
        sig = list(cfg.thresholds.sigmas)
    else:
        sig = oracle_sigmas(rows, cfg.mode, cfg.k1, cfg.k2)
    return oracle_mine(rows, cfg.semantics, sig, cfg.max_len)
