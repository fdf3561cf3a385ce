"""Level-wise mining of frequent gradual patterns under either semantics.

Only canonical patterns (first item increasing) are enumerated. Level 1 holds
the increasing singletons; a frequent k-pattern is extended with each later
attribute in both directions, and a candidate is evaluated only when all of
its k-subsets are frequent.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Mapping

import numpy as np

from . import graph, temporal
from .dataset import Dataset
from .errors import InvalidParameter, NotTemporal, UnsupportedFilter
from .patterns import Direction, GradualItem, GradualPattern, canonicalize, complement
from .thresholds import ThresholdVector, set_thresholds

SEMANTICS = ("graph", "temporal")


def parse_min_supp(value) -> Fraction:
    """Accept a float, a Fraction, or a string such as ``"0.625"`` / ``"5/8"``."""
    try:
        frac = value if isinstance(value, Fraction) else Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameter(f"bad minimum support {value!r}") from None
    if not 0 < frac <= 1:
        raise InvalidParameter(f"minimum support must be in (0, 1], got {value}")
    return frac


def default_workers() -> int:
    raw = os.environ.get("GRAPGT_WORKERS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidParameter(f"GRAPGT_WORKERS must be an integer, got {raw!r}") from None


@dataclass
class MiningConfig:
    min_supp: Fraction | float | str = Fraction(1, 2)
    semantics: str = "graph"
    mode: str = "sd"
    k1: float = 1.0
    k2: float = 0.0
    user_file: IO | str | Mapping[str, float] | None = None
    thresholds: ThresholdVector | None = None  # overrides mode/k1/k2 when given
    max_len: int | None = None
    closed_only: bool = False
    property1_prune: bool = True
    singletons: bool = True
    workers: int | None = None
    track_memory: bool = False

    def __post_init__(self):
        self.min_supp = parse_min_supp(self.min_supp)
        if self.semantics not in SEMANTICS:
            raise InvalidParameter(f"semantics must be one of {SEMANTICS}, got {self.semantics!r}")
        if self.max_len is not None and self.max_len < 1:
            raise InvalidParameter("max_len must be >= 1")
        if self.workers is not None and self.workers < 1:
            raise InvalidParameter("workers must be >= 1")


@dataclass(frozen=True)
class MinedPattern:
    pattern: GradualPattern
    count: int
    support: Fraction
    complement_support: Fraction | None = None

    @property
    def size(self) -> int:
        return len(self.pattern)


@dataclass
class MiningResult:
    attribute_names: tuple[str, ...]
    semantics: str
    min_supp: Fraction
    thresholds: ThresholdVector
    patterns: list[MinedPattern]
    stats: dict
    timings: dict = field(default_factory=dict)

    def as_set(self) -> dict[GradualPattern, Fraction]:
        return {p.pattern: p.support for p in self.patterns}

    def to_dict(self) -> dict:
        names = self.attribute_names
        out = []
        for p in self.patterns:
            rec = {
                "items": [{"attr": names[it.attribute], "dir": it.direction.value}
                          for it in p.pattern.items],
                "support": float(p.support),
                "size": p.size,
                "count": p.count,
            }
            if p.complement_support is not None:
                rec["complement_support"] = float(p.complement_support)
            out.append(rec)
        return {
            "semantics": self.semantics,
            "min_supp": float(self.min_supp),
            "thresholds": {
                "mode": self.thresholds.mode,
                "k1": self.thresholds.k1,
                "k2": self.thresholds.k2,
                "sigmas": dict(zip(names, self.thresholds.sigmas)),
            },
            "patterns": out,
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["items", "support", "size", "count"])
        for p in self.patterns:
            items = ";".join(it.label(self.attribute_names) for it in p.pattern.items)
            w.writerow([items, repr(float(p.support)), p.size, p.count])
        return buf.getvalue()


def min_object_count(min_supp, n: int) -> int:
    return max(1, math.ceil(parse_min_supp(min_supp) * n))


class _GraphEvaluator:
    """Keeps pruned matrices of the previous level and one matrix per item."""

    def __init__(self, d: Dataset, t: ThresholdVector):
        self.n = d.n
        self.items = {}
        for a in range(d.m):
            for dr in Direction:
                it = GradualItem(a, dr)
                self.items[it] = graph.item_matrix(d, it, t[a])
        self.cache: dict[GradualPattern, graph.PrecedenceMatrix] = {}

    def single(self, item: GradualItem):
        m = graph.prune_isolated(self.items[item])
        return graph.support_count(m), m

    def extend(self, parent: GradualPattern, item: GradualItem):
        m = graph.prune_isolated(graph.and_join(self.cache[parent], self.items[item]))
        return graph.support_count(m), m


class _TemporalEvaluator:
    def __init__(self, s: temporal.SignTable):
        self.s = s
        self.items = {GradualItem(a, dr): s.item_mask(GradualItem(a, dr))
                      for a in range(s.m) for dr in Direction}
        self.cache: dict[GradualPattern, np.ndarray] = {}

    def single(self, item: GradualItem):
        mask = self.items[item]
        return int(mask.sum()), mask

    def extend(self, parent: GradualPattern, item: GradualItem):
        mask = self.cache[parent] & self.items[item]
        return int(mask.sum()), mask

    def count(self, g: GradualPattern) -> int:
        mask = np.ones(self.s.n_transitions, bool)
        for it in g.items:
            mask &= self.items[it]
        return int(mask.sum())


def resolve_thresholds(d: Dataset, cfg: MiningConfig) -> ThresholdVector:
    if cfg.thresholds is not None:
        if len(cfg.thresholds) != d.m:
            raise InvalidParameter(f"{len(cfg.thresholds)} thresholds for {d.m} attributes")
        return cfg.thresholds
    return set_thresholds(d, cfg.mode, cfg.k1, cfg.k2, cfg.user_file)


def mine(d: Dataset, cfg: MiningConfig) -> MiningResult:
    """Return every canonical frequent pattern of ``d`` under ``cfg``."""
    if cfg.semantics == "temporal" and not d.temporal_order:
        raise NotTemporal("temporal semantics needs a dataset declared temporal")
    if cfg.closed_only and cfg.semantics == "graph":
        raise UnsupportedFilter("closed-only filtering is defined for temporal semantics only")

    started = time.perf_counter()
    if cfg.track_memory:
        tracemalloc.start()
    try:
        result = _mine(d, cfg)
    finally:
        if cfg.track_memory:
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()
    result.timings["wall_ms"] = (time.perf_counter() - started) * 1000.0
    if cfg.track_memory:
        result.timings["peak_memory_bytes"] = int(peak)
    return result


def _mine(d: Dataset, cfg: MiningConfig) -> MiningResult:
    t = resolve_thresholds(d, cfg)
    workers = cfg.workers or default_workers()
    max_len = d.m if cfg.max_len is None else min(cfg.max_len, d.m)

    pruned: list[int] = []
    if cfg.semantics == "graph":
        ev = _GraphEvaluator(d, t)
        need = min_object_count(cfg.min_supp, d.n)
        denom = d.n
        signs = None
    else:
        signs = temporal.num2cat(d, t)
        ev = _TemporalEvaluator(signs)
        denom = signs.n_transitions
        need = temporal.min_transition_count(cfg.min_supp, denom)
        if cfg.property1_prune:
            pruned = [a for a in range(d.m)
                      if temporal.property1_prunable(d, a, t[a], need)]
    attrs = [a for a in range(d.m) if a not in set(pruned)]

    side_counts: dict[GradualPattern, int] = {}

    def subset_frequent(s: GradualPattern, level: dict) -> bool:
        if cfg.semantics == "graph":
            return canonicalize(s) in level
        if s.is_canonical:
            return s in level
        if s not in side_counts:
            side_counts[s] = ev.count(s)
        return side_counts[s] >= need

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def evaluate(jobs):
        if pool is None:
            return [fn(*args) for fn, args in jobs]
        return list(pool.map(lambda job: job[0](*job[1]), jobs))

    found: dict[GradualPattern, int] = {}
    levels = []
    try:
        cands = [GradualPattern([GradualItem(a, Direction.GEQ)]) for a in attrs]
        results = evaluate([(ev.single, (c.items[0],)) for c in cands])
        current = {}
        for c, (cnt, data) in zip(cands, results):
            if cnt >= need:
                current[c] = cnt
                ev.cache[c] = data
        levels.append({"level": 1, "candidates": len(cands), "frequent": len(current)})
        found.update(current)

        k = 1
        while current and k < max_len:
            cands, parents = [], []
            for p in sorted(current):
                last = p.items[-1].attribute
                for a in attrs:
                    if a <= last:
                        continue
                    for dr in Direction:
                        item = GradualItem(a, dr)
                        g = p.with_item(item)
                        if all(subset_frequent(g.without(i), current) for i in range(k)):
                            cands.append(g)
                            parents.append((p, item))
            results = evaluate([(ev.extend, pi) for pi in parents])
            nxt = {}
            new_cache = {}
            for g, (cnt, data) in zip(cands, results):
                if cnt >= need:
                    nxt[g] = cnt
                    new_cache[g] = data
            ev.cache = new_cache
            k += 1
            levels.append({"level": k, "candidates": len(cands), "frequent": len(nxt)})
            found.update(nxt)
            current = nxt
    finally:
        if pool is not None:
            pool.shutdown()

    mined = []
    for g in sorted(found):
        if not cfg.singletons and len(g) == 1:
            continue
        if cfg.closed_only and not temporal.is_closed(signs, g):
            continue
        cnt = found[g]
        comp = None
        if cfg.semantics == "temporal":
            cc = ev.count(complement(g))
            if cc != cnt:
                comp = Fraction(cc, denom)
        mined.append(MinedPattern(g, cnt, Fraction(cnt, denom), comp))

    stats = {
        "n_objects": d.n,
        "n_attributes": d.m,
        "support_denominator": denom,
        "min_count": need,
        "levels": levels,
        "pruned_attributes": [d.attribute_names[a] for a in pruned],
        "n_patterns": len(mined),
    }
    return MiningResult(d.attribute_names, cfg.semantics, cfg.min_supp, t, mined, stats)
