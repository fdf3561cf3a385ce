"""Benchmark harness: pattern count, wall time and peak memory per run.

A config is JSON::

    {
      "datasets": [
        {"id": "syn", "generate": {"rows": 100, "attrs": 10, "signal_groups": 2,
                                   "noise": 0.5, "seed": 7}},
        {"id": "paleo", "path": "paleo.csv", "temporal": true}
      ],
      "semantics": ["graph"],
      "modes": ["none", "sd", "cv", "gap-mean"],
      "min_supp": [0.1, 0.2, 0.3, 0.4, 0.5],
      "k1": 1.0, "k2": 0.0, "max_len": null
    }

Every dataset x semantics x mode x min_supp combination is one row. The
reduction column compares a thresholded run with the ``none`` run that shares
dataset, semantics and min_supp.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass

from .dataset import Dataset, load_csv
from .errors import GradMineError, InvalidParameter
from .miner import MiningConfig, mine
from .synth import generate

COLUMNS = ("dataset", "semantics", "mode", "min_supp", "pattern_count", "wall_ms",
           "peak_memory_bytes", "memory_approximate", "reduction_pct", "error")


@dataclass
class BenchRow:
    dataset: str
    semantics: str
    mode: str
    min_supp: float
    pattern_count: int | None = None
    wall_ms: float | None = None
    peak_memory_bytes: int | None = None
    reduction_pct: float | None = None
    error: str = ""


def _load_dataset(entry: dict, base_dir: str) -> Dataset:
    temporal = bool(entry.get("temporal", False))
    if "generate" in entry:
        d, _ = generate(**entry["generate"])
        return d.with_temporal(temporal)
    if "path" in entry:
        path = entry["path"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return load_csv(path, delimiter=entry.get("delimiter", ","), temporal=temporal)
    raise InvalidParameter(f"dataset {entry.get('id')!r} needs 'path' or 'generate'")


def run_bench(config: dict, base_dir: str = ".", track_memory: bool = True) -> list[BenchRow]:
    rows: list[BenchRow] = []
    semantics = config.get("semantics", ["graph"])
    modes = config.get("modes", ["none", "sd"])
    supports = config.get("min_supp", [0.1, 0.2, 0.3, 0.4, 0.5])
    for ds in config.get("datasets", []):
        ds_id = str(ds.get("id", ds.get("path", "?")))
        try:
            d = _load_dataset(ds, base_dir)
        except (GradMineError, OSError) as exc:
            for sem in semantics:
                for mode in modes:
                    for ms in supports:
                        rows.append(BenchRow(ds_id, sem, mode, float(ms),
                                             error=f"{type(exc).__name__}: {exc}"))
            continue
        for sem in semantics:
            for mode in modes:
                for ms in supports:
                    row = BenchRow(ds_id, sem, mode, float(ms))
                    try:
                        cfg = MiningConfig(min_supp=ms, semantics=sem, mode=mode,
                                           k1=config.get("k1", 1.0), k2=config.get("k2", 0.0),
                                           max_len=config.get("max_len"),
                                           user_file=ds.get("thresholds"),
                                           track_memory=track_memory)
                        res = mine(d, cfg)
                        row.pattern_count = len(res.patterns)
                        row.wall_ms = res.timings["wall_ms"]
                        row.peak_memory_bytes = res.timings.get("peak_memory_bytes")
                    except GradMineError as exc:
                        row.error = f"{type(exc).__name__}: {exc}"
                    rows.append(row)
    _fill_reductions(rows)
    return rows


def _fill_reductions(rows: list[BenchRow]) -> None:
    baseline = {(r.dataset, r.semantics, r.min_supp): r.pattern_count
                for r in rows if r.mode == "none" and r.pattern_count is not None}
    for r in rows:
        if r.mode == "none" or r.pattern_count is None:
            continue
        base = baseline.get((r.dataset, r.semantics, r.min_supp))
        if base:
            r.reduction_pct = 100.0 * (base - r.pattern_count) / base


def report_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    fmt = lambda v, f: "" if v is None else format(v, f)
    for r in rows:
        w.writerow([r.dataset, r.semantics, r.mode, repr(r.min_supp),
                    "" if r.pattern_count is None else r.pattern_count,
                    fmt(r.wall_ms, ".3f"), "" if r.peak_memory_bytes is None else r.peak_memory_bytes,
                    "true", fmt(r.reduction_pct, ".2f"), r.error])
    return buf.getvalue()


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return {}
    cfg = json.loads(text)
    if not isinstance(cfg, dict):
        raise InvalidParameter("bench config must be a JSON object")
    return cfg
