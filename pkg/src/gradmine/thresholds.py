"""Per-attribute gradualness thresholds.

A variation of attribute ``x`` between two objects only counts as an increase
or a decrease when its magnitude reaches ``sigma_x``. Three data-driven
formulas are provided, each of the affine form ``k1 * statistic + k2``:

* ``sd``: sample standard deviation (divisor ``n - 1``)
* ``cv``: coefficient of variation, sample sd over mean
* ``gap-mean`` / ``gap-sd``: mean or sample sd of the gaps between
  consecutive sorted values
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import IO, Mapping

import numpy as np

from .dataset import Dataset
from .errors import (
    GradMineError,
    InvalidParameter,
    MissingUserThreshold,
    NegativeThreshold,
    TooFewValues,
    ZeroMean,
)

MODES = ("none", "sd", "cv", "gap-mean", "gap-sd", "user")


@dataclass(frozen=True)
class ThresholdVector:
    sigmas: tuple[float, ...]
    mode: str = "none"
    k1: float = 1.0
    k2: float = 0.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidParameter(f"unknown threshold mode {self.mode!r}")
        sig = tuple(float(s) for s in self.sigmas)
        for j, s in enumerate(sig):
            if not (s >= 0.0) or math.isinf(s):
                raise NegativeThreshold(f"sigma[{j}] = {s} is not a finite non-negative number")
        if self.mode == "none" and any(sig):
            raise InvalidParameter("mode 'none' requires all-zero thresholds")
        object.__setattr__(self, "sigmas", sig)

    @classmethod
    def zeros(cls, m: int) -> "ThresholdVector":
        return cls((0.0,) * m, "none", 0.0, 0.0)

    def __len__(self):
        return len(self.sigmas)

    def __getitem__(self, j):
        return self.sigmas[j]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.sigmas, dtype=np.float64)


def _as_values(values, minimum: int) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size < minimum:
        raise TooFewValues(f"need at least {minimum} values, got {v.size}")
    return v


def sd_threshold(values, k1: float = 1.0, k2: float = 0.0) -> float:
    v = _as_values(values, 2)
    return k1 * float(np.std(v, ddof=1)) + k2


def cv_threshold(values, k1: float = 1.0, k2: float = 0.0) -> float:
    v = _as_values(values, 2)
    mean = float(np.mean(v))
    if mean == 0.0:
        raise ZeroMean("coefficient of variation undefined for a zero-mean column")
    return k1 * float(np.std(v, ddof=1)) / mean + k2


def gap_threshold(values, k1: float = 1.0, k2: float = 0.0, aggregator: str = "mean") -> float:
    """Aggregate of the gaps between consecutive values once sorted.

    With ``aggregator="mean"`` the gaps telescope to ``(max - min) / (n - 1)``.
    """
    if aggregator == "mean":
        v = _as_values(values, 2)
        gaps = np.diff(np.sort(v))
        stat = float(np.mean(gaps))
    elif aggregator == "sd":
        v = _as_values(values, 3)
        gaps = np.diff(np.sort(v))
        stat = float(np.std(gaps, ddof=1))
    else:
        raise InvalidParameter(f"unknown gap aggregator {aggregator!r}")
    return k1 * stat + k2


_FORMULAS = {
    "sd": sd_threshold,
    "cv": cv_threshold,
    "gap-mean": lambda v, k1, k2: gap_threshold(v, k1, k2, "mean"),
    "gap-sd": lambda v, k1, k2: gap_threshold(v, k1, k2, "sd"),
}


def read_user_thresholds(source: IO | str) -> dict[str, float]:
    """Read a two-column ``attribute,sigma`` CSV (a header row is optional)."""
    if isinstance(source, str):
        with open(source, encoding="utf-8-sig", newline="") as fh:
            text = fh.read()
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8-sig")
    out: dict[str, float] = {}
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec or all(not c.strip() for c in rec):
            continue
        if len(rec) != 2:
            raise InvalidParameter(f"threshold file line {lineno}: expected 'attribute,sigma'")
        name, raw = rec[0].strip(), rec[1].strip()
        try:
            out[name] = float(raw)
        except ValueError:
            if lineno == 1:
                continue  # header
            raise InvalidParameter(f"threshold file line {lineno}: bad sigma {raw!r}") from None
    return out


def set_thresholds(
    d: Dataset,
    mode: str = "sd",
    k1: float = 1.0,
    k2: float = 0.0,
    user_file: IO | str | Mapping[str, float] | None = None,
) -> ThresholdVector:
    """Compute one threshold per attribute of ``d`` using ``mode``."""
    if mode not in MODES:
        raise InvalidParameter(f"unknown threshold mode {mode!r}; choose from {', '.join(MODES)}")
    if mode == "none":
        return ThresholdVector.zeros(d.m)
    if mode == "user":
        if user_file is None:
            raise MissingUserThreshold("mode 'user' needs a threshold file")
        table = dict(user_file) if isinstance(user_file, Mapping) else read_user_thresholds(user_file)
        missing = [a for a in d.attribute_names if a not in table]
        if missing:
            raise MissingUserThreshold(f"no threshold given for: {', '.join(missing)}")
        sig = []
        for a in d.attribute_names:
            if not table[a] >= 0:
                raise NegativeThreshold(f"{a}: sigma {table[a]} < 0")
            sig.append(table[a])
        return ThresholdVector(tuple(sig), "user", k1, k2)

    formula = _FORMULAS[mode]
    sig = []
    for j, name in enumerate(d.attribute_names):
        try:
            s = formula(d.column(j), k1, k2)
        except GradMineError as exc:
            raise type(exc)(f"attribute {name!r}: {exc}") from exc
        if s < 0:
            raise NegativeThreshold(f"attribute {name!r}: computed sigma {s} < 0")
        sig.append(s)
    return ThresholdVector(tuple(sig), mode, k1, k2)
