"""Frequent gradual pattern mining with per-attribute gradualness thresholds."""

from ._kernels import BACKEND
from .dataset import Dataset, column, load_csv, to_csv
from .errors import GradMineError
from .graph import (
    PrecedenceMatrix,
    and_join,
    item_matrix,
    longest_path,
    prune_isolated,
    support_graph,
)
from .miner import MiningConfig, MiningResult, mine
from .patterns import Direction, GradualItem, GradualPattern, canonicalize, complement
from .temporal import (
    SignTable,
    f_intent,
    g_extent,
    is_closed,
    num2cat,
    property1_prunable,
    support_temporal,
)
from .thresholds import (
    ThresholdVector,
    cv_threshold,
    gap_threshold,
    sd_threshold,
    set_thresholds,
)

__version__ = "0.1.0"
