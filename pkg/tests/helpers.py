from gradmine.miner import MiningConfig, mine
from gradmine.oracle import oracle_frequent, oracle_mine_dataset
from gradmine.patterns import Direction, GradualItem, GradualPattern


def key_to_pattern(key) -> GradualPattern:
    return GradualPattern(GradualItem(a, Direction.GEQ if up else Direction.LEQ) for a, up in key)


def oracle_frequent_patterns(d, cfg: MiningConfig):
    denom = d.n if cfg.semantics == "graph" else d.n - 1
    freq = oracle_frequent(oracle_mine_dataset(d, cfg), cfg.min_supp, denom)
    return {key_to_pattern(k): s for k, s in freq.items()}


def mined_patterns(d, cfg: MiningConfig):
    return mine(d, cfg).as_set()
