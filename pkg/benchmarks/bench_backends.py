"""Compare the numba kernels against the numpy fallback.

Each backend runs in its own interpreter because the selection happens at
import time from GRAPGT_NO_JIT. Output is one CSV row per (backend, case).

    python3 benchmarks/bench_backends.py --rows 1000 --attrs 20 --noise 0.005
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from gradmine import _kernels
from gradmine.graph import item_matrix, and_join, prune_isolated, longest_path
from gradmine.miner import MiningConfig, mine
from gradmine.patterns import Direction, GradualItem
from gradmine.synth import generate

rows, attrs, noise, repeat = int(sys.argv[1]), int(sys.argv[2]), float(sys.argv[3]), int(sys.argv[4])
d, _ = generate(rows, attrs, 2, noise, 0)
a, b = GradualItem(0, Direction.GEQ), GradualItem(2, Direction.GEQ)
item_matrix(d, a, 0.0); longest_path(item_matrix(d, a, 0.0))   # warm up / compile

def best(fn):
    out = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); out.append(time.perf_counter() - t)
    return min(out) * 1000

joined = prune_isolated(and_join(item_matrix(d, a, 0.0), item_matrix(d, b, 0.0)))
res = {
    "item_matrix": best(lambda: item_matrix(d, a, 0.0)),
    "longest_path": best(lambda: longest_path(joined)),
    "mine_graph_none": best(lambda: mine(d, MiningConfig(min_supp=0.3, mode="none", max_len=3))),
}
print(json.dumps({"backend": _kernels.BACKEND, "ms": res}))
"""


def run(backend, args):
    env = dict(os.environ)
    env.pop("GRAPGT_NO_JIT", None)
    if backend == "numpy":
        env["GRAPGT_NO_JIT"] = "1"
    r = subprocess.run([sys.executable, "-c", CHILD, str(args.rows), str(args.attrs),
                        str(args.noise), str(args.repeat)],
                       env=env, capture_output=True, text=True, check=True)
    return json.loads(r.stdout.strip().splitlines()[-1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rows", type=int, default=1000)
    p.add_argument("--attrs", type=int, default=20)
    p.add_argument("--noise", type=float, default=0.005)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    results = [run(b, args) for b in ("numba", "numpy")]
    print("backend,case,best_ms")
    for r in results:
        for case, ms in r["ms"].items():
            print(f"{r['backend']},{case},{ms:.2f}")
    jit, ref = results[0]["ms"], results[1]["ms"]
    for case in jit:
        print(f"# {case}: numpy/numba = {ref[case] / jit[case]:.1f}x", file=sys.stderr)


if __name__ == "__main__":
    main()
