from pathlib import Path

import numpy as np
import pytest

from gradmine import _kernels, graph
from gradmine.dataset import Dataset, load_csv
from gradmine.temporal import SignTable

FIXTURES = Path(__file__).parent / "fixtures"
TABLE1 = FIXTURES / "table1.csv"


def golden_grid(name):
    return graph.parse_grid((FIXTURES / f"{name}.txt").read_text())


def golden_signs(name):
    return SignTable.from_csv((FIXTURES / f"{name}.csv").read_text())


@pytest.fixture
def table1() -> Dataset:
    return load_csv(str(TABLE1), temporal=True)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "numba":
        if not _kernels.HAVE_NUMBA:
            pytest.skip("numba not installed")
        monkeypatch.setattr(_kernels, "item_bits", _kernels.item_bits_jit)
        monkeypatch.setattr(_kernels, "longest_path_bits", _kernels.longest_path_jit)
    else:
        monkeypatch.setattr(_kernels, "item_bits", _kernels.item_bits_numpy)
        monkeypatch.setattr(_kernels, "longest_path_bits", _kernels.longest_path_numpy)
    return request.param


def random_dataset(rng, n=None, m=None, temporal=True, ties=True, positive=True) -> Dataset:
    n = n or int(rng.integers(2, 9))
    m = m or int(rng.integers(1, 6))
    if ties:
        # small integer grid so equal values actually happen
        x = rng.integers(0, 6, size=(n, m)).astype(float) + (1.0 if positive else -2.5)
    else:
        x = rng.uniform(1.0, 5.0, size=(n, m))
    return Dataset(tuple(f"a{j + 1}" for j in range(m)), x, temporal_order=temporal)


def random_dag(rng, n, p=0.4):
    order = rng.permutation(n)
    adj = np.zeros((n, n), bool)
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                adj[order[a], order[b]] = True
    return adj


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call ``criterion(ok, detail)`` before asserting."""
    name = request.node.name

    def record(ok: bool, detail: str = ""):
        _ACCEPTANCE[name] = (bool(ok), detail)
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[1]) if s.split("_")[1].isdigit() else 99):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
