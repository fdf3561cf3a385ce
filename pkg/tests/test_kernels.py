import numpy as np
import pytest

from gradmine import _kernels as K

from conftest import random_dag

pytestmark = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("n", [1, 2, 63, 64, 65, 130])
def test_pack_round_trip(n):
    rng = np.random.default_rng(n)
    dense = rng.random((n, n)) < 0.3
    bits = K.pack_rows(dense)
    assert bits.shape == (n, K.n_words(n)) and bits.dtype == K.WORD
    assert np.array_equal(K.unpack_rows(bits, n), dense)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("sigma", [0.0, 0.3, 1.0])
def test_item_bits_backends_agree(seed, sigma):
    rng = np.random.default_rng(seed)
    v = np.round(rng.uniform(0, 3, size=int(rng.integers(2, 150))), 1)  # ties included
    for geq in (True, False):
        assert np.array_equal(K.item_bits_jit(v, sigma, geq), K.item_bits_numpy(v, sigma, geq))


@pytest.mark.parametrize("seed", range(20))
def test_longest_path_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 140))
    adj = random_dag(rng, n, p=float(rng.uniform(0.01, 0.5)))
    alive = rng.random(n) < 0.8
    bits = K.pack_rows(adj)
    assert K.longest_path_jit(bits, alive, n) == K.longest_path_numpy(bits, alive, n)


def test_cycle_reported_by_both():
    adj = np.zeros((3, 3), bool)
    adj[0, 1] = adj[1, 2] = adj[2, 0] = True
    bits = K.pack_rows(adj)
    alive = np.ones(3, bool)
    assert K.longest_path_jit(bits, alive, 3) == -1
    assert K.longest_path_numpy(bits, alive, 3) == -1
    # deleting a node on the cycle breaks it
    alive[2] = False
    assert K.longest_path_jit(bits, alive, 3) == 2 == K.longest_path_numpy(bits, alive, 3)


def test_backend_flag():
    assert K.BACKEND in ("numba", "numpy")
    assert (K.BACKEND == "numba") == K.USE_JIT
