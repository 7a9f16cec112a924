"""The numba kernels and their numpy twins must agree."""
import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from romkit import _kernels as K
from romkit._accel import HAS_NUMBA


class TestFwhtKernels:
    @pytest.mark.parametrize("n", [1, 2, 8, 64, 1024])
    def test_real(self, n):
        a = np.random.default_rng(n).standard_normal((3, n))
        x, y = a.copy(), a.copy()
        K._fwht_rows_nb(x)
        K._fwht_rows_np(y)
        np.testing.assert_allclose(x, y, atol=1e-10)

    def test_complex(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((2, 32)) + 1j * rng.standard_normal((2, 32))
        x, y = a.copy(), a.copy()
        K._fwht_rows_nb(x)
        K._fwht_rows_np(y)
        np.testing.assert_allclose(x, y, atol=1e-12)


class TestRowKernels:
    @pytest.mark.parametrize("paired", [True, False])
    def test_match(self, paired):
        rng = np.random.default_rng(1)
        v = rng.standard_normal(64)
        rows = np.sort(rng.choice(64, 20, replace=False)).astype(np.int64)
        np.testing.assert_allclose(K._hadamard_rows_nb(v, rows, paired), K._hadamard_rows_np(v, rows, paired),
                                   atol=1e-12)

    def test_rows_equal_unnormalized_transform(self):
        v = np.random.default_rng(2).standard_normal(16)
        full = v[None].copy()
        K._fwht_rows_np(full)
        rows = np.arange(16, dtype=np.int64)
        np.testing.assert_allclose(K.hadamard_rows(v, rows), full[0], atol=1e-12)


class TestBruteForceKernels:
    def test_match(self):
        S = (np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]) / 2).astype(np.complex128)
        vals = np.array([[1, -1, 0, 0], [1, -1, 1j, -1j]], dtype=np.complex128)
        counts = np.array([2, 4], dtype=np.int64)
        sel = np.array(list(itertools.combinations(range(4), 2)), dtype=np.int64)
        x, y = np.array([1.0, 2.0, 0.0, -1.0]), np.array([0.0, 1.0, 3.0, 1.0])
        a = K._brute_force_nb(S, vals, counts, x, y, sel, 2.0, float(x @ y))
        b = K._brute_force_np(S, vals, counts, x, y, sel, 2.0, float(x @ y))
        assert a == pytest.approx(b, rel=1e-12)


def test_env_flag_disables_numba():
    code = "import romkit._accel as a; print(a.use_numba())"
    env = dict(os.environ, ROMKIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
def test_numba_active_by_default():
    if os.environ.get("ROMKIT_DISABLE_NUMBA"):
        pytest.skip("disabled by environment")
    from romkit._accel import use_numba
    assert use_numba()
