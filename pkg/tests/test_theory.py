import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from romkit.theory import (
    MseFormulaInputs,
    mse_angular_base,
    mse_angular_general,
    mse_base_dot,
    mse_ort_dot,
    mse_sd,
    mse_sd_hybrid,
    mse_sd_rademacher,
    mse_sd_uniform,
    mse_with_replacement,
)

E1 = np.array([1.0, 0.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0, 0.0])


def vec_pair(n):
    return st.tuples(
        st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n),
        st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n),
    )


class TestInputs:
    def test_statistics(self):
        inp = MseFormulaInputs([1, 2], [3, -1], m=1)
        assert inp.dot == 1.0
        assert inp.normprod == 50.0
        assert inp.overlap == 9.0 + 4.0
        assert inp.n == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            MseFormulaInputs([1, 2], [1, 2, 3], m=1)
        with pytest.raises(ValueError):
            MseFormulaInputs([1, 2], [1, 2], m=0)

    def test_with(self):
        inp = MseFormulaInputs(E1, E2, m=2)
        assert inp.with_(k=3).k == 3 and inp.with_(k=3).m == 2


class TestDotFormulas:
    def test_base(self):
        assert mse_base_dot(MseFormulaInputs(E1, E1, m=2)) == 1.0

    def test_spot_values_e1_e1(self):
        vals = [mse_sd_rademacher(MseFormulaInputs(E1, E1, 2, k)) for k in (1, 2, 3)]
        assert vals == pytest.approx([0.0, 0.5, 0.25], abs=1e-12)

    def test_spot_orthogonal_pair(self):
        assert mse_sd_rademacher(MseFormulaInputs(E1, E2, 2, 1)) == pytest.approx(1 / 3)

    def test_full_rank_is_zero(self):
        x, y = np.arange(4.0), np.ones(4)
        for k in (1, 2, 3):
            assert mse_sd_rademacher(MseFormulaInputs(x, y, 4, k)) == 0.0
            assert mse_sd_uniform(MseFormulaInputs(x, y, 4, k)) == 0.0

    def test_hybrid_is_half(self):
        inp = MseFormulaInputs(np.arange(8.0), np.ones(8), 3, 2)
        assert mse_sd_hybrid(inp) == mse_sd_rademacher(inp) / 2

    def test_with_replacement_ratio(self):
        inp = MseFormulaInputs(np.arange(8.0), np.ones(8), 3, 2)
        for fam in ("rademacher", "hybrid", "uniform"):
            ratio = mse_with_replacement(inp, fam) / mse_sd(inp, fam, "without")
            assert ratio == pytest.approx(7 / 5)

    def test_first_m_has_no_closed_form(self):
        with pytest.raises(ValueError):
            mse_sd(MseFormulaInputs(E1, E2, 2), "rademacher", "first")

    def test_m_above_n(self):
        with pytest.raises(ValueError):
            mse_sd_rademacher(MseFormulaInputs(E1, E2, 5))

    @given(vec_pair(8), st.integers(1, 7), st.integers(1, 5))
    @settings(max_examples=200, deadline=None)
    def test_sd_rademacher_beats_base(self, pair, m, k):
        x, y = map(np.array, pair)
        inp = MseFormulaInputs(x, y, m, k)
        base = mse_base_dot(inp)
        if base > 1e-6:
            assert mse_sd_rademacher(inp) < base

    @given(vec_pair(8), st.integers(1, 8))
    @settings(max_examples=100, deadline=None)
    def test_ort_not_worse_than_base(self, pair, m):
        x, y = map(np.array, pair)
        inp = MseFormulaInputs(x, y, m)
        assert mse_ort_dot(inp) <= mse_base_dot(inp) * (1 + 1e-9) + 1e-9

    def test_ort_single_row_is_base(self):
        inp = MseFormulaInputs(np.arange(8.0), np.ones(8), 1)
        assert mse_ort_dot(inp) == pytest.approx(mse_base_dot(inp))

    def test_ort_needs_n4(self):
        with pytest.raises(ValueError):
            mse_ort_dot(MseFormulaInputs([1.0, 0.0], [0.0, 1.0], 1))

    def test_ort_stacked_blocks_interpolate(self):
        inp = MseFormulaInputs(np.arange(4.0), np.ones(4), 8)
        # two independent full blocks: half the single-block value
        assert mse_ort_dot(inp) == pytest.approx(mse_ort_dot(inp.with_(m=4)) / 2)

    def test_odd_even_sign(self):
        # with overlap > dot^2 / n the odd k sit below the even k
        x = np.array([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        vals = [mse_sd_rademacher(MseFormulaInputs(x, x, 3, k)) for k in (1, 2, 3, 4)]
        assert vals[0] < vals[1] and vals[2] < vals[1] and vals[2] < vals[3]


class TestAngularFormulas:
    def test_base_values(self):
        assert mse_angular_base(math.pi / 2, 1) == pytest.approx(1.0)
        assert mse_angular_base(0.0, 4) == 0.0
        with pytest.raises(ValueError):
            mse_angular_base(4.0, 1)

    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.5])
    def test_general_reduces_to_base(self, theta):
        m = 5
        p = np.full(m, theta / math.pi)
        got = mse_angular_general(p, np.zeros((m, m)), theta, m)
        assert got == pytest.approx(mse_angular_base(theta, m))

    def test_general_pairwise_bias_exact(self):
        # two perfectly correlated rows with a common bias b
        t, b = 0.25, 0.1
        p = np.array([t + b, t + b])
        delta = np.array([[0, p[0] * (1 - p[0])], [p[0] * (1 - p[0]), 0]])
        # the estimate is 1 - 2A with A ~ Bernoulli(p); the truth is 1 - 2t
        exact = 4 * (p[0] * (1 - p[0]) + b ** 2)
        got = mse_angular_general(p, delta, t * math.pi, 2, pairwise_bias=True)
        assert got == pytest.approx(exact)
        printed = mse_angular_general(p, delta, t * math.pi, 2)
        assert printed == pytest.approx(exact - 2 * b ** 2)

    def test_shape_check(self):
        with pytest.raises(ValueError):
            mse_angular_general(np.zeros(3), np.zeros((2, 2)), 1.0, 3)
