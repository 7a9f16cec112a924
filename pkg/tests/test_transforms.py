import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from romkit.oracle import dense_reference
from romkit.transforms import (
    DiagonalLaw,
    DimensionError,
    FixedDiagonal,
    SdProductSpec,
    StructuredOrthogonal,
    SubsamplingPolicy,
    apply_blocks,
    expected_pair_count,
    final_block_cost,
    fwht,
    fwht_,
    kron_matvec,
    pad_to_pow2,
    pair_count,
    sample_gort,
    subsample_rows,
    walsh_entry,
    walsh_matvec,
)

H2 = np.array([[1.0, 1.0], [1.0, -1.0]])


class TestFwht:
    @pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32, 64])
    def test_matches_scipy_hadamard(self, n):
        rng = np.random.default_rng(n)
        v = rng.standard_normal(n)
        ref = scipy.linalg.hadamard(n) @ v / math.sqrt(n)
        np.testing.assert_allclose(fwht(v), ref, atol=1e-12)

    def test_involution_and_norm(self):
        v = np.random.default_rng(0).standard_normal(256)
        np.testing.assert_allclose(fwht(fwht(v)), v, atol=1e-12)
        assert np.linalg.norm(fwht(v)) == pytest.approx(np.linalg.norm(v))

    def test_batched_last_axis(self):
        a = np.random.default_rng(1).standard_normal((3, 5, 16))
        out = fwht(a)
        for i in range(3):
            for j in range(5):
                np.testing.assert_allclose(out[i, j], fwht(a[i, j]), atol=1e-14)

    def test_complex_input(self):
        rng = np.random.default_rng(2)
        v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        np.testing.assert_allclose(fwht(v), fwht(v.real) + 1j * fwht(v.imag), atol=1e-14)

    def test_input_untouched_and_inplace_variant(self):
        v = np.arange(8.0)
        keep = v.copy()
        fwht(v)
        np.testing.assert_array_equal(v, keep)
        fwht_(v)
        np.testing.assert_allclose(v, fwht(keep))

    @pytest.mark.parametrize("n", [3, 6, 12])
    def test_rejects_non_power_of_two(self, n):
        with pytest.raises(DimensionError):
            fwht(np.ones(n))


class TestWalsh:
    def test_entry_formula_small(self):
        # row 1 of W_4 is row bitrev(1)=2 of the natural-order Hadamard
        row = [walsh_entry(1, j, 4) * 2 for j in range(4)]
        assert row == [1, 1, -1, -1]

    def test_entry_out_of_range(self):
        with pytest.raises(IndexError):
            walsh_entry(4, 0, 4)

    @pytest.mark.parametrize("n", [2, 4, 8, 16, 32])
    def test_matvec_matches_dense(self, n):
        v = np.random.default_rng(n).standard_normal(n)
        W = dense_reference(StructuredOrthogonal.walsh(n))
        np.testing.assert_allclose(walsh_matvec(v), W @ v, atol=1e-12)
        np.testing.assert_allclose(W @ W.T, np.eye(n), atol=1e-12)


class TestKronecker:
    @given(st.lists(st.sampled_from([1, 2, 4]), min_size=1, max_size=3), st.integers(0, 2 ** 31))
    @settings(max_examples=30, deadline=None)
    def test_matches_np_kron(self, sizes, seed):
        blocks = [scipy.linalg.hadamard(s) for s in sizes]
        S = StructuredOrthogonal.kronecker(blocks)
        v = np.random.default_rng(seed).standard_normal(S.n)
        np.testing.assert_allclose(S.matvec(v), dense_reference(S) @ v, atol=1e-10)

    def test_mixed_real_blocks(self):
        a = np.array([[1.0, 1.0], [-1.0, 1.0]])
        S = StructuredOrthogonal.kronecker([a, H2, a])
        D = dense_reference(S)
        np.testing.assert_allclose(D @ D.T, np.eye(8), atol=1e-12)
        v = np.arange(8.0)
        np.testing.assert_allclose(kron_matvec(S.blocks, v), D @ v, atol=1e-12)

    def test_batched(self):
        S = StructuredOrthogonal.kronecker([H2, H2])
        a = np.random.default_rng(3).standard_normal((4, 4))
        np.testing.assert_allclose(S.matvec(a), a @ dense_reference(S).T, atol=1e-12)

    def test_rejects_bad_blocks(self):
        with pytest.raises(ValueError):
            StructuredOrthogonal.kronecker([[[1.0, 2.0], [1.0, -1.0]]])
        with pytest.raises(ValueError):
            StructuredOrthogonal.kronecker([[[1.0, 1.0], [1.0, 1.0]]])
        with pytest.raises(ValueError):
            StructuredOrthogonal.kronecker([])

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            kron_matvec([H2], np.ones(4))


class TestDiagonalLaws:
    @pytest.mark.parametrize("law", list(DiagonalLaw))
    def test_unit_modulus(self, law):
        d = law.sample(1000, np.random.default_rng(0))
        np.testing.assert_allclose(np.abs(d), 1.0, atol=1e-12)
        assert np.iscomplexobj(d) == law.is_complex

    def test_fourth_roots_support(self):
        d = DiagonalLaw.FOURTH_ROOTS.sample(4000, np.random.default_rng(1))
        assert set(np.round(d, 12).tolist()) == {1, -1, 1j, -1j}

    def test_fixed_diagonal_hook(self):
        law = FixedDiagonal((1.0, -1.0, 1.0, -1.0))
        np.testing.assert_array_equal(law.sample(4, None, (2,)), [[1, -1, 1, -1]] * 2)
        with pytest.raises(DimensionError):
            law.sample(8, None)


class TestSubsampling:
    @pytest.mark.parametrize("policy", list(SubsamplingPolicy))
    def test_shapes_and_range(self, policy):
        rows = subsample_rows(policy, 16, 5, np.random.default_rng(0), size=(7,))
        assert rows.shape == (7, 5)
        assert rows.min() >= 0 and rows.max() < 16
        if policy.distinct:
            assert all(len(set(r)) == 5 for r in rows.tolist())

    def test_first_m(self):
        rows = subsample_rows(SubsamplingPolicy.FIRST_M, 8, 3, None)
        np.testing.assert_array_equal(rows, [0, 1, 2])

    def test_without_replacement_uniform_marginal(self):
        rows = subsample_rows(SubsamplingPolicy.WITHOUT_REPLACEMENT, 8, 3, np.random.default_rng(5), size=40000)
        freq = np.bincount(rows.ravel(), minlength=8) / rows.size
        np.testing.assert_allclose(freq, 1 / 8, atol=0.006)

    def test_too_many_distinct_rows(self):
        with pytest.raises(ValueError):
            subsample_rows(SubsamplingPolicy.WITHOUT_REPLACEMENT, 4, 5, np.random.default_rng(0))

    def test_pair_count(self):
        assert pair_count(np.array([0, 4, 1, 3]), 8) == 1
        assert pair_count(np.array([0, 4, 1, 5]), 8) == 2
        assert expected_pair_count(8, 4) == Fraction(6, 7)
        assert expected_pair_count(16, 1) == 0


class TestSdProduct:
    def test_dense_product_from_fixed_laws(self):
        S = StructuredOrthogonal.hadamard(4)
        d1, d2 = (1.0, -1.0, -1.0, 1.0), (-1.0, 1.0, 1.0, 1.0)
        spec = SdProductSpec(S, (FixedDiagonal(d1), FixedDiagonal(d2)), 4)
        H = scipy.linalg.hadamard(4) / 2.0
        expect = H @ np.diag(d2) @ H @ np.diag(d1)
        np.testing.assert_allclose(dense_reference(spec), expect, atol=1e-14)
        x = np.arange(4.0)
        np.testing.assert_allclose(apply_blocks(S, [np.array(d1), np.array(d2)], x), expect @ x, atol=1e-14)

    def test_family_names(self):
        S = StructuredOrthogonal.hadamard(8)
        assert SdProductSpec.rademacher(S, 3, 4).family() == "rademacher"
        assert SdProductSpec.hybrid(S, 3, 4).family() == "hybrid"
        assert SdProductSpec.hybrid(S, 1, 4, final=DiagonalLaw.FOURTH_ROOTS).family() == "hybrid"
        assert SdProductSpec.uniform(S, 2, 4).family() == "uniform"

    def test_m_out_of_range(self):
        with pytest.raises(ValueError):
            SdProductSpec.rademacher(StructuredOrthogonal.hadamard(4), 1, 5)

    @given(st.integers(1, 3), st.integers(1, 16), st.sampled_from(list(DiagonalLaw)), st.integers(0, 2 ** 31))
    @settings(max_examples=40, deadline=None)
    def test_paired_rowwise_transform_agree(self, k, m, final, seed):
        S = StructuredOrthogonal.hadamard(16)
        spec = SdProductSpec(S, (DiagonalLaw.RADEMACHER,) * (k - 1) + (final,), m)
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(16)
        draw = spec.draw(rng)
        paired = draw.embed(x, "paired").values
        rowwise = draw.embed(x, "rowwise").values
        np.testing.assert_array_equal(paired, rowwise)
        np.testing.assert_allclose(paired, draw.embed(x, "transform").values, atol=1e-12)

    def test_features_match_dense_rows(self):
        S = StructuredOrthogonal.hadamard(8)
        spec = SdProductSpec.rademacher(S, 2, 3)
        draw = spec.draw(np.random.default_rng(4))
        x = np.arange(8.0)
        M = dense_reference(spec, draw.diagonals)
        np.testing.assert_allclose(draw.embed(x).values, math.sqrt(8) * (M @ x)[draw.rows], atol=1e-12)

    def test_batched_draw(self):
        S = StructuredOrthogonal.walsh(8)
        spec = SdProductSpec.uniform(S, 2, 4)
        draw = spec.draw(np.random.default_rng(0), size=5)
        assert draw.batched
        feats = draw.embed(np.ones(8)).values
        assert feats.shape == (5, 4) and np.iscomplexobj(feats)
        with pytest.raises(ValueError):
            draw.embed(np.ones(8), "paired")

    def test_final_block_cost(self):
        assert final_block_cost(np.array([0, 4, 1]), 8) == 8 + 9
        assert final_block_cost(np.array([0, 1, 2]), 8) == 24


class TestGort:
    def test_rows_orthogonal_within_block(self):
        M = sample_gort(8, 8, np.random.default_rng(0))
        G = M @ M.T
        np.testing.assert_allclose(G - np.diag(np.diag(G)), 0.0, atol=1e-10)

    def test_stacking_and_shape(self):
        M = sample_gort(10, 4, np.random.default_rng(1), size=(3,))
        assert M.shape == (3, 10, 4)

    def test_row_norm_is_chi(self):
        M = sample_gort(4, 4, np.random.default_rng(2), size=20000)
        sq = (M ** 2).sum(-1)
        assert sq.mean() == pytest.approx(4.0, rel=0.02)
        assert sq.var() == pytest.approx(8.0, rel=0.06)

    def test_entries_look_gaussian(self):
        M = sample_gort(4, 4, np.random.default_rng(3), size=20000)
        e = M[:, 0, 0]
        assert abs(e.mean()) < 0.03
        assert e.var() == pytest.approx(1.0, rel=0.04)
        assert (e ** 4).mean() == pytest.approx(3.0, rel=0.08)


class TestPadding:
    def test_pad(self):
        np.testing.assert_array_equal(pad_to_pow2(np.ones((2, 5))), np.hstack([np.ones((2, 5)), np.zeros((2, 3))]))
        x = np.ones(4)
        assert pad_to_pow2(x) is x

    def test_empty(self):
        with pytest.raises(DimensionError):
            pad_to_pow2(np.ones(0))
