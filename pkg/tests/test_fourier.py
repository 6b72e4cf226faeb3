import numpy as np
import pytest

from conftest import random_grids
from lorentz_forge.fourier import (TRIG, WALSH, CoeffMatrix, block_l2,
                                   block_sup_lhs, bochkarev_lhs, coeffs_2d,
                                   coeffs_from_values, gram_matrix, te3_lhs,
                                   te4_lhs, trig_frequency, walsh_on_cells,
                                   walsh_synthesize)
from lorentz_forge.norms import (Exponents, GrandParams, grand_seq_norm,
                                 mixed_lebesgue_norm)
from lorentz_forge.rearrange import Sequence2D
from lorentz_forge.stepfun import DyadicStep2D, constant_grid

INF = float("inf")


def test_trig_enumeration():
    assert [trig_frequency(i) for i in range(7)] == [0, 1, -1, 2, -2, 3, -3]


class TestCoeffs:
    def test_constant_trig_all_mass_at_zero_frequency(self):
        a = coeffs_2d(constant_grid(1.0, (2, 2)), TRIG, TRIG, 7, 7)
        assert a.entries[0, 0] == pytest.approx(1.0, abs=1e-14)
        rest = np.abs(a.entries).copy()
        rest[0, 0] = 0.0
        assert rest.max() <= 1e-14

    def test_walsh_single_tensor_mode(self):
        c = np.zeros((8, 8))
        c[3, 2] = 1.0
        vals = walsh_synthesize(c, (3, 3))
        a = coeffs_from_values(vals, (3, 3), WALSH, WALSH, 8, 8)
        got = a.entries.real.copy()
        assert got[3, 2] == pytest.approx(1.0, abs=1e-14)
        got[3, 2] = 0.0
        assert np.abs(got).max() <= 1e-14

    @pytest.mark.parametrize("level,tol", [(4, 0.05), (6, 0.02)])
    def test_shifted_cosine_sampling_error_shrinks(self, level, tol):
        h = 2.0**-level
        x = (np.arange(2**level) + 0.5) * h
        vals = np.tile(1.0 + np.cos(2 * np.pi * x), (2**level, 1))
        f = DyadicStep2D((level, level), vals)
        a = coeffs_2d(f, TRIG, TRIG, 3, 1)
        assert abs(a.entries[1, 0] - 0.5) <= tol
        assert abs(a.entries[2, 0] - 0.5) <= tol

    def test_walsh_beyond_resolution_rejected(self):
        with pytest.raises(ValueError, match="resolution"):
            coeffs_2d(constant_grid(1.0, (2, 2)), WALSH, WALSH, 8, 4)

    def test_walsh_parseval_exact(self):
        for f in random_grids(20, (5, 5), seed=61):
            a = coeffs_2d(f, WALSH, WALSH, 32, 32)
            assert np.sum(np.abs(a.entries) ** 2) == pytest.approx(
                mixed_lebesgue_norm(f, (2, 2)) ** 2, abs=1e-10)

    def test_trig_bessel_monotone_and_bounded(self):
        for f in random_grids(5, (4, 4), seed=62):
            total = mixed_lebesgue_norm(f, (2, 2)) ** 2
            prev = 0.0
            for K in (2, 4, 8, 16, 32):
                s = float(np.sum(np.abs(
                    coeffs_2d(f, TRIG, TRIG, K, K).entries) ** 2))
                assert s >= prev - 1e-12
                assert s <= total + 1e-10
                prev = s

    def test_coefficient_bound_by_l1_norm(self):
        for f in random_grids(10, (4, 4), seed=63):
            a = coeffs_2d(f, TRIG, TRIG, 9, 9)
            assert np.abs(a.entries).max() <= \
                mixed_lebesgue_norm(f, (1, 1)) + 1e-12

    def test_mixed_system_pair(self):
        f = constant_grid(1.0, (3, 3))
        a = coeffs_2d(f, WALSH, TRIG, 8, 5)
        assert a.entries[0, 0] == pytest.approx(1.0, abs=1e-14)


class TestOrthonormality:
    @pytest.mark.parametrize("system", [TRIG, WALSH])
    def test_gram_is_identity(self, system):
        G = gram_matrix(system, 32, 5)
        assert np.abs(G - np.eye(32)).max() <= 1e-10

    def test_walsh_uniform_bound(self):
        for k in range(16):
            assert np.abs(walsh_on_cells(k, 4)).max() == 1.0


class TestBlocks:
    def test_single_coefficient_any_block(self):
        c = np.zeros((4, 4), dtype=complex)
        c[2, 3] = 0.7j
        a = CoeffMatrix(WALSH, WALSH, c)
        for N in (1, 2, 4):
            assert block_l2(a, N, N) == pytest.approx(0.7)

    def test_all_ones_two_by_two(self):
        a = CoeffMatrix(WALSH, WALSH, np.ones((2, 2), dtype=complex))
        assert block_l2(a, 2, 2) == pytest.approx(2.0)

    def test_monotone_in_block_size(self, rng):
        a = CoeffMatrix(WALSH, WALSH, rng.random((8, 8)).astype(complex))
        vals = [block_l2(a, n, n) for n in (1, 2, 4, 8)]
        assert all(x <= y + 1e-15 for x, y in zip(vals, vals[1:]))

    def test_order_independent_for_tensor_matrices(self, rng):
        u, w = rng.random(8), rng.random(8)
        a = CoeffMatrix(WALSH, WALSH, np.outer(u, w).astype(complex))
        for n in (1, 2, 4, 8):
            assert block_l2(a, n, n, "seq") == pytest.approx(
                block_l2(a, n, n, "fun"), rel=1e-13)

    def test_block_exceeding_truncation_rejected(self):
        a = CoeffMatrix(WALSH, WALSH, np.ones((2, 2), dtype=complex))
        with pytest.raises(ValueError):
            block_l2(a, 4, 2)


class TestTheoremLeftSides:
    def test_bochkarev_single_coefficient(self):
        c = np.zeros((4, 4), dtype=complex)
        c[0, 0] = 0.9
        a = CoeffMatrix(WALSH, WALSH, c)
        assert bochkarev_lhs(a, (INF, INF)) == pytest.approx(0.9 / np.log(2))

    def test_bochkarev_zero_matrix(self):
        a = CoeffMatrix(WALSH, WALSH, np.zeros((4, 4), dtype=complex))
        assert bochkarev_lhs(a, (2, 2)) == 0.0

    def test_bochkarev_homogeneous(self, rng):
        m = rng.random((8, 8))
        a1 = CoeffMatrix(WALSH, WALSH, m.astype(complex))
        a2 = CoeffMatrix(WALSH, WALSH, (5 * m).astype(complex))
        assert bochkarev_lhs(a2, (4, INF)) == pytest.approx(
            5 * bochkarev_lhs(a1, (4, INF)), rel=1e-12)

    def test_bochkarev_requires_q_at_least_two(self):
        a = CoeffMatrix(WALSH, WALSH, np.ones((2, 2), dtype=complex))
        with pytest.raises(ValueError):
            bochkarev_lhs(a, (1, 2))

    def test_block_sup_saturates(self, rng):
        a = CoeffMatrix(WALSH, WALSH, rng.random((8, 8)).astype(complex))
        total = np.sqrt(np.sum(np.abs(a.entries) ** 2))
        assert block_sup_lhs(a, (2, 2)) == pytest.approx(total)

    def test_te4_lhs_zero_and_homogeneity(self, rng):
        e = Exponents((2, 2), (2, 2))
        gp = GrandParams((0.5, 0.5))
        z = CoeffMatrix(WALSH, WALSH, np.zeros((4, 4), dtype=complex))
        assert te4_lhs(z, e, gp).value == 0.0
        m = rng.random((4, 4))
        v1 = te4_lhs(CoeffMatrix(WALSH, WALSH, m.astype(complex)), e, gp).value
        v2 = te4_lhs(CoeffMatrix(WALSH, WALSH, (2 * m).astype(complex)), e, gp).value
        assert v2 == pytest.approx(2 * v1, rel=1e-12)

    def test_te4_lhs_single_entry_delegates_to_seq_norm(self):
        c = np.zeros((4, 4), dtype=complex)
        c[0, 0] = 1.0
        a = CoeffMatrix(WALSH, WALSH, c)
        e = Exponents((2, 2), (4, 4))
        got = te4_lhs(a, e, GrandParams((0.25, 0.25))).value
        lam = (0.25 + 0.5, 0.25 + 0.5)  # beta = max(1/2, 1/4)
        want = grand_seq_norm(a.magnitudes, e, GrandParams(lam), sign="minus").value
        assert got == want

    def test_te3_lhs_positive(self, rng):
        a = CoeffMatrix(WALSH, WALSH, rng.random((8, 8)).astype(complex))
        assert te3_lhs(a, (4 / 3, 4 / 3), (2, 2)) > 0


def test_synthesis_round_trip(rng):
    coeffs = rng.standard_normal((8, 8))
    vals = walsh_synthesize(coeffs, (3, 3))
    a = coeffs_from_values(vals, (3, 3), WALSH, WALSH, 8, 8)
    assert np.allclose(a.entries.real, coeffs, atol=1e-12)
    assert np.abs(a.entries.imag).max() <= 1e-14


def test_magnitudes_is_sequence(rng):
    a = CoeffMatrix(WALSH, WALSH, (rng.random((3, 5)) * 1j).astype(complex))
    mags = a.magnitudes
    assert isinstance(mags, Sequence2D)
    assert mags.dims == (3, 5)
