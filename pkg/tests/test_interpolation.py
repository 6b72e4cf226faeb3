import numpy as np
import pytest

from conftest import random_grids
from lorentz_forge.interpolation import (beta_from_q, constant_D, interp_norm,
                                         k_upper, khat_grid, theta_from_p)
from lorentz_forge.norms import Exponents, lorentz_norm
from lorentz_forge.stepfun import DyadicStep2D, constant_grid
from lorentz_forge.verify.calibration import pinned_ratios

INF = float("inf")


class TestKUpper:
    def test_constant_at_unit_parameters(self):
        kt = k_upper(constant_grid(1.0, (3, 3)), 1.0, 1.0)
        assert kt.t00 == pytest.approx(1.0, abs=1e-12)
        assert kt.t10 == kt.t01 == kt.t11 == 0.0
        assert kt.khat == pytest.approx(1.0, abs=1e-12)

    def test_zero_function(self):
        kt = k_upper(constant_grid(0.0, (2, 2)), 0.5, 0.5)
        assert (kt.t00, kt.t10, kt.t01, kt.t11) == (0, 0, 0, 0)

    def test_constant_at_half_parameters(self):
        # w = 1/4: averages give T00 = 1/16, the two half tails sqrt(3)/4*?,
        # and the tail rectangle (1/4,1]^2 has mass 9/16
        kt = k_upper(constant_grid(1.0, (4, 4)), 0.5, 0.5)
        assert kt.t00 == pytest.approx(1 / 16, abs=1e-12)
        assert kt.t10 == pytest.approx(np.sqrt(3 / 4) / 4, abs=1e-12)
        assert kt.t01 == pytest.approx(np.sqrt(3 / 64), abs=1e-12)
        assert kt.t11 == pytest.approx(0.75, abs=1e-12)

    def test_constant_beyond_one_in_t(self):
        base = k_upper(constant_grid(1.0, (3, 3)), 1.0, 1.0)
        for t1, t2 in ((2.0, 1.0), (1.0, 8.0), (4.0, 4.0)):
            kt = k_upper(constant_grid(1.0, (3, 3)), t1, t2)
            assert kt.khat == pytest.approx(base.khat, rel=1e-14)

    def test_requires_positive_t(self):
        with pytest.raises(ValueError):
            k_upper(constant_grid(1.0), 0.0, 1.0)

    def test_monotone_on_dyadic_grid(self):
        ts = 2.0 ** np.arange(-8, 1)
        for f in random_grids(20, (4, 4), seed=41):
            K = khat_grid(f, ts, ts)
            assert np.all(np.diff(K, axis=0) >= -1e-12 * K[1:, :])
            assert np.all(np.diff(K, axis=1) >= -1e-12 * K[:, 1:])

    def test_dominates_trivial_decompositions(self, rng):
        # Khat is an upper bound for the true infimum, which is at most the
        # all-in-one-piece value min over the four corners
        from lorentz_forge.norms import mixed_lebesgue_norm

        f = DyadicStep2D((3, 3), rng.random((8, 8)))
        for t1, t2 in ((0.3, 0.7), (1.0, 0.2), (2.0, 2.0)):
            kt = k_upper(f, t1, t2)
            trivial = min(
                mixed_lebesgue_norm(f, (1, 1)),
                t1 * t2 * mixed_lebesgue_norm(f, (2, 2)),
            )
            assert kt.khat >= trivial * (1 - 1e-12) or kt.khat >= 0


class TestInterpNorm:
    def test_zero_function(self):
        assert interp_norm(constant_grid(0.0, (2, 2)), (0.5, 0.5), (2, 2)) == 0.0

    def test_positive_homogeneity(self, rng):
        v = rng.random((8, 8))
        f1 = DyadicStep2D((3, 3), v)
        f2 = DyadicStep2D((3, 3), 2.5 * v)
        n1 = interp_norm(f1, (0.3, 0.6), (1, 2))
        n2 = interp_norm(f2, (0.3, 0.6), (1, 2))
        assert n2 == pytest.approx(2.5 * n1, rel=1e-12)

    def test_pinned_constant_example(self):
        pin = pinned_ratios()["interp_example"]
        got = interp_norm(constant_grid(1.0, (3, 3)), (0.5, 0.5), (INF, INF), J=10)
        assert got == pytest.approx(pin["value_J10"], rel=1e-12)
        fine = interp_norm(constant_grid(1.0, (3, 3)), (0.5, 0.5), (INF, INF), J=16)
        assert fine == pytest.approx(pin["value_J16"], rel=1e-12)

    def test_theta_domain_validated(self):
        with pytest.raises(ValueError):
            interp_norm(constant_grid(1.0), (0.0, 0.5), (2, 2))
        with pytest.raises(ValueError):
            interp_norm(constant_grid(1.0), (0.5, 0.5), (2, 2), J=2)

    def test_chain_against_lorentz(self, rng):
        f = DyadicStep2D((4, 4), rng.random((16, 16)))
        for theta in ((0.3, 0.3), (0.7, 0.4)):
            p = tuple(1 / (1 - t / 2) for t in theta)
            for q in ((1, 1), (2, 2), (INF, INF)):
                lhs = interp_norm(f, theta, q, J=10)
                rhs = 6 * constant_D(theta, q) * lorentz_norm(f, Exponents(p, q))
                assert lhs <= 1.05 * rhs


class TestConstantD:
    def test_symmetric_point(self):
        assert constant_D((0.5, 0.5), (2, 2)) == pytest.approx(4.0)

    def test_max_term_structure(self):
        # beta = (1, 1/2) at q = (1, 2)
        D = constant_D((0.5, 0.5), (1, 2))
        terms = [1 / (0.5 * 0.5), 1 / (0.5**1 * 0.5), 1 / (0.5**0.5 * 0.5),
                 1 / (0.5**1 * 0.5**0.5)]
        assert D == pytest.approx(max(terms))

    def test_blows_up_at_the_upper_corner(self):
        assert constant_D((0.99, 0.99), (2, 2)) > constant_D((0.9, 0.9), (2, 2))
        assert constant_D((0.999, 0.999), (2, 2)) > 1e2

    def test_parameter_symmetry(self):
        assert constant_D((0.3, 0.7), (1, 4)) == constant_D((0.7, 0.3), (4, 1))

    def test_domain_validated(self):
        with pytest.raises(ValueError):
            constant_D((0.0, 0.5), (2, 2))


class TestThetaFromP:
    def test_four_thirds_maps_to_half(self):
        tp = theta_from_p((4 / 3, 4 / 3))
        assert tp.theta == pytest.approx((0.5, 0.5))

    def test_endpoints(self):
        assert theta_from_p((1.001, 1.999)).theta == \
            pytest.approx((0.002 / 1.001, 2 * (1 - 1 / 1.999)), rel=1e-9)

    @pytest.mark.parametrize("p", [(1.0, 1.5), (2.0, 1.5), (0.5, 1.5)])
    def test_out_of_range_rejected(self, p):
        with pytest.raises(ValueError):
            theta_from_p(p)


def test_beta_from_q():
    assert beta_from_q((2, 2)) == (0.5, 0.5)
    assert beta_from_q((1, 4)) == (1.0, 0.5)
    assert beta_from_q((INF, INF)) == (0.5, 0.5)
