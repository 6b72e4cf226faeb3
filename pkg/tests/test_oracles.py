import itertools

import numpy as np
import pytest

from conftest import random_grids
from lorentz_forge.norms import Exponents, lorentz_norm
from lorentz_forge.oracles import oracle_lorentz_norm, oracle_rearrange
from lorentz_forge.rearrange import iterated_rearrange_2d
from lorentz_forge.stepfun import DyadicStep2D, constant_grid

INF = float("inf")


class TestOracleRearrange:
    def test_sigma_scan_example(self):
        f = DyadicStep2D((1, 1), [[1.0, 4.0], [3.0, 2.0]])
        assert oracle_rearrange(f).values.tolist() == [[4.0, 2.0], [3.0, 1.0]]

    def test_constant(self):
        f = constant_grid(2.0, (2, 2))
        assert np.array_equal(oracle_rearrange(f).values, f.values)

    def test_exhaustive_two_by_two(self):
        for combo in itertools.product((0.0, 1.0, 2.0), repeat=4):
            f = DyadicStep2D((1, 1), np.array(combo).reshape(2, 2))
            assert np.array_equal(oracle_rearrange(f).values,
                                  iterated_rearrange_2d(f).values)

    def test_random_agreement(self):
        for f in random_grids(25, (4, 4), seed=71):
            assert np.array_equal(oracle_rearrange(f).values,
                                  iterated_rearrange_2d(f).values)


class TestOracleLorentz:
    def test_constant_value_four(self):
        res = oracle_lorentz_norm(constant_grid(1.0, (3, 3)),
                                  Exponents((2, 2), (1, 1)))
        assert res.value == pytest.approx(4.0, abs=1e-6)
        assert res.err_bound < 1e-6

    def test_sup_form_constant(self):
        res = oracle_lorentz_norm(constant_grid(1.0, (2, 2)),
                                  Exponents((2, 2), (INF, INF)))
        assert res.value == pytest.approx(1.0, rel=1e-9)

    @pytest.mark.parametrize("p,q", [((2, 2), (1, 1)), ((1.5, 3), (2, 1)),
                                     ((2, 2), (INF, INF)), ((4, 1.2), (0.7, 2))])
    def test_agreement_with_closed_form(self, p, q):
        for f in random_grids(10, (4, 4), seed=72):
            e = Exponents(p, q)
            got = oracle_lorentz_norm(f, e).value
            assert got == pytest.approx(lorentz_norm(f, e), rel=1e-6)
