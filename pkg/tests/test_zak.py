"""Zak transform: point values, quasi-periodicity, symmetry, unitarity, truncation."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zakgabor.core import CompactBump, Gaussian, Hermite, RationalGaussian, TotallyPositiveGaussian, make_lattice
from zakgabor.zak import TruncationError, ZakValue, vector_zak, zak, zak_grid

PI = math.pi

# direct summation over |k| <= 10 pins the value; terms below e^{-pi*121} are dust
GAUSS_Z00 = float(sum(math.exp(-PI * k * k) for k in range(-10, 11)))

finite_xs = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
finite_xis = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


class TestPointValues:
    def test_gaussian_origin(self):
        z = zak(Gaussian(), 1.0, 0.0, 0.0)
        assert z.value.imag == 0.0
        assert z.value.real == pytest.approx(GAUSS_Z00, rel=1e-15)

    def test_gaussian_center_zero(self):
        # terms k and 1-k cancel in pairs at (1/2, 1/2)
        z = zak(Gaussian(), 1.0, 0.5, 0.5)
        assert abs(z.value) <= 1e-12

    def test_truncation_bound_below_eps(self):
        for eps in (1e-6, 1e-10, 1e-12):
            z = zak(Gaussian(), 1.0, 0.3, 0.7, eps=eps)
            assert 0.0 <= z.truncation_bound <= eps

    def test_bound_certifies_value(self):
        # tightening eps moves the value by less than the certified bounds
        w = Hermite(3)
        loose = zak(w, 1.0, 0.37, 0.81, eps=1e-4)
        tight = zak(w, 1.0, 0.37, 0.81, eps=1e-14)
        assert abs(loose.value - tight.value) <= loose.truncation_bound + tight.truncation_bound

    def test_more_terms_for_larger_x(self):
        z1 = zak(Gaussian(), 1.0, 0.0, 0.0)
        z2 = zak(Gaussian(), 1.0, 12.0, 0.0)
        assert z2.terms_used > z1.terms_used

    def test_compact_support_exact(self):
        w = CompactBump(support=(0.0, 1.0))
        z = zak(w, 2.0, 1.5, 0.33)
        assert z.value == 0j
        assert z.truncation_bound == 0.0
        z = zak(w, 2.0, 0.5, 0.33)
        assert abs(z.value) == pytest.approx(1.0, rel=1e-12)
        assert z.terms_used == 1  # a single translate meets the support

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            zak(Gaussian(), 0.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            zak(Gaussian(), 1.0, 0.0, 0.0, eps=0.0)

    def test_truncation_cap_raises(self):
        # a huge per-step count is needed when alpha is tiny; the cap reports
        # the bound it could have achieved
        with pytest.raises(TruncationError) as ei:
            zak(Gaussian(), 1e-5, 0.0, 0.0)
        assert ei.value.achieved_bound > 0.0


class TestQuasiPeriodicity:
    WINDOWS = [
        Gaussian(),
        Hermite(3),
        RationalGaussian(num_coeffs=(1.0,), den_coeffs=(1.0, 0.0, 1.0)),
        TotallyPositiveGaussian(deltas=(0.3, -0.2)),
    ]

    @pytest.mark.parametrize("w", WINDOWS, ids=lambda w: w.to_dict()["variant"])
    @pytest.mark.parametrize("alpha", [1.0, 0.5])
    def test_shift_in_x(self, w, alpha):
        rng = np.random.default_rng(7)
        eps = 1e-12
        for _ in range(25):
            x, xi = rng.uniform(-2, 2, size=2)
            lhs = zak(w, alpha, x + alpha, xi, eps).value
            rhs = cmath.exp(2j * PI * alpha * xi) * zak(w, alpha, x, xi, eps).value
            assert abs(lhs - rhs) <= 2 * eps

    @pytest.mark.parametrize("w", WINDOWS, ids=lambda w: w.to_dict()["variant"])
    @pytest.mark.parametrize("alpha", [1.0, 0.5])
    def test_shift_in_xi(self, w, alpha):
        rng = np.random.default_rng(11)
        eps = 1e-12
        for _ in range(25):
            x, xi = rng.uniform(-2, 2, size=2)
            lhs = zak(w, alpha, x, xi + 1.0 / alpha, eps).value
            rhs = zak(w, alpha, x, xi, eps).value
            assert abs(lhs - rhs) <= 2 * eps

    @given(finite_xs, finite_xis)
    @settings(max_examples=60, deadline=None)
    def test_gaussian_quasi_periodicity_property(self, x, xi):
        eps = 1e-12
        z0 = zak(Gaussian(), 1.0, x, xi, eps).value
        z1 = zak(Gaussian(), 1.0, x + 1.0, xi, eps).value
        z2 = zak(Gaussian(), 1.0, x, xi + 1.0, eps).value
        assert abs(z1 - cmath.exp(2j * PI * xi) * z0) <= 2 * eps
        assert abs(z2 - z0) <= 2 * eps


class TestSymmetry:
    """For real even g: conj(Z(x,xi)) = Z(x,-xi) = Z(-x,xi), and Z(-x,-xi) = Z(x,xi)."""

    @pytest.mark.parametrize("w", [Gaussian(), Hermite(2)], ids=["gaussian", "hermite2"])
    def test_real_even_window_symmetries(self, w):
        rng = np.random.default_rng(3)
        eps = 1e-12
        for _ in range(20):
            x, xi = rng.uniform(-1.5, 1.5, size=2)
            z = zak(w, 1.0, x, xi, eps).value
            assert abs(zak(w, 1.0, x, -xi, eps).value - z.conjugate()) <= 4 * eps
            assert abs(zak(w, 1.0, -x, xi, eps).value - z.conjugate()) <= 4 * eps
            assert abs(zak(w, 1.0, -x, -xi, eps).value - z) <= 4 * eps

    def test_odd_window_flips_sign(self):
        # h1 odd: Z(-x,-xi) = -Z(x,xi)
        w = Hermite(1)
        z = zak(w, 1.0, 0.31, 0.47).value
        assert abs(zak(w, 1.0, -0.31, -0.47).value + z) <= 1e-11


class TestUnitarity:
    def test_gaussian_mean_square_is_norm_squared(self):
        # cell average of |Z|^2 over [0,a) x [0,1/a) equals ||g||^2 = 2^{-1/2}
        M = 128
        xs = (np.arange(M) + 0.5) / M
        xis = (np.arange(M) + 0.5) / M
        Z, _ = zak_grid(Gaussian(), 1.0, xs, xis)
        mean_sq = float(np.mean(np.abs(Z) ** 2))
        assert mean_sq == pytest.approx(2.0**-0.5, rel=0.01)


class TestVectorZak:
    def test_p1_matches_scalar(self):
        lat = make_lattice(1.0, 1, 2)
        v = vector_zak(Gaussian(), lat, 0.3, 0.4)
        assert v.values.shape == (1,)
        assert v.values[0] == zak(Gaussian(), 1.0, 0.3, 0.4).value

    def test_p2_entries(self):
        lat = make_lattice(1.0, 2, 3)
        v = vector_zak(Gaussian(), lat, 0.0, 0.0)
        assert v.values.shape == (2,)
        # at xi=0 every term is positive
        assert v.values[0].real > 0 and abs(v.values[0].imag) < 1e-14
        assert v.values[1].real > 0 and abs(v.values[1].imag) < 1e-14
        assert v.values[1] == pytest.approx(zak(Gaussian(), 1.0, 0.5, 0.0).value, rel=1e-15)

    def test_compact_support_entry(self):
        lat = make_lattice(2.0, 1, 2)
        v = vector_zak(CompactBump(support=(0.0, 1.0)), lat, 1.5, 0.2)
        assert v.values[0] == 0j


class TestGrid:
    def test_grid_matches_pointwise(self):
        xs = np.array([0.1, 0.4, 0.9])
        xis = np.array([0.0, 0.25, 0.8])
        Z, bound = zak_grid(Hermite(1), 1.0, xs, xis)
        assert Z.shape == (3, 3)
        assert bound <= 1e-12
        for i, x in enumerate(xs):
            for j, xi in enumerate(xis):
                zv = zak(Hermite(1), 1.0, float(x), float(xi))
                assert abs(Z[i, j] - zv.value) <= bound + zv.truncation_bound

    def test_empty_grid(self):
        Z, bound = zak_grid(Gaussian(), 1.0, np.array([]), np.array([0.5]))
        assert Z.shape == (0, 1)
        assert bound <= 1e-12

    def test_compact_grid_exact(self):
        xs = np.linspace(0.0, 2.0, 5)
        Z, bound = zak_grid(CompactBump(support=(0.0, 1.0)), 2.0, xs, np.array([0.3]))
        assert bound == 0.0
        assert Z[3, 0] == 0j  # x = 1.5 misses every translate
