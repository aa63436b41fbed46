import numpy as np
import pytest

from holopw.chars.chars import (
    CartanPoint,
    eta,
    eta_det_oracle,
    j_half_identity_residual,
    kirillov_residual,
    orbital_average,
    weight_sum_character,
    weyl_char_compact,
    weyl_char_holo,
)
from holopw.exceptions import SchemeMismatchError, WallSingularityError
from holopw.rootdata.rootdata import build_root_system, dimension, enumerate_dominant
from holopw.utils.sampling import ClosedFormA1, MonteCarlo


def chamber(rs, *theta):
    return CartanPoint.from_chamber(rs, list(theta))


class TestEta:

    def test_identity_value(self, a1, a2):
        assert eta(a1, CartanPoint.of([0.0])) == pytest.approx(1.0)
        assert eta(a2, CartanPoint.of([0.0, 0.0])) == pytest.approx(1.0)

    def test_a1_closed_form(self, a1):
        # alpha(Y) = 2 theta
        assert eta(a1, chamber(a1, 1.0)) == pytest.approx(np.sinh(2.0) / 2.0, rel=1e-14)

    def test_torus_is_one(self, t2, rng):
        Y = CartanPoint(rng.normal(size=(10, 2)))
        assert np.allclose(eta(t2, Y), 1.0)

    def test_weyl_and_sign_invariance(self, a2, rng):
        Y = CartanPoint(rng.normal(size=(25, 2)))
        base = eta(a2, Y)
        for w in a2.weyl_elements:
            assert np.allclose(eta(a2, CartanPoint(Y.coords @ w.T)), base, rtol=1e-13)
        assert np.allclose(eta(a2, Y.scaled(-1.0)), base, rtol=1e-13)

    def test_at_least_one(self, a2, rng):
        Y = CartanPoint(rng.normal(scale=3.0, size=(50, 2)))
        assert np.all(eta(a2, Y) >= 1.0)

    def test_determinant_oracle_su2(self, su2, rng):
        Yhat = su2.cartan_element([np.sqrt(2.0) * 0.7])
        g = su2.haar_sample(rng)
        X = su2.adjoint(g, Yhat)
        assert eta_det_oracle(su2, X) == pytest.approx(np.sinh(1.4) / 1.4, rel=1e-11)
        assert eta_det_oracle(su2, np.zeros((2, 2), dtype=complex)) == pytest.approx(1.0, rel=1e-12)

    def test_determinant_oracle_su3(self, su3, a2, rng):
        X = su3.random_algebra_element(rng, 1.0, 100)
        lhs = eta(a2, su3.cartan_representative(X))
        rhs = eta_det_oracle(su3, X)
        assert np.allclose(lhs, rhs, rtol=1e-10)

    @pytest.mark.parametrize("kind", ["A1", "A2"])
    def test_j_half_angle_identity(self, kind, rng):
        rs = build_root_system(kind)
        Y = CartanPoint(rng.normal(size=(30, rs.rank)))
        assert np.all(j_half_identity_residual(rs, Y) <= 1e-13 * eta(rs, Y.scaled(0.5)))
        assert j_half_identity_residual(rs, CartanPoint.of(np.zeros(rs.rank))) == pytest.approx(0.0, abs=1e-15)


class TestCharacters:

    def test_compact_fundamental(self, a1):
        value = weyl_char_compact(a1, a1.weight((1,)), chamber(a1, 0.3))
        assert value.real == pytest.approx(2 * np.cos(0.3), rel=1e-13)
        assert abs(value.imag) < 1e-13

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_compact_a1(self, a1, n):
        theta = 0.41
        value = weyl_char_compact(a1, a1.weight((n,)), chamber(a1, theta))
        assert value.real == pytest.approx(np.sin((n + 1) * theta) / np.sin(theta), rel=1e-12)

    def test_compact_wall_raises(self, a1):
        with pytest.raises(WallSingularityError):
            weyl_char_compact(a1, a1.weight((1,)), CartanPoint.of([0.0]))

    def test_compact_torus(self, t2):
        Y = CartanPoint.of([0.3, -1.1])
        weight = t2.weight((2, -1))
        assert weyl_char_compact(t2, weight, Y) == pytest.approx(np.exp(1j * (0.6 + 1.1)), rel=1e-14)

    def test_holomorphic_fundamental(self, a1):
        value = weyl_char_holo(a1, a1.weight((1,)), chamber(a1, 0.5))
        assert value == pytest.approx(2 * np.cosh(0.5), rel=1e-13)

    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_holomorphic_a1(self, a1, n):
        theta = 0.8
        value = weyl_char_holo(a1, a1.weight((n,)), chamber(a1, theta))
        assert value == pytest.approx(np.sinh((n + 1) * theta) / np.sinh(theta), rel=1e-12)

    def test_holomorphic_torus(self, t2):
        Y = CartanPoint.of([0.3, -1.1])
        assert weyl_char_holo(t2, t2.weight((2, -1)), Y) == pytest.approx(np.exp(-(0.6 + 1.1)), rel=1e-14)

    def test_holomorphic_at_identity_is_dimension(self, a1, a2):
        assert weyl_char_holo(a1, a1.weight((3,)), CartanPoint.of([0.0])) == pytest.approx(4.0)
        for weight in enumerate_dominant(a2, 3):
            value = weyl_char_holo(a2, weight, CartanPoint.of([1e-7, 2e-7]))
            assert value == pytest.approx(dimension(a2, weight), rel=1e-6)

    def test_holomorphic_on_a_wall(self, a2):
        weight = a2.weight((2, 1))
        Y = chamber(a2, 0.0, 0.3)
        expected = weight_sum_character(a2, weight, Y)
        assert weyl_char_holo(a2, weight, Y) == pytest.approx(expected, rel=1e-12)

    def test_quotient_matches_weight_sum_off_walls(self, a2):
        weight = a2.weight((2, 1))
        Y = CartanPoint(np.array([[1e-4, 0.3], [0.4, 0.7], [1.2, 0.05]]) @ a2.chamber_matrix)
        assert np.allclose(weyl_char_holo(a2, weight, Y), weight_sum_character(a2, weight, Y), rtol=1e-9)

    def test_holomorphic_is_positive(self, a2, rng):
        Y = CartanPoint.from_chamber(a2, rng.uniform(0.0, 2.0, size=(40, 2)))
        for weight in enumerate_dominant(a2, 2):
            assert np.all(weyl_char_holo(a2, weight, Y) >= 1.0)

    def test_compact_matches_weight_sum(self, a2):
        weight = a2.weight((1, 1))
        Y = chamber(a2, 0.37, 0.52)
        compact = weyl_char_compact(a2, weight, Y)
        assert compact == pytest.approx(weight_sum_character(a2, weight, Y, holomorphic=False), rel=1e-11)


class TestOrbitalAverage:

    def test_closed_form_at_origin(self, su2):
        est = orbital_average(su2, np.array([2.0]), CartanPoint.of([0.0]), ClosedFormA1())
        assert est.value == pytest.approx(1.0)

    def test_closed_form_value(self, su2, a1):
        mu = 2.0 * a1.shifted(a1.weight((1,)))
        est = orbital_average(su2, mu, chamber(a1, 0.5), ClosedFormA1())
        # |mu| |Y| = 2 (n+1) theta
        assert est.value == pytest.approx(np.sinh(2.0) / 2.0, rel=1e-13)

    def test_closed_form_needs_a1(self, su3):
        with pytest.raises(SchemeMismatchError):
            orbital_average(su3, np.ones(2), CartanPoint.of([0.1, 0.1]), ClosedFormA1())

    def test_monte_carlo_matches_closed_form(self, su2, a1):
        mu = 2.0 * a1.shifted(a1.weight((1,)))
        Y = chamber(a1, 0.3)
        exact = orbital_average(su2, mu, Y, ClosedFormA1()).value
        est = orbital_average(su2, mu, Y, MonteCarlo(samples=100_000, seed=7))
        assert abs(est.value - exact) <= 5 * est.stderr

    def test_monte_carlo_a2_streams_agree(self, su3, a2):
        mu = a2.shifted(a2.weight((1, 0)))
        Y = chamber(a2, 0.2, 0.3)
        first = orbital_average(su3, mu, Y, MonteCarlo(samples=50_000, seed=1))
        second = orbital_average(su3, mu, Y, MonteCarlo(samples=50_000, seed=2))
        assert abs(first.value - second.value) <= 5 * np.hypot(first.stderr, second.stderr)

    def test_monte_carlo_is_reproducible(self, su3, a2):
        mu = a2.shifted(a2.weight((1, 1)))
        Y = chamber(a2, 0.1, 0.2)
        scheme = MonteCarlo(samples=5_000, seed=11)
        assert orbital_average(su3, mu, Y, scheme) == orbital_average(su3, mu, Y, scheme)


class TestKirillov:

    def test_a1_closed_form(self, su2, a1, rng):
        for n, theta in zip(rng.integers(0, 9, 100), rng.uniform(0.05, 2.0, 100)):
            res = kirillov_residual(su2, a1.weight((int(n),)), chamber(a1, theta), ClosedFormA1())
            assert res.rel_err <= 1e-12
            assert res.lhs == pytest.approx(np.sinh(2 * (n + 1) * theta) / (2 * theta), rel=1e-12)

    def test_a1_half_angle(self, su2, a1, rng):
        for n in range(7):
            theta = rng.uniform(0.05, 2.0)
            res = kirillov_residual(su2, a1.weight((n,)), chamber(a1, theta), ClosedFormA1(), half_angle=True)
            assert res.rel_err <= 1e-12

    def test_a2_monte_carlo(self, su3, a2):
        Y = chamber(a2, 0.15, 0.25)
        for dynkin in [(0, 0), (1, 0), (1, 1)]:
            res = kirillov_residual(su3, a2.weight(dynkin), Y, MonteCarlo(samples=100_000, seed=3))
            assert res.abs_err <= 5 * res.stderr

    @pytest.mark.parametrize("half", [False, True])
    @pytest.mark.parametrize("dynkin", [(0, 0), (1, 0), (0, 2), (2, 1), (1, 4), (3, 3)])
    def test_a2_monte_carlo_at_scaled_points(self, su3, a2, rng, dynkin, half):
        weight = a2.weight(dynkin)
        mu = np.linalg.norm(a2.shifted(weight)) * (1.0 if half else 2.0)
        Y = CartanPoint.from_chamber(a2, rng.uniform(0.05, 0.5, 2)).scaled(1.0 / mu)
        res = kirillov_residual(su3, weight, Y, MonteCarlo(samples=50_000, seed=17), half_angle=half)
        assert res.abs_err <= 5 * res.stderr
