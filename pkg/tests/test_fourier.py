import numpy as np
import pytest

from holopw.chars.chars import CartanPoint, weyl_char_holo
from holopw.exceptions import CapabilityError, KindMismatchError, SpaceMismatchError
from holopw.fourier.fourier import (
    FourierSeries,
    Space,
    bilinear_pairing,
    character_series,
    convolve,
    direct_convolution,
    fourier_coeff,
    inner_product,
    plancherel_norm,
    random_series,
    series_from_function,
    synthesize,
)
from holopw.models.models import su2_character
from holopw.utils.sampling import MonteCarlo, monte_carlo_mean


def within(est, target, band=5.0):
    return bool(np.all(np.abs(est.value - target) <= band * est.stderr + 1e-12))


class TestFourierSeries:

    def test_shape_is_validated(self):
        with pytest.raises(ValueError):
            FourierSeries("A1", Space.L2K, 1.0, {(1,): np.eye(3)})

    def test_terms_are_sorted(self, rng):
        s = random_series("A1", [(2,), (0,), (1,)], rng)
        assert list(s.terms) == [(0,), (1,), (2,)]

    def test_missing_coefficient_is_zero(self):
        s = character_series("A1", (0,))
        assert np.array_equal(s.coefficient((2,)), np.zeros((3, 3)))

    def test_add_and_scale(self, rng):
        a = random_series("A1", [(0,), (1,)], rng)
        b = random_series("A1", [(1,), (2,)], rng)
        total = a + b.scale(2.0)
        assert np.allclose(total.coefficient((1,)), a.terms[(1,)] + 2.0 * b.terms[(1,)])
        assert np.allclose(total.coefficient((2,)), 2.0 * b.terms[(2,)])

    def test_mismatched_spaces(self):
        with pytest.raises(SpaceMismatchError):
            character_series("A1", (0,)) + character_series("A1", (0,), Space.HL2)

    def test_mismatched_kinds(self):
        with pytest.raises(KindMismatchError):
            character_series("A1", (0,)) + character_series("T1", (0,))


class TestCoefficients:

    def test_character_coefficient(self, su2):
        est = fourier_coeff(su2, lambda x: su2_character(1, x), (1,), MonteCarlo(samples=40_000, seed=1))
        assert within(est, np.eye(2) / 2)

    def test_orthogonality(self, su2):
        est = fourier_coeff(su2, lambda x: su2_character(2, x), (1,), MonteCarlo(samples=40_000, seed=2))
        assert within(est, np.zeros((2, 2)))

    def test_constant_function(self, su2):
        est = fourier_coeff(su2, lambda x: np.ones(len(x)), (0,), MonteCarlo(samples=1_000, seed=3))
        assert est.value[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_needs_irrep_matrices(self, su3):
        with pytest.raises(CapabilityError, match="irrep matrices unavailable for A2"):
            fourier_coeff(su3, lambda x: np.ones(len(x)), (0,), MonteCarlo(samples=100, seed=0))

    def test_round_trip(self, su2, rng):
        source = random_series("A1", [(0,), (1,)], rng)
        recovered, errors = series_from_function(
            su2, lambda x: synthesize(source, su2, x), 2, MonteCarlo(samples=20_000, seed=4)
        )
        for key in [(0,), (1,), (2,)]:
            diff = np.abs(recovered.coefficient(key) - source.coefficient(key))
            assert np.all(diff <= 5 * errors[key] + 1e-12)


class TestSynthesis:

    def test_constant(self, su2, rng):
        x = su2.haar_sample(rng, 10)
        assert np.allclose(synthesize(FourierSeries("A1", Space.L2K, 1.0, {(0,): np.eye(1)}), su2, x), 1.0)

    def test_character(self, su2, rng):
        x = su2.haar_sample(rng, 10)
        assert np.allclose(synthesize(character_series("A1", (3,)), su2, x), su2_character(3, x), atol=1e-10)

    def test_holomorphic_character(self, su2, a1):
        Y = CartanPoint.from_chamber(a1, [0.4])
        value = synthesize(character_series("A1", (2,), Space.HL2), su2, np.eye(2, dtype=complex), Y)
        assert value.real == pytest.approx(weyl_char_holo(a1, a1.weight((2,)), Y), rel=1e-11)

    def test_holomorphic_at_real_points(self, su2, rng):
        s = random_series("A1", [(0,), (1,), (2,)], rng, Space.HL2)
        x = su2.haar_sample(rng, 5)
        flat = FourierSeries("A1", Space.L2K, 1.0, s.terms)
        assert np.allclose(synthesize(s, su2, x, np.zeros(3)), synthesize(flat, su2, x), atol=1e-10)

    def test_l2k_has_no_extension(self, su2):
        with pytest.raises(SpaceMismatchError):
            synthesize(character_series("A1", (1,)), su2, np.eye(2), np.zeros(3))


class TestConvolution:

    def test_characters(self):
        s = convolve(character_series("A1", (2,)), character_series("A1", (2,)))
        assert np.allclose(s.terms[(2,)], np.eye(3) / 9)

    def test_disjoint_supports(self):
        assert convolve(character_series("A1", (1,)), character_series("A1", (2,))).terms == {}

    def test_coefficient_order(self, rng):
        a = random_series("A1", [(1,)], rng)
        b = random_series("A1", [(1,)], rng)
        assert np.allclose(convolve(a, b).terms[(1,)], b.terms[(1,)] @ a.terms[(1,)])

    def test_matches_direct_integral(self, su2, rng):
        a = random_series("A1", [(0,), (1,)], rng)
        b = random_series("A1", [(0,), (1,)], rng)
        q = su2.haar_sample(rng)
        est = direct_convolution(
            su2, lambda x: synthesize(a, su2, x), lambda x: synthesize(b, su2, x), q, MonteCarlo(samples=100_000, seed=6)
        )
        target = synthesize(convolve(a, b), su2, q)
        assert abs(est.value - target) <= 5 * est.stderr

    def test_pairing_at_identity(self, su2, rng):
        f = random_series("A1", [(0,), (1,), (2,)], rng)
        h = random_series("A1", [(0,), (1,), (2,)], rng)
        at_identity = synthesize(convolve(f, h), su2, np.eye(2, dtype=complex))
        assert at_identity == pytest.approx(bilinear_pairing(f, h), rel=1e-10)


class TestPlancherel:

    def test_characters_have_unit_norm(self):
        for n in range(4):
            assert plancherel_norm(character_series("A1", (n,))) == pytest.approx(1.0)

    def test_empty_series(self):
        assert plancherel_norm(FourierSeries("A1", Space.HL2, 1.0, {})) == 0.0

    def test_holomorphic_weights(self):
        assert plancherel_norm(character_series("A1", (0,), Space.HL2, 1.0)) == pytest.approx(np.pi**1.5 * np.exp(0.5))

    def test_inner_product_is_conjugate_linear(self, rng):
        a = random_series("A1", [(0,), (1,)], rng)
        b = random_series("A1", [(0,), (1,)], rng)
        assert inner_product(a.scale(1j), b) == pytest.approx(-1j * inner_product(a, b))
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))

    def test_matches_haar_average(self, su2, rng):
        s = random_series("A1", [(0,), (1,), (2,)], rng)
        est = monte_carlo_mean(
            lambda r, size: np.abs(synthesize(s, su2, su2.haar_sample(r, size))) ** 2, MonteCarlo(samples=50_000, seed=8)
        )
        assert abs(est.value - plancherel_norm(s)) <= 5 * est.stderr
