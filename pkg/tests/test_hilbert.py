import numpy as np
import pytest

from holopw.exceptions import QuadratureError, SpaceMismatchError
from holopw.fourier.fourier import FourierSeries, Space, character_series, plancherel_norm, random_series
from holopw.hilbert.hilbert import (
    Integral,
    Spectral,
    Transform,
    bks_bracket,
    bks_function,
    c_constant,
    constants_row,
    d_constant,
    naive_constant,
    transform_apply,
    transform_multiplier,
    verify_norm_identity,
)
from holopw.models.models import su2_character
from holopw.rootdata.rootdata import build_root_system, enumerate_dominant
from holopw.utils.sampling import MonteCarlo


def same_terms(a, b, rel=1e-12):
    assert a.space == b.space
    assert list(a.terms) == list(b.terms)
    for key in a.terms:
        assert np.allclose(a.terms[key], b.terms[key], rtol=rel, atol=0.0)


class TestConstants:

    def test_c_examples(self, a1):
        assert c_constant(a1, a1.weight((0,)), 1.0) == pytest.approx(np.pi**1.5 * np.exp(0.5), rel=1e-14)
        assert c_constant(a1, a1.weight((1,)), 1.0) == pytest.approx(np.pi**1.5 * np.exp(2.0), rel=1e-14)
        assert c_constant(a1, a1.weight((0,)), 2.0) == pytest.approx((2 * np.pi) ** 1.5 * np.exp(1.0), rel=1e-14)

    def test_d_example(self, a1):
        assert d_constant(a1, a1.weight((0,)), 1.0) == pytest.approx((2 * np.pi) ** 1.5 * np.exp(0.25), rel=1e-14)

    @pytest.mark.parametrize("kind", ["A1", "A2", "T2"])
    def test_ratio_identity(self, kind):
        rs = build_root_system(kind)
        for t in (0.3, 1.0, 2.5):
            for weight in enumerate_dominant(rs, 3):
                lhs = (4 * t * np.pi) ** (-rs.dim_k / 4) * d_constant(rs, weight, t)
                assert lhs == pytest.approx(np.sqrt(c_constant(rs, weight, t)), rel=1e-12)

    def test_d_over_c_is_theta_star(self, a2):
        weight = a2.weight((2, 1))
        ratio = d_constant(a2, weight, 0.7) / c_constant(a2, weight, 0.7)
        assert ratio == pytest.approx(transform_multiplier(a2, weight, 0.7, Transform.THETA_STAR), rel=1e-12)


class TestNormIdentities:

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_c_a1(self, a1, t):
        for weight in enumerate_dominant(a1, 6):
            assert verify_norm_identity(a1, weight, t, "C").rel_err <= 1e-8

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_d_a1(self, a1, t):
        for weight in enumerate_dominant(a1, 6):
            assert verify_norm_identity(a1, weight, t, "D").rel_err <= 1e-8

    def test_a2(self, a2):
        for weight in enumerate_dominant(a2, 2):
            assert verify_norm_identity(a2, weight, 1.0, "C").rel_err <= 1e-6
            assert verify_norm_identity(a2, weight, 1.0, "D").rel_err <= 1e-6

    def test_torus(self):
        t2 = build_root_system("T2")
        for weight in enumerate_dominant(t2, 2):
            assert verify_norm_identity(t2, weight, 1.0, "C").rel_err <= 1e-10

    @pytest.mark.parametrize("which", ["C", "D"])
    def test_high_rank_torus(self, which):
        t4 = build_root_system("T4")
        for weight in enumerate_dominant(t4, 1):
            check = verify_norm_identity(t4, weight, 0.5, which)
            assert check.rel_err <= 1e-10
            assert check.dynkin == weight.dynkin

    def test_unknown_identity(self, a1):
        with pytest.raises(QuadratureError):
            verify_norm_identity(a1, a1.weight((0,)), 1.0, "E")


class TestNaiveConstant:

    def test_trivial_weight_is_a_gaussian(self, a1):
        naive = naive_constant(a1, a1.weight((0,)), 1.0)
        assert naive.value == pytest.approx(np.pi**1.5, rel=1e-10)
        assert naive.stability <= 1e-10 * naive.value

    def test_stable_under_order_doubling(self, a1):
        for weight in enumerate_dominant(a1, 4):
            naive = naive_constant(a1, weight, 1.0)
            assert naive.value > 0
            assert naive.stability <= 1e-8 * naive.value

    def test_differs_from_c(self, a1):
        weight = a1.weight((2,))
        assert abs(naive_constant(a1, weight, 1.0).value - c_constant(a1, weight, 1.0)) > 1e-3

    def test_torus_agrees_with_c(self):
        t1 = build_root_system("T1")
        for weight in enumerate_dominant(t1, 2):
            assert naive_constant(t1, weight, 1.0).value == pytest.approx(c_constant(t1, weight, 1.0), rel=1e-11)

    def test_high_rank_torus_agrees_with_c(self):
        t5 = build_root_system("T5")
        weight = t5.weight((1, -1, 0, 2, 0))
        naive = naive_constant(t5, weight, 1.0)
        assert naive.value == pytest.approx(c_constant(t5, weight, 1.0), rel=1e-10)
        assert naive.stability <= 1e-10 * naive.value

    def test_constants_row(self, a1):
        row = constants_row(a1, a1.weight((1,)), 1.0)
        assert row.d == 2
        assert row.norm2_shift == pytest.approx(2.0)
        assert row.ratio_check < 1e-12
        assert row.C_tilde == pytest.approx(naive_constant(a1, a1.weight((1,)), 1.0).value)


class TestTransforms:

    def test_scaled_theta_is_h(self, rng):
        s = random_series("A1", [(0,), (1,), (2,)], rng, Space.HL2, 1.3)
        same_terms(transform_apply(s, Transform.SCALED_THETA), transform_apply(s, Transform.H))

    def test_scaled_theta_star_inverts_h(self, rng):
        s = random_series("A2", [(0, 0), (1, 0), (1, 1)], rng, Space.HL2, 0.8)
        back = transform_apply(transform_apply(s, Transform.H), Transform.SCALED_THETA_STAR)
        same_terms(back, s)

    def test_h_inverse(self, rng):
        s = random_series("A1", [(0,), (3,)], rng, Space.HL2, 2.0)
        same_terms(transform_apply(transform_apply(s, Transform.H), Transform.H_INVERSE), s)

    def test_h_preserves_norm(self, rng):
        s = random_series("A1", [(0,), (1,), (2,)], rng, Space.HL2, 1.0)
        assert plancherel_norm(transform_apply(s, "h")) == pytest.approx(plancherel_norm(s), rel=1e-12)

    def test_htilde_on_naive_space(self, a1):
        s = FourierSeries("A1", Space.HL2_NAIVE, 1.0, {(0,): np.eye(1)})
        out = transform_apply(s, Transform.HTILDE)
        assert out.space == Space.L2K
        assert out.terms[(0,)][0, 0] == pytest.approx(np.sqrt(np.pi**1.5), rel=1e-10)

    def test_domain_is_checked(self):
        with pytest.raises(SpaceMismatchError):
            transform_apply(character_series("A1", (1,)), Transform.H)
        with pytest.raises(SpaceMismatchError):
            transform_apply(character_series("A1", (1,), Space.HL2), Transform.THETA_STAR)


class TestPairing:

    def test_spectral_constant(self, a1):
        phi = character_series("A1", (0,), Space.HL2, 1.0)
        value = bks_bracket(phi, character_series("A1", (0,)), Spectral()).value
        assert value == pytest.approx(d_constant(a1, a1.weight((0,)), 1.0), rel=1e-14)

    def test_orthogonal_labels(self):
        phi = character_series("A1", (1,), Space.HL2, 1.0)
        assert bks_bracket(phi, character_series("A1", (2,))).value == 0

    def test_conjugate_linear_in_phi(self, rng):
        phi = random_series("A1", [(0,), (1,)], rng, Space.HL2, 1.0)
        F = random_series("A1", [(0,), (1,)], rng)
        base = bks_bracket(phi, F).value
        assert bks_bracket(phi.scale(1j), F).value == pytest.approx(-1j * base)
        assert bks_bracket(phi, F.scale(1j)).value == pytest.approx(1j * base)

    def test_needs_matching_spaces(self):
        with pytest.raises(SpaceMismatchError):
            bks_bracket(character_series("A1", (0,)), character_series("A1", (0,)))

    def test_function_is_a_multiple_of_the_character(self, su2, a1, rng):
        for n in range(3):
            phi = character_series("A1", (n,), Space.HL2, 1.0)
            F_phi = bks_function(phi, su2, order=40)
            x = su2.haar_sample(rng, 20)
            D = d_constant(a1, a1.weight((n,)), 1.0)
            assert np.max(np.abs(F_phi(x) - D * su2_character(n, x))) <= 1e-5 * D

    @pytest.mark.parametrize("shift", [0, 1])
    @pytest.mark.parametrize("t", [0.5, 1.0])
    @pytest.mark.parametrize("n", range(5))
    def test_spectral_matches_integral(self, su2, a1, n, t, shift):
        phi = character_series("A1", (n,), Space.HL2, t)
        F = character_series("A1", (n + shift,))
        spectral = bks_bracket(phi, F, Spectral())
        integral = bks_bracket(phi, F, Integral(su2, MonteCarlo(samples=20_000, seed=12), order=40))
        D = d_constant(a1, a1.weight((n,)), t)
        assert abs(integral.value - spectral.value) <= 5 * integral.stderr + 1e-5 * D
