"""Verification suites. Each suite expands into named checks that run in a parallel map."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from holopw.chars.chars import (
    CartanPoint,
    eta,
    eta_det_oracle,
    j_function,
    kirillov_residual,
    weyl_char_holo,
)
from holopw.exceptions import CapabilityError, ConfigError, HolopwError
from holopw.fourier.fourier import (
    Space,
    bilinear_pairing,
    character_series,
    convolve,
    direct_convolution,
    fourier_coeff,
    plancherel_norm,
    random_series,
    series_from_function,
    synthesize,
)
from holopw.heat.heat import energy_eigenvalue, heat_convolution_residual, heat_kernel_eval, heat_multiplier_apply
from holopw.hilbert.hilbert import (
    Integral,
    Spectral,
    Transform,
    bks_bracket,
    bks_function,
    c_constant,
    d_constant,
    naive_constant,
    transform_apply,
    verify_norm_identity,
)
from holopw.models.models import GroupModel, build_group_model, build_irrep, rep_matrix_at, su2_character
from holopw.quadrature.quadrature import (
    build_chamber_quadrature,
    calibrate_flag_volume,
    calibrated_estimate,
    cartesian_oracle_integrate,
    integrate_invariant,
)
from holopw.rootdata.rootdata import RootSystem, Weight, build_root_system, dimension, enumerate_dominant
from holopw.schemas.schemas import CheckResult, Report, RunConfig
from holopw.utils.sampling import (
    ClosedFormA1,
    GridA1,
    MonteCarlo,
    Residual,
    family_band,
    monte_carlo_mean,
    stream_key,
)

logger = logging.getLogger(__name__)

IRREP_SUITES = ("fourier", "convolution", "bks", "heat")
A2_TOLERANCE_FLOOR = 1e-6
KIRILLOV_POINTS = 20
ETA_POINTS = 20
KERNEL_POINTS = 20


@dataclass
class Context:
    config: RunConfig
    rs: RootSystem
    model: Optional[GroupModel]
    family_size: int = 1

    @property
    def band(self) -> float:
        """Per-check sigma band; config.sigma_band bounds the false-failure rate of the whole report."""
        return family_band(self.config.sigma_band, self.family_size)

    @property
    def tolerance(self) -> float:
        if self.rs.kind == "A2":
            return max(self.config.tolerance, A2_TOLERANCE_FLOOR)
        return self.config.tolerance

    def scheme(self, check_id: str, samples: Optional[int] = None) -> MonteCarlo:
        return MonteCarlo(samples=samples or self.config.mc_samples, seed=self.config.seed, stream=(stream_key(check_id),))

    def rng(self, check_id: str) -> np.random.Generator:
        return self.scheme(check_id).rng(0xFFFF)

    def weights(self, cap: Optional[int] = None) -> List[Weight]:
        level = self.config.max_level if cap is None else min(self.config.max_level, cap)
        return enumerate_dominant(self.rs, level)


@dataclass
class Check:
    check_id: str
    run: Callable[[], CheckResult]


def label(weight: Weight) -> str:
    return "(" + ",".join(str(v) for v in weight.dynkin) + ")"


def deterministic(check_id: str, residual: Residual, tolerance: float) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        lhs=float(np.real(residual.lhs)),
        rhs=float(np.real(residual.rhs)),
        abs_err=residual.abs_err,
        rel_err=residual.rel_err,
        passed=bool(residual.rel_err <= tolerance),
    )


def statistical(check_id: str, residual: Residual, band: float, floor: float = 0.0) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        lhs=float(np.real(residual.lhs)),
        rhs=float(np.real(residual.rhs)),
        abs_err=residual.abs_err,
        rel_err=residual.rel_err,
        sigma=residual.sigma if np.isfinite(residual.sigma) else None,
        statistical=True,
        passed=bool(residual.abs_err <= band * residual.stderr or residual.abs_err <= floor),
    )


def skipped(check_id: str, detail: str) -> CheckResult:
    return CheckResult(check_id=check_id, passed=True, skipped=True, detail=detail)


def chamber_point(ctx: Context, rng: np.random.Generator, high: float = 1.5) -> CartanPoint:
    return CartanPoint.from_chamber(ctx.rs, rng.uniform(0.05, high, ctx.rs.rank))


def kirillov_point(ctx: Context, rng: np.random.Generator, weight: Weight, half: bool) -> CartanPoint:
    """Chamber point scaled by 1/|mu|, mu the orbit point of the check, so |<mu, Ad_y Y>| <= |rho|."""
    mu = np.linalg.norm(ctx.rs.shifted(weight)) * (1.0 if half else 2.0)
    return chamber_point(ctx, rng, high=0.5).scaled(1.0 / mu)


# lemma33 / lemma64: norm identities by chamber quadrature


def lemma33(ctx: Context) -> List[Check]:
    checks = []
    for weight in ctx.weights():
        cid = f"lemma33/C/t={ctx.config.t:g}/{label(weight)}"

        def run(weight=weight, cid=cid):
            res = verify_norm_identity(ctx.rs, weight, ctx.config.t, "C", ctx.config.quad_order)
            return deterministic(cid, Residual(res.quadrature, res.closed_form), ctx.tolerance)

        checks.append(Check(cid, run))
    return checks


def lemma64(ctx: Context) -> List[Check]:
    checks = []
    for weight in ctx.weights():
        cid = f"lemma64/D/t={ctx.config.t:g}/{label(weight)}"

        def run(weight=weight, cid=cid):
            res = verify_norm_identity(ctx.rs, weight, ctx.config.t, "D", ctx.config.quad_order)
            return deterministic(cid, Residual(res.quadrature, res.closed_form), ctx.tolerance)

        checks.append(Check(cid, run))
    if ctx.rs.kind != "A1":
        return checks
    for weight in ctx.weights(cap=2):
        cid = f"lemma64/F-phi/t={ctx.config.t:g}/{label(weight)}"

        def run_function(weight=weight, cid=cid):
            phi = character_series("A1", weight.dynkin, Space.HL2, ctx.config.t)
            F_phi = bks_function(phi, ctx.model, order=40)
            xs = ctx.model.haar_sample(ctx.rng(cid), KERNEL_POINTS)
            D = d_constant(ctx.rs, weight, ctx.config.t)
            lhs = F_phi(xs)
            rhs = D * su2_character(weight.dynkin[0], xs)
            worst = int(np.argmax(np.abs(lhs - rhs)))
            err = float(np.max(np.abs(lhs - rhs)))
            return CheckResult(
                check_id=cid,
                lhs=float(lhs[worst].real),
                rhs=float(rhs[worst]),
                abs_err=err,
                rel_err=err / D,
                passed=bool(err / D <= max(ctx.tolerance, 1e-6)),
            )

        checks.append(Check(cid, run_function))
    return checks


# kirillov: character formula at exp(2iY) and exp(iY)


def kirillov(ctx: Context) -> List[Check]:
    if ctx.model is None:
        return [Check("kirillov", lambda: skipped("kirillov", f"no matrix model for {ctx.rs.kind}"))]
    checks = []
    for weight in ctx.weights():
        for half in (False, True):
            tag = "half" if half else "full"
            if ctx.rs.kind == "A1":
                cid = f"kirillov/{tag}/closed-form/{label(weight)}"

                def run(weight=weight, half=half, cid=cid):
                    rng = ctx.rng(cid)
                    results = [
                        kirillov_residual(ctx.model, weight, chamber_point(ctx, rng), ClosedFormA1(), half_angle=half)
                        for _ in range(KIRILLOV_POINTS)
                    ]
                    worst = max(results, key=lambda r: r.rel_err)
                    return deterministic(cid, worst, ctx.tolerance)

            else:
                cid = f"kirillov/{tag}/monte-carlo/{label(weight)}"

                def run(weight=weight, half=half, cid=cid):
                    Y = kirillov_point(ctx, ctx.rng(cid), weight, half)
                    res = kirillov_residual(ctx.model, weight, Y, ctx.scheme(cid), half_angle=half)
                    return statistical(cid, res, ctx.band)

            checks.append(Check(cid, run))
    return checks


# eta: product form, determinant oracle and the half-angle identity for j


def eta_suite(ctx: Context) -> List[Check]:
    checks = []
    if ctx.model is not None:
        cid = "eta/determinant-oracle"

        def run_oracle():
            X = ctx.model.random_algebra_element(ctx.rng(cid), 1.0, ETA_POINTS)
            lhs = eta(ctx.rs, ctx.model.cartan_representative(X))
            rhs = eta_det_oracle(ctx.model, X)
            worst = int(np.argmax(np.abs(lhs - rhs) / rhs))
            return deterministic(cid, Residual(lhs[worst], rhs[worst]), ctx.config.tolerance)

        checks.append(Check(cid, run_oracle))
    cid_j = "eta/j-half-angle"

    def run_j():
        Y = CartanPoint(ctx.rng(cid_j).normal(size=(ETA_POINTS, ctx.rs.rank)))
        lhs = j_function(ctx.rs, 1j * Y.coords).real
        rhs = eta(ctx.rs, Y.scaled(0.5))
        worst = int(np.argmax(np.abs(lhs - rhs)))
        return deterministic(cid_j, Residual(lhs[worst], rhs[worst]), ctx.config.tolerance)

    checks.append(Check(cid_j, run_j))
    cid_w = "eta/weyl-invariance"

    def run_weyl():
        Y = CartanPoint(ctx.rng(cid_w).normal(size=ctx.rs.rank))
        base = eta(ctx.rs, Y)
        moved = [eta(ctx.rs, CartanPoint(w @ Y.coords)) for w in ctx.rs.weyl_elements]
        moved.append(eta(ctx.rs, Y.scaled(-1.0)))
        worst = max(moved, key=lambda v: abs(v - base))
        return deterministic(cid_w, Residual(float(worst), float(base)), ctx.config.tolerance)

    checks.append(Check(cid_w, run_weyl))
    return checks


# weylint: chamber reduction against the Cartesian oracle


def _test_functions(ctx: Context):
    rs, model = ctx.rs, ctx.model
    weights = ctx.weights(cap=1)
    top_weight = weights[-1]
    d = dimension(rs, top_weight)
    specs = {
        "gauss": (lambda Y: np.ones(Y.coords.shape[:-1])),
        "eta": (lambda Y: eta(rs, Y)),
        "chi": (lambda Y: weyl_char_holo(rs, top_weight, Y.scaled(0.5)) / d),
        "eta-chi": (lambda Y: eta(rs, Y.scaled(0.5)) * weyl_char_holo(rs, top_weight, Y.scaled(0.5)) / d),
    }
    functions = {}
    for name, g in specs.items():
        def on_cartan(Y, g=g):
            return g(Y) * np.exp(-0.25 * Y.norm2)

        def on_algebra(X, on_cartan=on_cartan):
            return on_cartan(model.cartan_representative(X))

        functions[name] = (on_cartan, on_algebra)
    return functions


def weylint(ctx: Context) -> List[Check]:
    if ctx.model is None:
        return [Check("weylint", lambda: skipped("weylint", f"no matrix model for {ctx.rs.kind}"))]
    checks = []
    cid_v = "weylint/flag-volume/closed-form"

    def run_volume():
        value = calibrate_flag_volume(ctx.rs, ctx.model, order=ctx.config.quad_order)
        return deterministic(cid_v, Residual(value, ctx.rs.flag_volume), ctx.tolerance)

    checks.append(Check(cid_v, run_volume))
    cid_mc = "weylint/flag-volume/monte-carlo"

    def run_volume_mc():
        est = calibrated_estimate(ctx.rs, ctx.model, ctx.scheme(cid_mc), ctx.config.quad_order)
        return statistical(cid_mc, Residual(est.value, ctx.rs.flag_volume, est.stderr), ctx.band)

    checks.append(Check(cid_mc, run_volume_mc))
    q = build_chamber_quadrature(ctx.rs, 1.0, ctx.config.quad_order, 2.0)
    for name, (on_cartan, on_algebra) in _test_functions(ctx).items():
        cid = f"weylint/cartesian/{name}"

        def run(on_cartan=on_cartan, on_algebra=on_algebra, cid=cid):
            chamber = integrate_invariant(q, lambda Y: on_cartan(Y) * np.exp(-Y.norm2))
            oracle = cartesian_oracle_integrate(ctx.model, on_algebra, 1.0, ctx.scheme(cid))
            return statistical(cid, Residual(oracle.value, chamber, oracle.stderr), ctx.band)

        checks.append(Check(cid, run))
        if ctx.rs.kind == "A1":
            cid_g = f"weylint/grid/{name}"

            def run_grid(on_cartan=on_cartan, on_algebra=on_algebra, cid=cid_g):
                chamber = integrate_invariant(q, lambda Y: on_cartan(Y) * np.exp(-Y.norm2))
                oracle = cartesian_oracle_integrate(ctx.model, on_algebra, 1.0, GridA1(48))
                return deterministic(cid, Residual(oracle.value, chamber), max(ctx.tolerance, 1e-8))

            checks.append(Check(cid_g, run_grid))
    return checks


# fourier: coefficients, Plancherel on L2(K), synthesis round trip (SU(2) only)


def fourier_suite(ctx: Context) -> List[Check]:
    checks = []
    model = ctx.model
    for weight in ctx.weights(cap=2):
        (n,) = weight.dynkin
        d = n + 1
        cid = f"fourier/coeff/chi{label(weight)}"

        def run(n=n, d=d, cid=cid):
            est = fourier_coeff(model, lambda x: su2_character(n, x), (n,), ctx.scheme(cid))
            target = np.eye(d) / d
            k = np.unravel_index(np.argmax(np.abs(est.value - target) / np.maximum(est.stderr, 1e-300)), target.shape)
            return statistical(cid, Residual(est.value[k], target[k], float(est.stderr[k])), ctx.band)

        checks.append(Check(cid, run))
        cid_o = f"fourier/orthogonal/chi{label(weight)}"

        def run_orth(n=n, cid=cid_o):
            m = n + 1
            est = fourier_coeff(model, lambda x: su2_character(n, x), (m,), ctx.scheme(cid))
            k = np.unravel_index(np.argmax(np.abs(est.value) / np.maximum(est.stderr, 1e-300)), est.value.shape)
            return statistical(cid, Residual(est.value[k], 0.0, float(est.stderr[k])), ctx.band)

        checks.append(Check(cid_o, run_orth))
        cid_n = f"fourier/norm/chi{label(weight)}"

        def run_norm(n=n, weight=weight, cid=cid_n):
            est = monte_carlo_mean(lambda rng, size: su2_character(n, model.haar_sample(rng, size)) ** 2, ctx.scheme(cid))
            exact = plancherel_norm(character_series("A1", weight.dynkin))
            return statistical(cid, Residual(est.value, exact, est.stderr), ctx.band)

        checks.append(Check(cid_n, run_norm))
    cid_r = "fourier/round-trip"

    def run_round_trip():
        level = min(ctx.config.max_level, 2)
        rng = ctx.rng(cid_r)
        source = random_series("A1", [(k,) for k in range(level + 1)], rng)
        recovered, errors = series_from_function(model, lambda x: synthesize(source, model, x), level, ctx.scheme(cid_r))
        xs = model.haar_sample(rng, 10)
        exact = synthesize(source, model, xs)
        approx = synthesize(recovered, model, xs)
        bound = _synthesis_error(errors, model, xs)
        k = int(np.argmax(np.abs(exact - approx) / bound))
        return statistical(cid_r, Residual(approx[k], exact[k], float(bound[k])), ctx.band)

    checks.append(Check(cid_r, run_round_trip))
    return checks


def _synthesis_error(errors: Dict, model: GroupModel, xs: np.ndarray) -> np.ndarray:
    """Triangle bound on the standard error of a synthesized value from coefficient errors."""
    total = np.zeros(len(xs))
    for (n,), sigma in errors.items():
        T = rep_matrix_at(build_irrep(n), xs)
        total = total + (n + 1) * np.einsum("ij,kji->k", sigma, np.abs(T))
    return total


# convolution: Hilbert-algebra homomorphism at coefficient level (SU(2) only)


def convolution_suite(ctx: Context) -> List[Check]:
    checks = []
    model = ctx.model
    for weight in ctx.weights(cap=1):
        (n,) = weight.dynkin
        cid = f"convolution/chi-chi/{label(weight)}"

        def run(n=n, weight=weight, cid=cid):
            q = model.haar_sample(ctx.rng(cid))

            def chi(x, n=n):
                return su2_character(n, x)

            est = direct_convolution(model, chi, chi, q, ctx.scheme(cid))
            series = convolve(character_series("A1", weight.dynkin), character_series("A1", weight.dynkin))
            target = synthesize(series, model, q)
            return statistical(cid, Residual(est.value, target, float(est.stderr)), ctx.band)

        checks.append(Check(cid, run))
    cid_r = "convolution/random-series"

    def run_random():
        rng = ctx.rng(cid_r)
        levels = [(k,) for k in range(min(ctx.config.max_level, 1) + 1)]
        a, b = random_series("A1", levels, rng), random_series("A1", levels, rng)
        q = model.haar_sample(rng)
        est = direct_convolution(
            model, lambda x: synthesize(a, model, x), lambda x: synthesize(b, model, x), q, ctx.scheme(cid_r)
        )
        target = synthesize(convolve(a, b), model, q)
        return statistical(cid_r, Residual(est.value, target, float(est.stderr)), ctx.band)

    checks.append(Check(cid_r, run_random))
    cid_p = "convolution/pairing-at-identity"

    def run_pairing():
        rng = ctx.rng(cid_p)
        levels = [(k,) for k in range(min(ctx.config.max_level, 2) + 1)]
        f, h = random_series("A1", levels, rng), random_series("A1", levels, rng)
        at_identity = synthesize(convolve(f, h), model, np.eye(2))
        return deterministic(cid_p, Residual(at_identity, bilinear_pairing(f, h)), ctx.config.tolerance)

    checks.append(Check(cid_p, run_pairing))
    return checks


# plancherel: holomorphic norms against quadrature; L2(K) norms against Haar sampling


def plancherel(ctx: Context) -> List[Check]:
    checks = []
    t = ctx.config.t
    for weight in ctx.weights():
        cid = f"plancherel/HL2/{label(weight)}"

        def run(weight=weight, cid=cid):
            norm = plancherel_norm(character_series(ctx.rs.kind, weight.dynkin, Space.HL2, t))
            res = verify_norm_identity(ctx.rs, weight, t, "C", ctx.config.quad_order)
            return deterministic(cid, Residual(norm, res.quadrature), ctx.tolerance)

        checks.append(Check(cid, run))
        cid_n = f"plancherel/naive-stability/{label(weight)}"

        def run_naive(weight=weight, cid=cid_n):
            naive = naive_constant(ctx.rs, weight, t, ctx.config.quad_order)
            return deterministic(cid, Residual(naive.value, naive.value + naive.stability), ctx.tolerance)

        checks.append(Check(cid_n, run_naive))
    if ctx.rs.is_torus:
        for weight in ctx.weights(cap=1):
            cid = f"plancherel/naive-equals-C/{label(weight)}"

            def run_torus(weight=weight, cid=cid):
                naive = naive_constant(ctx.rs, weight, t, ctx.config.quad_order)
                return deterministic(cid, Residual(naive.value, c_constant(ctx.rs, weight, t)), ctx.tolerance)

            checks.append(Check(cid, run_torus))
    if ctx.rs.kind == "A1":
        cid_l = "plancherel/L2K/random-series"

        def run_l2():
            rng = ctx.rng(cid_l)
            series = random_series("A1", [(k,) for k in range(min(ctx.config.max_level, 2) + 1)], rng)
            est = monte_carlo_mean(
                lambda r, size: np.abs(synthesize(series, ctx.model, ctx.model.haar_sample(r, size))) ** 2,
                ctx.scheme(cid_l),
            )
            return statistical(cid_l, Residual(est.value, plancherel_norm(series), est.stderr), ctx.band)

        checks.append(Check(cid_l, run_l2))
    return checks


# bks: spectral pairing against the double integral (SU(2) only)


def bks(ctx: Context) -> List[Check]:
    checks = []
    t = ctx.config.t
    for weight in ctx.weights(cap=2):
        for other in ctx.weights(cap=2):
            if other.dynkin[0] not in (weight.dynkin[0], weight.dynkin[0] + 1):
                continue
            cid = f"bks/spectral-vs-integral/{label(weight)}x{label(other)}"

            def run(weight=weight, other=other, cid=cid):
                phi = character_series("A1", weight.dynkin, Space.HL2, t)
                F = character_series("A1", other.dynkin)
                spectral = bks_bracket(phi, F, Spectral())
                integral = bks_bracket(phi, F, Integral(ctx.model, ctx.scheme(cid)))
                residual = Residual(integral.value, spectral.value, float(integral.stderr))
                return statistical(cid, residual, ctx.band, floor=1e-7 * d_constant(ctx.rs, weight, t))

            checks.append(Check(cid, run))
    cid_s = "bks/spectral-constant"

    def run_constant():
        weight = ctx.rs.weight((0,))
        phi = character_series("A1", (0,), Space.HL2, t)
        value = bks_bracket(phi, character_series("A1", (0,)), Spectral()).value
        return deterministic(cid_s, Residual(value, d_constant(ctx.rs, weight, t)), ctx.config.tolerance)

    checks.append(Check(cid_s, run_constant))
    return checks


# heat: multiplier form of the adjoint map and the heat-kernel convolution (SU(2) only)


def heat(ctx: Context) -> List[Check]:
    checks = []
    t = ctx.config.t
    for weight in ctx.weights():
        cid = f"heat/energy/{label(weight)}"

        def run_energy(weight=weight, cid=cid):
            value = energy_eigenvalue(ctx.rs, weight)
            ok = value == 0 if all(v == 0 for v in weight.dynkin) else value > 0
            return CheckResult(check_id=cid, lhs=value, rhs=0.0, abs_err=abs(value), passed=bool(ok))

        checks.append(Check(cid, run_energy))
    cid_m = "heat/multiplier-vs-theta-star"

    def run_multiplier():
        s = random_series("A1", [(k,) for k in range(ctx.config.max_level + 1)], ctx.rng(cid_m), Space.L2K, t)
        lhs = heat_multiplier_apply(s, t, with_prefactor=True)
        rhs = transform_apply(s, Transform.THETA_STAR)
        return _termwise(cid_m, lhs, rhs, ctx.config.tolerance)

    checks.append(Check(cid_m, run_multiplier))
    cid_g = "heat/semigroup"

    def run_semigroup():
        s = random_series("A1", [(k,) for k in range(ctx.config.max_level + 1)], ctx.rng(cid_g))
        lhs = heat_multiplier_apply(heat_multiplier_apply(s, 0.5 * t), 0.25 * t)
        rhs = heat_multiplier_apply(s, 0.75 * t)
        return _termwise(cid_g, lhs, rhs, ctx.config.tolerance)

    checks.append(Check(cid_g, run_semigroup))
    cid_k = "heat/kernel-truncation"

    def run_kernel():
        coarse = heat_kernel_eval(ctx.model, t, np.eye(2), cutoff=1e-12).value
        fine = heat_kernel_eval(ctx.model, t, np.eye(2), cutoff=1e-13).value
        return deterministic(cid_k, Residual(float(coarse), float(fine)), max(ctx.config.tolerance, 1e-10))

    checks.append(Check(cid_k, run_kernel))
    for name, levels in (("chi(1)", None), ("random", min(ctx.config.max_level, 2))):
        cid = f"heat/convolution/{name}"

        def run_conv(levels=levels, cid=cid):
            rng = ctx.rng(cid)
            if levels is None:
                f = character_series("A1", (1,))
            else:
                f = random_series("A1", [(k,) for k in range(levels + 1)], rng)
            seed = int(rng.integers(0, 2**63))
            res = heat_convolution_residual(ctx.model, f, t, ctx.config.mc_samples, seed)
            return statistical(cid, res, ctx.band)

        checks.append(Check(cid, run_conv))
    return checks


def _termwise(cid: str, lhs, rhs, tolerance: float) -> CheckResult:
    worst = Residual(0.0, 0.0)
    for key in rhs.terms:
        a, b = lhs.terms[key], rhs.terms[key]
        k = np.unravel_index(np.argmax(np.abs(a - b)), a.shape)
        candidate = Residual(complex(a[k]), complex(b[k]))
        if candidate.rel_err > worst.rel_err:
            worst = candidate
    return deterministic(cid, worst, tolerance)


# unitarity: H, Theta, Theta* and their scalings on truncated series


def unitarity(ctx: Context) -> List[Check]:
    checks = []
    t = ctx.config.t
    m = ctx.rs.dim_k
    for weight in ctx.weights():
        cid = f"unitarity/ratio/{label(weight)}"

        def run_ratio(weight=weight, cid=cid):
            lhs = (4.0 * t * np.pi) ** (-m / 4.0) * d_constant(ctx.rs, weight, t)
            return deterministic(cid, Residual(lhs, np.sqrt(c_constant(ctx.rs, weight, t))), 1e-12)

        checks.append(Check(cid, run_ratio))
    levels = [w.dynkin for w in ctx.weights(cap=2)]
    cid_h = "unitarity/H-preserves-norm"

    def run_norm():
        s = random_series(ctx.rs.kind, levels, ctx.rng(cid_h), Space.HL2, t)
        return deterministic(cid_h, Residual(plancherel_norm(transform_apply(s, Transform.H)), plancherel_norm(s)), 1e-12)

    checks.append(Check(cid_h, run_norm))
    cid_i = "unitarity/scaled-theta-star-inverts-H"

    def run_inverse():
        s = random_series(ctx.rs.kind, levels, ctx.rng(cid_i), Space.HL2, t)
        back = transform_apply(transform_apply(s, Transform.H), Transform.SCALED_THETA_STAR)
        return _termwise(cid_i, back, s, 1e-12)

    checks.append(Check(cid_i, run_inverse))
    cid_s = "unitarity/scaled-theta-equals-H"

    def run_scaled():
        s = random_series(ctx.rs.kind, levels, ctx.rng(cid_s), Space.HL2, t)
        return _termwise(cid_s, transform_apply(s, Transform.SCALED_THETA), transform_apply(s, Transform.H), 1e-12)

    checks.append(Check(cid_s, run_scaled))
    return checks


SUITES: Dict[str, Callable[[Context], List[Check]]] = {
    "lemma33": lemma33,
    "lemma64": lemma64,
    "kirillov": kirillov,
    "eta": eta_suite,
    "weylint": weylint,
    "fourier": fourier_suite,
    "convolution": convolution_suite,
    "plancherel": plancherel,
    "bks": bks,
    "heat": heat,
    "unitarity": unitarity,
}


def _guarded(check: Check) -> CheckResult:
    try:
        return check.run()
    except HolopwError as exc:
        logger.warning("check %s failed: %s", check.check_id, exc.detail)
        return CheckResult(check_id=check.check_id, passed=False, detail=exc.detail)
    except Exception as exc:
        detail = f"{type(exc).__name__}: {exc}"
        logger.warning("check %s raised %s", check.check_id, detail)
        return CheckResult(check_id=check.check_id, passed=False, detail=detail)


def _model_for(rs: RootSystem) -> Optional[GroupModel]:
    return None if rs.is_torus else build_group_model(rs.kind)


def run_verification_suite(config: RunConfig, suite: str) -> Report:
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; expected one of {', '.join(list(SUITES) + ['all'])}")
    rs = build_root_system(config.group)
    ctx = Context(config=config, rs=rs, model=_model_for(rs))
    names = list(SUITES) if suite == "all" else [suite]
    checks: List[Check] = []
    for name in names:
        if name in IRREP_SUITES and rs.kind != "A1":
            detail = f"irrep matrices unavailable for {rs.kind}"
            if suite != "all":
                raise CapabilityError(detail)
            checks.append(Check(name, lambda name=name, detail=detail: skipped(name, detail)))
            continue
        checks.extend(SUITES[name](ctx))
    ctx.family_size = len(checks)
    logger.info("suite %s on %s: %d checks, sigma band %.2f per check", suite, rs.kind, len(checks), ctx.band)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(_guarded, checks))
    results.sort(key=lambda r: r.check_id)
    failed = [r.check_id for r in results if not r.passed]
    for check_id in failed:
        logger.warning("failed: %s", check_id)
    return Report(
        suite=suite,
        group=rs.kind,
        t=config.t,
        seed=config.seed,
        passed=not failed,
        check_band=ctx.band,
        checks=results,
    )
