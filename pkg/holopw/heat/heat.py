"""Casimir spectrum, heat multipliers and the SU(2) heat kernel."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from holopw.exceptions import HeatKernelTruncationError, SpaceMismatchError
from holopw.fourier.fourier import FourierSeries, Space, synthesize
from holopw.models.models import GroupModel, require_irreps, su2_character
from holopw.rootdata.rootdata import RootSystem, Weight, build_root_system
from holopw.utils.sampling import MonteCarlo, Residual, monte_carlo_mean

logger = logging.getLogger(__name__)

MAX_KERNEL_TERMS = 10_000


def energy_eigenvalue(rs: RootSystem, weight: Weight) -> float:
    """epsilon_lambda = |lambda+rho|^2 - |rho|^2; the Laplacian acts as -epsilon_lambda."""
    shifted = rs.shifted(weight)
    return float(shifted @ shifted - rs.rho @ rs.rho)


def heat_multiplier_apply(series: FourierSeries, t: float, with_prefactor: bool = False) -> FourierSeries:
    """Multiply the lambda-term by exp(-t epsilon_lambda / 2).

    With the prefactor 2^(dim/2) exp(-t |rho|^2 / 2) the result is the adjoint pairing map,
    landing in HL2 at parameter t.
    """
    if series.space != Space.L2K:
        raise SpaceMismatchError(f"heat multipliers act on L2K, got a {series.space.value} series")
    rs = build_root_system(series.rs_kind)

    def scale(key):
        return np.exp(-t * energy_eigenvalue(rs, rs.weight(key)) / 2.0)

    result = series.map_terms(scale)
    if not with_prefactor:
        return result
    prefactor = 2.0 ** (rs.dim_k / 2.0) * np.exp(-t * (rs.rho @ rs.rho) / 2.0)
    return FourierSeries(series.rs_kind, Space.HL2, t, {k: prefactor * v for k, v in result.terms.items()})


def energy_operator_apply(series: FourierSeries) -> FourierSeries:
    """E = -Laplacian/2, diagonal with eigenvalue epsilon_lambda/2."""
    rs = build_root_system(series.rs_kind)
    return series.map_terms(lambda key: energy_eigenvalue(rs, rs.weight(key)) / 2.0)


@dataclass(frozen=True)
class HeatKernelValue:
    value: np.ndarray
    bound: float
    terms: int


def heat_kernel_eval(model: GroupModel, t: float, x: np.ndarray, cutoff: float = 1e-14) -> HeatKernelValue:
    """p_t(x) = sum_n d_n exp(-t epsilon_n / 2) chi_n(x), truncated once d^2 exp(-t epsilon/2) < cutoff and falling."""
    require_irreps(model)
    if t <= 0:
        raise HeatKernelTruncationError("the heat kernel needs t > 0")
    rs = model.root_system
    x = np.asarray(x)
    total = np.zeros(x.shape[:-2])
    previous = np.inf
    for n in range(MAX_KERNEL_TERMS):
        d = n + 1
        damping = np.exp(-t * energy_eigenvalue(rs, rs.weight((n,))) / 2.0)
        bound = d * d * damping
        if bound < cutoff and bound < previous:
            logger.debug("heat kernel t=%g truncated after %d terms (bound %.2e)", t, n, bound)
            return HeatKernelValue(value=total, bound=float(bound), terms=n)
        total = total + d * damping * su2_character(n, x)
        previous = bound
    raise HeatKernelTruncationError(f"t={t} needs more than {MAX_KERNEL_TERMS} heat-kernel terms for cutoff {cutoff}")


def heat_convolution_residual(
    model: GroupModel,
    f: FourierSeries,
    t: float,
    samples: int,
    seed: int,
    points: int = 10,
    cutoff: float = 1e-14,
) -> Residual:
    """Worst of `points` random y of |int p_t(y x^-1) f(x) dx - (exp(t Laplacian/2) f)(y)|, by sigma-distance."""
    require_irreps(model)
    scheme = MonteCarlo(samples=samples, seed=seed)
    ys = model.haar_sample(scheme.rng(10**6), points)
    target = synthesize(heat_multiplier_apply(f, t), model, ys)
    worst: Optional[Residual] = None
    for k, y in enumerate(ys):

        def draw(rng: np.random.Generator, size: int, y=y) -> np.ndarray:
            x = model.haar_sample(rng, size)
            kernel = heat_kernel_eval(model, t, y @ np.conj(np.swapaxes(x, -1, -2)), cutoff).value
            return kernel * synthesize(f, model, x)

        est = monte_carlo_mean(draw, scheme.child(k))
        residual = Residual(lhs=complex(est.value), rhs=complex(target[k]), stderr=float(est.stderr))
        if worst is None or residual.sigma > worst.sigma:
            worst = residual
    return worst
