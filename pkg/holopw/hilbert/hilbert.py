"""Constants relating L2(K) and the holomorphic spaces, and the operators built from them."""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np

from holopw.chars.chars import CartanPoint, eta, weyl_char_holo
from holopw.exceptions import KindMismatchError, QuadratureError, SchemeMismatchError, SpaceMismatchError
from holopw.fourier.fourier import FourierSeries, Space, inner_product, synthesize
from holopw.models.models import GroupModel, build_irrep, holomorphic_factor, rep_matrix, require_irreps, su2_log
from holopw.quadrature.quadrature import build_chamber_quadrature, default_order, integrate_invariant, spherical_grid
from holopw.rootdata.rootdata import RootSystem, Weight, build_root_system, dimension
from holopw.utils.sampling import Estimate, MonteCarlo, monte_carlo_mean

logger = logging.getLogger(__name__)


def _shift_norm2(rs: RootSystem, weight: Weight) -> float:
    shifted = rs.shifted(weight)
    return float(shifted @ shifted)


def _circle_factors(weight: Weight):
    """A torus weight as rank-one weights; Gaussian integrals over a torus algebra split coordinatewise."""
    circle = build_root_system("T1")
    return [(circle, circle.weight((v,))) for v in weight.dynkin]


def c_constant(rs: RootSystem, weight: Weight, t: float) -> float:
    """(t pi)^(dim/2) exp(t |lambda+rho|^2)."""
    return float((t * np.pi) ** (rs.dim_k / 2.0) * np.exp(t * _shift_norm2(rs, weight)))


def d_constant(rs: RootSystem, weight: Weight, t: float) -> float:
    """(2 t pi)^(dim/2) exp(t |lambda+rho|^2 / 2)."""
    return float((2.0 * t * np.pi) ** (rs.dim_k / 2.0) * np.exp(t * _shift_norm2(rs, weight) / 2.0))


@dataclass(frozen=True)
class NormIdentityCheck:
    which: str
    dynkin: Tuple[int, ...]
    t: float
    quadrature: float
    closed_form: float

    @property
    def rel_err(self) -> float:
        return abs(self.quadrature - self.closed_form) / self.closed_form


def _c_integrand(rs: RootSystem, weight: Weight, t: float, d: int, with_eta: bool = True):
    def f(Y):
        value = weyl_char_holo(rs, weight, Y.scaled(2.0)) * np.exp(-Y.norm2 / t) / d
        return value * eta(rs, Y) if with_eta else value

    return f


def verify_norm_identity(
    rs: RootSystem, weight: Weight, t: float, which: str = "C", order: Optional[int] = None, model: Optional[GroupModel] = None
) -> NormIdentityCheck:
    """Chamber quadrature of the volume-free norm integrals against the closed forms.

    C: (1/d) int chi^C(exp 2iY) eta(Y) exp(-|Y|^2/t) dY
    D: (1/d) int chi^C(exp iY) eta(Y/2) exp(-|Y|^2/2t) dY
    """
    if model is not None and model.root_system is not rs:
        raise KindMismatchError(f"model {model.kind} does not realize {rs.kind}")
    if rs.is_torus and rs.rank > 1:
        parts = [verify_norm_identity(circle, w, t, which, order) for circle, w in _circle_factors(weight)]
        return NormIdentityCheck(
            which=which,
            dynkin=weight.dynkin,
            t=t,
            quadrature=float(np.prod([p.quadrature for p in parts])),
            closed_form=float(np.prod([p.closed_form for p in parts])),
        )
    order = order or default_order(rs)
    d = dimension(rs, weight)
    shift = np.sqrt(_shift_norm2(rs, weight))
    if which == "C":
        q = build_chamber_quadrature(rs, t, order, 2.0 * shift)
        value = integrate_invariant(q, _c_integrand(rs, weight, t, d))
        closed = c_constant(rs, weight, t)
    elif which == "D":
        q = build_chamber_quadrature(rs, 2.0 * t, order, shift)

        def f(Y):
            return weyl_char_holo(rs, weight, Y) * eta(rs, Y.scaled(0.5)) * np.exp(-Y.norm2 / (2.0 * t)) / d

        value = integrate_invariant(q, f)
        closed = d_constant(rs, weight, t)
    else:
        raise QuadratureError(f"unknown norm identity {which!r}; expected C or D")
    logger.debug("norm identity %s %s t=%g: %.15g vs %.15g", which, weight.dynkin, t, value, closed)
    return NormIdentityCheck(which=which, dynkin=weight.dynkin, t=t, quadrature=value, closed_form=closed)


@dataclass(frozen=True)
class NaiveConstant:
    value: float
    stability: float


@lru_cache(maxsize=256)
def _naive_cached(kind: str, dynkin: Tuple[int, ...], t: float, order: int) -> NaiveConstant:
    rs = build_root_system(kind)
    if rs.is_torus and rs.rank > 1:
        parts = [_naive_cached("T1", (v,), t, order) for v in dynkin]
        value = float(np.prod([p.value for p in parts]))
        return NaiveConstant(value=value, stability=value * sum(p.stability / p.value for p in parts))
    weight = rs.weight(dynkin)
    d = dimension(rs, weight)
    mu = 2.0 * np.sqrt(_shift_norm2(rs, weight))
    values = []
    for n in (order, 2 * order):
        q = build_chamber_quadrature(rs, t, n, mu)
        values.append(integrate_invariant(q, _c_integrand(rs, weight, t, d, with_eta=False)))
    return NaiveConstant(value=values[1], stability=abs(values[1] - values[0]))


def naive_constant(rs: RootSystem, weight: Weight, t: float, order: Optional[int] = None) -> NaiveConstant:
    """Constant of the eta-free measure: (1/d) int chi^C(exp 2iY) exp(-|Y|^2/t) dY.

    No closed form is known; the value at twice the order is reported with the
    order-doubling difference as its stability estimate.
    """
    return _naive_cached(rs.kind, weight.dynkin, float(t), order or default_order(rs))


@dataclass(frozen=True)
class ConstantsRow:
    group: str
    t: float
    dynkin: Tuple[int, ...]
    d: int
    norm2_shift: float
    C: float
    D: float
    C_tilde: float
    C_tilde_err: float
    ratio_check: float


def constants_row(rs: RootSystem, weight: Weight, t: float, order: Optional[int] = None) -> ConstantsRow:
    C = c_constant(rs, weight, t)
    D = d_constant(rs, weight, t)
    naive = naive_constant(rs, weight, t, order)
    # relative, since sqrt(C) grows like exp(t|lambda+rho|^2/2)
    ratio = abs((4.0 * t * np.pi) ** (-rs.dim_k / 4.0) * D - np.sqrt(C)) / np.sqrt(C)
    return ConstantsRow(
        group=rs.kind,
        t=t,
        dynkin=weight.dynkin,
        d=dimension(rs, weight),
        norm2_shift=_shift_norm2(rs, weight),
        C=C,
        D=D,
        C_tilde=naive.value,
        C_tilde_err=naive.stability,
        ratio_check=float(ratio),
    )


class Transform(str, Enum):
    H = "h"
    H_INVERSE = "h-inverse"
    THETA = "theta"
    THETA_STAR = "theta-star"
    SCALED_THETA = "scaled-theta"
    SCALED_THETA_STAR = "scaled-theta-star"
    HTILDE = "htilde"


_DOMAINS = {
    Transform.H: (Space.HL2, Space.L2K),
    Transform.H_INVERSE: (Space.L2K, Space.HL2),
    Transform.THETA: (Space.HL2, Space.L2K),
    Transform.THETA_STAR: (Space.L2K, Space.HL2),
    Transform.SCALED_THETA: (Space.HL2, Space.L2K),
    Transform.SCALED_THETA_STAR: (Space.L2K, Space.HL2),
    Transform.HTILDE: (Space.HL2_NAIVE, Space.L2K),
}


def transform_multiplier(rs: RootSystem, weight: Weight, t: float, which: Transform, order: Optional[int] = None) -> float:
    which = Transform(which)
    C = c_constant(rs, weight, t)
    D = d_constant(rs, weight, t)
    scale = (4.0 * t * np.pi) ** (-rs.dim_k / 4.0)
    if which == Transform.H:
        return float(np.sqrt(C))
    if which == Transform.H_INVERSE:
        return float(1.0 / np.sqrt(C))
    if which == Transform.THETA:
        return D
    if which == Transform.SCALED_THETA:
        return float(scale * D)
    if which == Transform.THETA_STAR:
        return float(2.0 ** (rs.dim_k / 2.0) * np.exp(-t * _shift_norm2(rs, weight) / 2.0))
    if which == Transform.SCALED_THETA_STAR:
        return float(scale * 2.0 ** (rs.dim_k / 2.0) * np.exp(-t * _shift_norm2(rs, weight) / 2.0))
    return float(np.sqrt(naive_constant(rs, weight, t, order).value))


def transform_apply(series: FourierSeries, which: Union[Transform, str], order: Optional[int] = None) -> FourierSeries:
    """Termwise scalar multiplication; the space tag moves from the domain to the codomain."""
    which = Transform(which)
    domain, codomain = _DOMAINS[which]
    if series.space != domain:
        raise SpaceMismatchError(f"{which.value} acts on {domain.value}, got a {series.space.value} series")
    rs = build_root_system(series.rs_kind)
    return series.map_terms(lambda key: transform_multiplier(rs, rs.weight(key), series.t, which, order), codomain)


@dataclass(frozen=True)
class Spectral:
    pass


@dataclass(frozen=True)
class Integral:
    model: GroupModel
    scheme: MonteCarlo
    order: int = 32


def bks_bracket(phi: FourierSeries, F: FourierSeries, route: Union[Spectral, Integral] = Spectral()) -> Estimate:
    """Pairing of a holomorphic series with an L2(K) series; conjugate-linear in phi."""
    if phi.space != Space.HL2 or F.space != Space.L2K:
        raise SpaceMismatchError("the pairing takes an HL2 series and an L2K series")
    if phi.rs_kind != F.rs_kind:
        raise KindMismatchError(f"series live on different groups: {phi.rs_kind} vs {F.rs_kind}")
    if isinstance(route, Spectral):
        theta_phi = transform_apply(phi, Transform.THETA)
        return Estimate(value=inner_product(theta_phi, F), stderr=0.0)
    if isinstance(route, Integral):
        model = route.model
        require_irreps(model)
        F_phi = bks_function(phi, model, order=route.order)

        def draw(rng: np.random.Generator, size: int) -> np.ndarray:
            x = model.haar_sample(rng, size)
            return np.conj(F_phi(x)) * synthesize(F, model, x)

        return monte_carlo_mean(draw, route.scheme)
    raise SchemeMismatchError(f"unknown pairing route {route!r}")


def bks_function(phi: FourierSeries, model: GroupModel, order: int = 32):
    """F_phi(x) = int phi(x exp(iY)) exp(-|Y|^2/2t) eta(Y/2) dY by spherical quadrature over su(2).

    Returns a callable on (batches of) SU(2) matrices.
    """
    require_irreps(model)
    if phi.space != Space.HL2:
        raise SpaceMismatchError("F_phi is defined for HL2 series")
    rs = model.root_system
    t = phi.t
    top = max((np.sqrt(_shift_norm2(rs, rs.weight(k))) for k in phi.terms), default=0.0)
    points, weights = spherical_grid(2.0 * t, order, top)
    norms = np.linalg.norm(points, axis=-1)
    # eta on su(2) depends only on |Y|: the root value of the representative is sqrt(2)|Y|
    half_eta = eta(rs, CartanPoint(norms[:, None] / 2.0))
    w = weights * np.exp(-norms**2 / (2.0 * t)) * half_eta
    averaged = {}
    for (n,), coeff in phi.terms.items():
        irrep = build_irrep(n)
        factor = np.tensordot(w, holomorphic_factor(irrep, points), axes=1)
        averaged[n] = (irrep, factor @ coeff)

    def F_phi(x: np.ndarray) -> np.ndarray:
        logs = su2_log(x)
        total = 0j
        for n, (irrep, matrix) in averaged.items():
            T = rep_matrix(irrep, logs)
            total = total + irrep.dim * np.einsum("ij,...ji->...", matrix, T)
        return total

    return F_phi
