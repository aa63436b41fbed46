"""Integration over the Lie algebra through the dominant chamber, plus brute-force oracles.

Chamber integrals run in the coordinates theta_i = alpha_i(Y)/2 on the orthant theta >= 0.
For an Ad-invariant f the chamber reduction reads

    int f(Y) dY = flag_volume * int_{theta >= 0} prod_alpha alpha(Y)^2 f(Y(theta)) dtheta.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from holopw.chars.chars import CartanPoint, eta, eta_det_oracle, root_values
from holopw.exceptions import CalibrationError, QuadratureError, SchemeMismatchError
from holopw.rootdata.rootdata import RootSystem
from holopw.utils.sampling import Estimate, GridA1, MonteCarlo, monte_carlo_mean

logger = logging.getLogger(__name__)

TRUNCATION_C0 = 8.0
MIN_ORDER = 8
DEFAULT_ORDERS = {"A1": 64, "A2": 96}
TORUS_ORDER = 64
MAX_NODES = 4_000_000


def default_order(rs: RootSystem) -> int:
    return DEFAULT_ORDERS.get(rs.kind, TORUS_ORDER)


def truncation_radius(t: float, mu_norm: float) -> float:
    """R with negligible Gaussian tail mass of exp(-|Y|^2/t + |mu||Y|) beyond |Y| = R."""
    return float(np.sqrt(t) * (mu_norm * np.sqrt(t) / 2.0 + TRUNCATION_C0))


def gauss_legendre(order: int, low: float, high: float) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(order)
    half = 0.5 * (high - low)
    return low + half * (x + 1.0), half * w


@dataclass(frozen=True, eq=False)
class ChamberQuadrature:
    nodes: np.ndarray  # (npts, rank) Cartan coordinates
    weights: np.ndarray
    radius: float
    order: int
    kind: str

    @property
    def points(self) -> CartanPoint:
        return CartanPoint(self.nodes)


def build_chamber_quadrature(rs: RootSystem, t: float, order: int, target_mu_norm: float = 0.0) -> ChamberQuadrature:
    if order < MIN_ORDER:
        raise QuadratureError(f"quadrature order {order} is below the minimum {MIN_ORDER}")
    if t <= 0:
        raise QuadratureError("t must be positive")
    if float(order) ** rs.rank > MAX_NODES:
        raise QuadratureError(
            f"order {order} on {rs.kind} needs {order}^{rs.rank} nodes, more than {MAX_NODES}", exit_code=2
        )
    radius = truncation_radius(t, target_mu_norm)
    if rs.is_torus:
        x, w = gauss_legendre(order, -radius, radius)
    else:
        sigma_min = np.linalg.svd(rs.chamber_matrix, compute_uv=False).min()
        x, w = gauss_legendre(order, 0.0, radius / sigma_min)
    grids = np.meshgrid(*([x] * rs.rank), indexing="ij")
    theta = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*([w] * rs.rank), indexing="ij")
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    nodes = theta @ rs.chamber_matrix
    if not rs.is_torus:
        density = np.prod(root_values(rs, CartanPoint(nodes)) ** 2, axis=-1)
        weights = weights * density * rs.flag_volume
    logger.debug("chamber quadrature %s: order %d, radius %.3f, %d nodes", rs.kind, order, radius, len(nodes))
    return ChamberQuadrature(nodes=nodes, weights=weights, radius=radius, order=order, kind=rs.kind)


def integrate_invariant(q: ChamberQuadrature, f: Callable[[CartanPoint], np.ndarray]) -> float:
    """Sum of weights * f(nodes); f receives every node at once as a batched CartanPoint."""
    values = np.asarray(f(q.points))
    if values.shape != q.weights.shape:
        values = np.broadcast_to(values, q.weights.shape)
    if not np.all(np.isfinite(values)):
        raise QuadratureError("integrand is not finite at some quadrature nodes")
    return float(np.real(values @ q.weights))


def gaussian_linear_moment(rs: RootSystem, mu, t: float) -> float:
    """int exp(-<mu, Y> - |Y|^2/t) dY = (t pi)^(dim/2) exp(t |mu|^2 / 4)."""
    mu = np.asarray(getattr(mu, "coords", mu), dtype=float)
    return float((t * np.pi) ** (rs.dim_k / 2.0) * np.exp(t * (mu @ mu) / 4.0))


def spherical_grid(t: float, order: int, mu_norm: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Product rule on R^3: radial and polar Gauss-Legendre, azimuthal trapezoid.

    Returns points (order^3, 3) and plain Lebesgue weights.
    """
    radius = truncation_radius(t, mu_norm)
    r, wr = gauss_legendre(order, 0.0, radius)
    c, wc = roots_legendre(order)
    psi = 2 * np.pi * np.arange(order) / order
    wpsi = np.full(order, 2 * np.pi / order)
    R, C, P = np.meshgrid(r, c, psi, indexing="ij")
    S = np.sqrt(1.0 - C**2)
    points = np.stack([R * S * np.cos(P), R * S * np.sin(P), R * C], axis=-1).reshape(-1, 3)
    weights = (wr[:, None, None] * r[:, None, None] ** 2 * wc[None, :, None] * wpsi[None, None, :]).ravel()
    return points, weights


def cartesian_oracle_integrate(model, f: Callable[[np.ndarray], np.ndarray], t: float, scheme) -> Estimate:
    """int f(X) exp(-|X|^2/t) dX over the whole Lie algebra, no chamber reduction.

    f takes a batch of algebra elements (n, N, N).
    """
    m = model.root_system.dim_k
    if isinstance(scheme, MonteCarlo):
        scale = np.sqrt(t / 2.0)

        def draw(rng: np.random.Generator, n: int) -> np.ndarray:
            X = model.algebra_element(scale * rng.standard_normal((n, m)))
            return np.asarray(f(X), dtype=float)

        est = monte_carlo_mean(draw, scheme)
        norm = (t * np.pi) ** (m / 2.0)
        return Estimate(value=float(norm * est.value), stderr=float(norm * est.stderr))
    if isinstance(scheme, GridA1):
        if model.kind != "SU2":
            raise SchemeMismatchError("GridA1 integrates over su(2) only")
        points, weights = spherical_grid(t, scheme.order)
        values = np.asarray(f(model.algebra_element(points)), dtype=float)
        gauss = np.exp(-np.sum(points**2, axis=-1) / t)
        return Estimate(value=float(np.sum(weights * gauss * values)), stderr=0.0)
    raise SchemeMismatchError(f"unknown oracle scheme {scheme!r}")


def calibrate_flag_volume(rs: RootSystem, model=None, scheme: Optional[MonteCarlo] = None, order: Optional[int] = None) -> float:
    """Confirm the flag-manifold factor of the chamber reduction against the Cartesian oracle.

    Without a scheme the test integrand is exp(-|Y|^2), whose oracle value pi^(dim/2) is exact. With a
    Monte-Carlo scheme the test integrand is eta(Y) exp(-|Y|^2), sampled over the whole algebra.
    """
    if rs.is_torus:
        return 1.0
    if scheme is not None:
        if model is None:
            raise CalibrationError("Monte-Carlo calibration needs a matrix model")
        return _check_flag_volume(rs, calibrated_estimate(rs, model, scheme, order))
    q = build_chamber_quadrature(rs, 1.0, order or default_order(rs), 0.0)
    chamber = float((q.weights / rs.flag_volume) @ np.exp(-q.points.norm2))
    return _check_flag_volume(rs, Estimate(value=np.pi ** (rs.dim_k / 2.0) / chamber, stderr=0.0))


def _check_flag_volume(rs: RootSystem, calibrated: Estimate) -> float:
    estimate, sigma = calibrated.value, calibrated.stderr
    tolerance = max(5.0 * sigma, 1e-8 * rs.flag_volume)
    logger.debug("flag volume %s: calibrated %.12g, closed form %.12g", rs.kind, estimate, rs.flag_volume)
    if abs(estimate - rs.flag_volume) > tolerance:
        raise CalibrationError(
            f"flag volume of {rs.kind} calibrates to {estimate:.10g} (+/- {sigma:.2g}), closed form {rs.flag_volume:.10g}"
        )
    return rs.flag_volume


def calibrated_estimate(rs: RootSystem, model, scheme: MonteCarlo, order: Optional[int] = None) -> Estimate:
    """Raw Monte-Carlo calibration value with its standard error (no closed-form refinement)."""
    order = order or default_order(rs)
    q = build_chamber_quadrature(rs, 1.0, order, 0.0)
    bare = q.weights / rs.flag_volume
    chamber = float(bare @ (np.exp(-q.points.norm2) * eta(rs, q.points)))
    target = cartesian_oracle_integrate(model, lambda X: eta_det_oracle(model, X), 1.0, scheme)
    return Estimate(value=target.value / chamber, stderr=target.stderr / chamber)
