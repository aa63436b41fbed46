"""Half-form densities, Weyl characters and orbital averages.

All functions accept batched CartanPoints (coords of shape (..., rank)) and return
arrays of the leading shape.
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from holopw.exceptions import EigenSolveError, SchemeMismatchError, WallSingularityError
from holopw.rootdata.rootdata import RootSystem, Weight, dimension, weight_multiplicities, weyl_orbit
from holopw.utils.sampling import ClosedFormA1, Estimate, MonteCarlo, Residual, monte_carlo_mean

logger = logging.getLogger(__name__)

WALL_TOL = 1e-12
# Below this product-form denominator the holomorphic quotient is replaced by its weight sum.
HOLO_FALLBACK_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class CartanPoint:
    coords: np.ndarray

    @classmethod
    def of(cls, coords: Union[Sequence[float], np.ndarray]) -> "CartanPoint":
        return cls(np.asarray(coords, dtype=float))

    @classmethod
    def from_chamber(cls, rs: RootSystem, theta: Union[Sequence[float], np.ndarray]) -> "CartanPoint":
        """Point with alpha_i(Y) = 2*theta_i for the simple roots (plain coordinates on a torus)."""
        return cls(np.asarray(theta, dtype=float) @ rs.chamber_matrix)

    @property
    def norm2(self) -> np.ndarray:
        """|Y|^2, the Kahler potential at x*exp(iY)."""
        return np.sum(self.coords**2, axis=-1)

    def scaled(self, factor: float) -> "CartanPoint":
        return CartanPoint(self.coords * factor)


def sinhc(x):
    """sinh(x)/x with the removable singularity filled; valid for complex x."""
    x = np.asarray(x)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 + x2 / 6.0 + x2 * x2 / 120.0, np.sinh(safe) / safe)


def root_values(rs: RootSystem, Y: CartanPoint) -> np.ndarray:
    return Y.coords @ rs.positive_roots.T


def eta(rs: RootSystem, Y: CartanPoint) -> np.ndarray:
    return np.prod(sinhc(root_values(rs, Y)), axis=-1)


def eta_det_oracle(model, X: np.ndarray) -> np.ndarray:
    """sqrt(det(sin(ad X)/ad X)) from the spectrum of the ad matrix of X on the Lie algebra."""
    ad = model.ad_matrix(X)
    try:
        spectrum = np.linalg.eigvals(ad)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"eigen-solve of ad(X) failed: {exc}") from exc
    # sin(z)/z at z = i*beta equals sinh(beta)/beta
    det = np.prod(sinhc(1j * spectrum), axis=-1).real
    return np.sqrt(det)


def j_function(rs: RootSystem, Z: np.ndarray) -> np.ndarray:
    """j at a complexified Cartan argument Z (complex coords)."""
    values = np.asarray(Z) @ rs.positive_roots.T
    return np.prod(sinhc(0.5j * values), axis=-1)


def j_half_identity_residual(rs: RootSystem, Y: CartanPoint) -> np.ndarray:
    return np.abs(j_function(rs, 1j * Y.coords) - eta(rs, Y.scaled(0.5)))


def _weyl_numerator(rs: RootSystem, vector: np.ndarray, H: np.ndarray) -> np.ndarray:
    orbit = weyl_orbit(rs, vector)
    return np.exp(H @ orbit.T) @ np.asarray(rs.weyl_signs, dtype=float)


def _weyl_denominator(rs: RootSystem, H: np.ndarray) -> np.ndarray:
    half = 0.5 * (H @ rs.positive_roots.T)
    return np.prod(np.exp(half) - np.exp(-half), axis=-1)


def weyl_char_compact(rs: RootSystem, weight: Weight, Y: CartanPoint) -> np.ndarray:
    """chi_lambda(exp Y); raises WallSingularityError where the Weyl denominator vanishes."""
    H = 1j * Y.coords
    den = _weyl_denominator(rs, H)
    if np.any(np.abs(den) < WALL_TOL):
        raise WallSingularityError("Weyl denominator vanishes at Y; perturb Y or use the dimension at Y = 0")
    return _weyl_numerator(rs, rs.shifted(weight), H) / den


def weight_sum_character(rs: RootSystem, weight: Weight, Y: CartanPoint, holomorphic: bool = True) -> np.ndarray:
    """Character as the sum of m_mu * exp(-<mu, Y>) (holomorphic) or exp(i<mu, Y>) (compact)."""
    weights = weight_multiplicities(rs, weight)
    mus = np.array([mu for mu, _ in weights])
    mults = np.array([m for _, m in weights], dtype=float)
    exponent = -(Y.coords @ mus.T) if holomorphic else 1j * (Y.coords @ mus.T)
    return np.exp(exponent) @ mults


def weyl_char_holo(rs: RootSystem, weight: Weight, Y: CartanPoint) -> np.ndarray:
    """chi^C_lambda(exp iY), real and positive on the closed chamber."""
    H = -Y.coords
    den = _weyl_denominator(rs, H)
    near_wall = np.abs(den) < HOLO_FALLBACK_TOL
    if not np.any(near_wall):
        return _weyl_numerator(rs, rs.shifted(weight), H) / den
    logger.debug("holomorphic character of %s: %d point(s) near a wall", weight, int(np.sum(near_wall)))
    exact = weight_sum_character(rs, weight, Y, holomorphic=True)
    if np.all(near_wall):
        return exact
    safe = np.where(near_wall, 1.0, den)
    quotient = _weyl_numerator(rs, rs.shifted(weight), H) / safe
    return np.where(near_wall, exact, quotient)


def orbital_average(model, mu: np.ndarray, Y: CartanPoint, scheme) -> Estimate:
    """Normalized average of exp(-<mu, Ad_y Y>) over the flag manifold K/T."""
    mu = np.asarray(mu, dtype=float)
    rs = model.root_system
    if mu.shape[-1] != rs.rank or Y.coords.shape[-1] != rs.rank:
        raise SchemeMismatchError(f"mu and Y must have rank {rs.rank}")
    if isinstance(scheme, ClosedFormA1):
        if rs.kind != "A1":
            raise SchemeMismatchError(f"closed-form orbital average is only available for A1, not {rs.kind}")
        r = np.linalg.norm(mu) * np.sqrt(Y.norm2)
        return Estimate(value=sinhc(r), stderr=0.0)
    if isinstance(scheme, MonteCarlo):
        if Y.coords.ndim != 1:
            raise SchemeMismatchError("Monte-Carlo orbital averages take a single Cartan point")
        Ymat = model.cartan_element(Y.coords)
        Mmat = model.cartan_element(mu)

        def draw(rng: np.random.Generator, n: int) -> np.ndarray:
            y = model.haar_sample(rng, n)
            moved = y @ Ymat @ np.conj(np.swapaxes(y, -1, -2))
            pairing = -np.einsum("ij,nji->n", Mmat, moved).real
            return np.exp(-pairing)

        return monte_carlo_mean(draw, scheme)
    raise SchemeMismatchError(f"unknown orbital-average scheme {scheme!r}")


def kirillov_residual(model, weight: Weight, Y: CartanPoint, scheme, half_angle: bool = False) -> Residual:
    """eta(Y) chi^C(exp 2iY) against d * A(2(lambda+rho), Y).

    With half_angle the identity checked is eta(Y/2) chi^C(exp iY) = d * A(lambda+rho, Y).
    """
    rs = model.root_system
    d = dimension(rs, weight)
    shifted = rs.shifted(weight)
    if half_angle:
        lhs = eta(rs, Y.scaled(0.5)) * weyl_char_holo(rs, weight, Y)
        average = orbital_average(model, shifted, Y, scheme)
    else:
        lhs = eta(rs, Y) * weyl_char_holo(rs, weight, Y.scaled(2.0))
        average = orbital_average(model, 2.0 * shifted, Y, scheme)
    return Residual(lhs=float(lhs), rhs=float(d * average.value), stderr=float(d * average.stderr))
