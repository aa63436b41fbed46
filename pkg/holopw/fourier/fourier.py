"""Fourier series of representative functions on SU(2)-type groups and their Hilbert spaces."""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from holopw.exceptions import KindMismatchError, SpaceMismatchError
from holopw.models.models import GroupModel, build_irrep, rep_matrix, rep_matrix_holo, require_irreps, su2_log
from holopw.rootdata.rootdata import build_root_system, dimension
from holopw.utils.sampling import Estimate, MonteCarlo, monte_carlo_mean

logger = logging.getLogger(__name__)

Dynkin = Tuple[int, ...]


class Space(str, Enum):
    L2K = "L2K"
    HL2 = "HL2"
    HL2_NAIVE = "HL2Naive"


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """f(x) = sum_lambda d_lambda tr(f_lambda T_lambda(x)) with finitely many terms."""

    rs_kind: str
    space: Space
    t: float
    terms: Dict[Dynkin, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        rs = build_root_system(self.rs_kind)
        clean = {}
        for dynkin, matrix in self.terms.items():
            key = tuple(int(v) for v in dynkin)
            matrix = np.asarray(matrix, dtype=complex)
            d = dimension(rs, rs.weight(key))
            if matrix.shape != (d, d):
                raise ValueError(f"coefficient of {key} must be {d}x{d}, got {matrix.shape}")
            clean[key] = matrix
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "space", Space(self.space))

    def map_terms(self, scale: Callable[[Dynkin], complex], space: Optional[Space] = None) -> "FourierSeries":
        terms = {k: scale(k) * v for k, v in self.terms.items()}
        return replace(self, terms=terms, space=space or self.space)

    def coefficient(self, dynkin: Iterable[int]) -> np.ndarray:
        key = tuple(dynkin)
        if key in self.terms:
            return self.terms[key]
        d = dimension(build_root_system(self.rs_kind), build_root_system(self.rs_kind).weight(key))
        return np.zeros((d, d), dtype=complex)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        _check_compatible(self, other)
        keys = sorted(set(self.terms) | set(other.terms))
        return replace(self, terms={k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def scale(self, factor: complex) -> "FourierSeries":
        return self.map_terms(lambda _: factor)


def _check_compatible(a: FourierSeries, b: FourierSeries) -> None:
    if a.rs_kind != b.rs_kind:
        raise KindMismatchError(f"series live on different groups: {a.rs_kind} vs {b.rs_kind}")
    if a.space != b.space:
        raise SpaceMismatchError(f"series live in different spaces: {a.space.value} vs {b.space.value}")
    if a.space != Space.L2K and a.t != b.t:
        raise SpaceMismatchError(f"series carry different t: {a.t} vs {b.t}")


def character_series(rs_kind: str, dynkin: Iterable[int], space: Space = Space.L2K, t: float = 1.0) -> FourierSeries:
    """The character chi_lambda (or its holomorphic extension): coefficient Id/d at lambda."""
    rs = build_root_system(rs_kind)
    key = tuple(dynkin)
    d = dimension(rs, rs.weight(key))
    return FourierSeries(rs_kind, space, t, {key: np.eye(d) / d})


def random_series(
    rs_kind: str, levels: Iterable[Iterable[int]], rng: np.random.Generator, space: Space = Space.L2K, t: float = 1.0
) -> FourierSeries:
    rs = build_root_system(rs_kind)
    terms = {}
    for dynkin in levels:
        key = tuple(dynkin)
        d = dimension(rs, rs.weight(key))
        terms[key] = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / d
    return FourierSeries(rs_kind, space, t, terms)


def fourier_coeff(model: GroupModel, f: Callable[[np.ndarray], np.ndarray], dynkin: Iterable[int], scheme: MonteCarlo) -> Estimate:
    """Haar Monte-Carlo of f_lambda = int f(x) T_lambda(x^-1) dx (normalized Haar measure)."""
    require_irreps(model)
    (n,) = tuple(dynkin)
    irrep = build_irrep(n)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        x = model.haar_sample(rng, size)
        inverse = rep_matrix(irrep, -su2_log(x))
        return np.asarray(f(x))[:, None, None] * inverse

    return monte_carlo_mean(draw, scheme)


def series_from_function(
    model: GroupModel, f: Callable[[np.ndarray], np.ndarray], max_level: int, scheme: MonteCarlo, space: Space = Space.L2K, t: float = 1.0
) -> Tuple[FourierSeries, Dict[Dynkin, np.ndarray]]:
    """Coefficients for every label up to max_level, with elementwise standard errors."""
    terms, errors = {}, {}
    for n in range(max_level + 1):
        est = fourier_coeff(model, f, (n,), scheme.child(n))
        terms[(n,)] = est.value
        errors[(n,)] = est.stderr
    return FourierSeries(model.root_system.kind, space, t, terms), errors


def synthesize(series: FourierSeries, model: GroupModel, x: np.ndarray, Y: Optional[np.ndarray] = None) -> np.ndarray:
    """Value at x (or at x exp(iY) for holomorphic series); x may be a batch of matrices."""
    require_irreps(model)
    if Y is not None and series.space == Space.L2K:
        raise SpaceMismatchError("an L2K series has no holomorphic extension argument")
    x = np.asarray(x)
    total = np.zeros(x.shape[:-2], dtype=complex)
    logs = su2_log(x) if Y is None else None
    for (n,), coeff in series.terms.items():
        irrep = build_irrep(n)
        T = rep_matrix(irrep, logs) if Y is None else rep_matrix_holo(irrep, x, Y)
        total = total + irrep.dim * np.einsum("ij,...ji->...", coeff, T)
    return total


def convolve(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    """Coefficients of (a*b)(q) = int a(x) b(x^-1 q) dx, namely b_lambda a_lambda."""
    _check_compatible(a, b)
    keys = sorted(set(a.terms) & set(b.terms))
    return replace(a, terms={k: b.terms[k] @ a.terms[k] for k in keys})


def direct_convolution(
    model: GroupModel,
    a: Callable[[np.ndarray], np.ndarray],
    b: Callable[[np.ndarray], np.ndarray],
    q: np.ndarray,
    scheme: MonteCarlo,
) -> Estimate:
    """Haar Monte-Carlo of the convolution integral at a single point q."""
    q = np.asarray(q)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        x = model.haar_sample(rng, size)
        moved = np.conj(np.swapaxes(x, -1, -2)) @ q
        return np.asarray(a(x)) * np.asarray(b(moved))

    return monte_carlo_mean(draw, scheme)


def bilinear_pairing(f: FourierSeries, h: FourierSeries) -> complex:
    """(f*h)(e) = int f(x) h(x^-1) dx = sum d tr(h_lambda f_lambda)."""
    _check_compatible(f, h)
    rs = build_root_system(f.rs_kind)
    total = 0j
    for key in sorted(set(f.terms) & set(h.terms)):
        d = dimension(rs, rs.weight(key))
        total += d * np.trace(h.terms[key] @ f.terms[key])
    return complex(total)


def inner_product(a: FourierSeries, b: FourierSeries, order: Optional[int] = None) -> complex:
    """<a, b> in the space both series live in; conjugate-linear in a."""
    _check_compatible(a, b)
    rs = build_root_system(a.rs_kind)
    weights = _space_weights(a, order)
    total = 0j
    for key in sorted(set(a.terms) & set(b.terms)):
        d = dimension(rs, rs.weight(key))
        total += d * weights(key) * np.trace(np.conj(a.terms[key]).T @ b.terms[key])
    return complex(total)


def plancherel_norm(series: FourierSeries, order: Optional[int] = None) -> float:
    """Squared norm: sum d ||f_lambda||^2_HS, weighted by C (HL2) or by the naive constant (HL2Naive)."""
    if not series.terms:
        return 0.0
    return float(inner_product(series, series, order).real)


def _space_weights(series: FourierSeries, order: Optional[int]) -> Callable[[Dynkin], float]:
    if series.space == Space.L2K:
        return lambda _: 1.0
    from holopw.hilbert.hilbert import c_constant, naive_constant

    rs = build_root_system(series.rs_kind)
    if series.space == Space.HL2:
        return lambda key: c_constant(rs, rs.weight(key), series.t)
    return lambda key: naive_constant(rs, rs.weight(key), series.t, order).value
