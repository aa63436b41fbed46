"""Matrix realizations of SU(2) and SU(3) used as brute-force oracles."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from holopw.chars.chars import CartanPoint
from holopw.exceptions import CapabilityError, UnsupportedKindError
from holopw.rootdata.rootdata import RootSystem, build_root_system

logger = logging.getLogger(__name__)

_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _gell_mann() -> np.ndarray:
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return lam


def _dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


@dataclass(frozen=True, eq=False)
class GroupModel:
    kind: str  # "SU2" or "SU3"
    defining_dim: int
    cartan_basis: np.ndarray  # (rank, N, N)
    ad_basis: np.ndarray  # (dim_k, N, N), orthonormal under -tr(XY)
    root_system: RootSystem

    def cartan_element(self, coords: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=float), self.cartan_basis, axes=1)

    def algebra_element(self, coeffs: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=float), self.ad_basis, axes=1)

    def ad_matrix(self, X: np.ndarray) -> np.ndarray:
        """Matrix of ad(X) on the orthonormal basis: M[j, k] = -tr(b_j [X, b_k])."""
        basis = self.ad_basis
        comm = np.einsum("...ij,kjl->...kil", X, basis) - np.einsum("kij,...jl->...kil", basis, X)
        return -np.einsum("jab,...kba->...jk", basis, comm).real

    def adjoint(self, g: np.ndarray, X: np.ndarray) -> np.ndarray:
        return g @ X @ _dagger(g)

    def cartan_representative(self, X: np.ndarray) -> CartanPoint:
        """Dominant Cartan point conjugate to X."""
        eigs = np.linalg.eigvalsh(-1j * np.asarray(X))[..., ::-1]
        return CartanPoint(eigs @ self.root_system.cartan_rows.T)

    def random_algebra_element(self, rng: np.random.Generator, scale: float = 1.0, size=None) -> np.ndarray:
        shape = (self.root_system.dim_k,) if size is None else (size, self.root_system.dim_k)
        return self.algebra_element(scale * rng.standard_normal(shape))

    def haar_sample(self, rng: np.random.Generator, size=None) -> np.ndarray:
        """Haar-distributed elements of SU(N): QR of a Ginibre matrix, phase fix, det normalization."""
        n = self.defining_dim
        count = 1 if size is None else size
        z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2.0)
        q, r = np.linalg.qr(z)
        diag = np.diagonal(r, axis1=-2, axis2=-1)
        q = q * (diag / np.abs(diag))[..., None, :]
        det = np.linalg.det(q)
        q = q / (det ** (1.0 / n))[..., None, None]
        return q[0] if size is None else q


@lru_cache(maxsize=None)
def build_group_model(kind: str) -> GroupModel:
    key = {"A1": "SU2", "A2": "SU3"}.get(kind, kind)
    if key == "SU2":
        basis = 1j * _PAULI / np.sqrt(2.0)
    elif key == "SU3":
        basis = 1j * _gell_mann() / np.sqrt(2.0)
    else:
        raise UnsupportedKindError(f"no matrix model for {kind!r}")
    rs = build_root_system("A1" if key == "SU2" else "A2")
    cartan = np.array([1j * np.diag(row) for row in rs.cartan_rows])
    n = basis.shape[-1]
    return GroupModel(kind=key, defining_dim=n, cartan_basis=cartan, ad_basis=basis, root_system=rs)


def require_irreps(model: GroupModel) -> None:
    """Irrep matrices exist for SU(2) only."""
    if model.kind != "SU2":
        raise CapabilityError(f"irrep matrices unavailable for {model.root_system.kind}")


@dataclass(frozen=True, eq=False)
class IrrepMatrices:
    n: int
    dim: int
    generators: np.ndarray  # (3, n+1, n+1), images of the su(2) ad_basis

    def algebra(self, coeffs: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=float), self.generators, axes=1)


@lru_cache(maxsize=None)
def build_irrep(n: int) -> IrrepMatrices:
    """Spin n/2 representation of su(2) in the basis m = j, j-1, ..., -j."""
    if n < 0:
        raise ValueError("Dynkin label must be non-negative")
    j = n / 2.0
    m = j - np.arange(n + 1)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((n + 1, n + 1), dtype=complex)
    for a in range(1, n + 1):
        jp[a - 1, a] = np.sqrt(j * (j + 1) - m[a] * (m[a] + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    # i*sigma_k/sqrt(2) = i*sqrt(2)*J_k in spin 1/2
    gens = 1j * np.sqrt(2.0) * np.array([jx, jy, jz])
    return IrrepMatrices(n=n, dim=n + 1, generators=gens)


def _expm_i_hermitian(h: np.ndarray, scale: complex) -> np.ndarray:
    """exp(scale * h) for hermitian h through its eigendecomposition."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(scale * evals)[..., None, :]) @ _dagger(evecs)


def _coeffs(Y: Union[CartanPoint, np.ndarray]) -> np.ndarray:
    if isinstance(Y, CartanPoint):
        coords = Y.coords
        zeros = np.zeros(coords.shape[:-1] + (2,))
        return np.concatenate([zeros, coords], axis=-1)
    return np.asarray(Y, dtype=float)


def rep_matrix(m: IrrepMatrices, coeffs: np.ndarray) -> np.ndarray:
    """T(exp X) for X given by its su(2) coordinates; unitary."""
    # T'(X) is anti-hermitian, so -i T'(X) is hermitian
    return _expm_i_hermitian(-1j * m.algebra(coeffs), 1j)


def su2_log(g: np.ndarray) -> np.ndarray:
    """Coordinates of X in su(2) with exp(X) = g, rotation angle in [0, pi]."""
    g = np.asarray(g)
    c = np.trace(g, axis1=-2, axis2=-1).real / 2.0
    anti = (g - _dagger(g)) / 2.0
    # anti = i sin(phi) (n . sigma)
    vec = np.einsum("kij,...ji->...k", _PAULI, anti / 1j).real / 2.0
    s = np.linalg.norm(vec, axis=-1)
    phi = np.arctan2(s, c)
    ratio = np.where(s > 1e-12, phi / np.where(s > 1e-12, s, 1.0), 1.0)
    # coordinates against i*sigma_k/sqrt(2)
    coords = np.sqrt(2.0) * vec * ratio[..., None]
    minus_identity = (s <= 1e-12) & (c < 0)
    if np.any(minus_identity):
        coords = np.where(minus_identity[..., None], np.array([0.0, 0.0, np.sqrt(2.0) * np.pi]), coords)
    return coords


def rep_matrix_at(m: IrrepMatrices, g: np.ndarray) -> np.ndarray:
    return rep_matrix(m, su2_log(g))


def holomorphic_factor(m: IrrepMatrices, Y: Union[CartanPoint, np.ndarray]) -> np.ndarray:
    """exp(i T'(Y)), positive-definite hermitian."""
    return _expm_i_hermitian(1j * m.algebra(_coeffs(Y)), 1.0)


def rep_matrix_holo(m: IrrepMatrices, g: np.ndarray, Y: Union[CartanPoint, np.ndarray]) -> np.ndarray:
    """T(x exp(iY)) = T(x) exp(i T'(Y)) for x in SU(2) and Y in su(2)."""
    return rep_matrix_at(m, g) @ holomorphic_factor(m, Y)


def su2_character(n: int, g: np.ndarray) -> np.ndarray:
    """chi_n(g) = U_n(cos phi), Chebyshev polynomial of the half trace."""
    x = np.trace(np.asarray(g), axis1=-2, axis2=-1).real / 2.0
    prev, cur = np.ones_like(x), 2.0 * x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur