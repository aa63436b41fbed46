"""Root systems and weight lattices for A1, A2 and rank-n tori.

The Cartan subalgebra carries the inner product <X, Y> = -tr(XY) in the defining
representation. Vectors are written in the orthonormal basis
h_k = i*diag(1, ..., 1, -k, 0, ..., 0)/sqrt(k(k+1)), so that for su(2) and su(3)
every root has |alpha|^2 = 2.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from holopw.exceptions import NonDominantWeightError, RankMismatchError, UnsupportedKindError

logger = logging.getLogger(__name__)

_KIND_PATTERN = re.compile(r"^(A1|A2|T([1-9][0-9]*))$")


@dataclass(frozen=True, eq=False)
class RootSystem:
    kind: str
    rank: int
    dim_k: int
    positive_roots: np.ndarray  # (|R+|, rank)
    simple_roots: np.ndarray  # (rank, rank); empty rows for tori
    root_coefficients: np.ndarray  # integer coefficients of R+ in the simple roots
    rho: np.ndarray
    weyl_elements: Tuple[np.ndarray, ...]
    weyl_signs: Tuple[int, ...]
    fundamental_weights: np.ndarray  # rows
    cartan_rows: np.ndarray  # orthonormal basis of the diagonal, (rank, defining_dim)
    flag_volume: float

    @property
    def is_torus(self) -> bool:
        return self.kind.startswith("T")

    @property
    def chamber_matrix(self) -> np.ndarray:
        """Map theta -> Y = theta @ chamber_matrix, with theta_i = alpha_i(Y)/2."""
        if self.is_torus:
            return np.eye(self.rank)
        return 2.0 * self.fundamental_weights

    def weight(self, dynkin: Sequence[int]) -> "Weight":
        labels = tuple(int(v) for v in dynkin)
        if len(labels) != self.rank:
            raise RankMismatchError(f"{self.kind} needs {self.rank} Dynkin labels, got {len(labels)}")
        return Weight(dynkin=labels, coords=np.asarray(labels, dtype=float) @ self.fundamental_weights)

    def shifted(self, weight: "Weight") -> np.ndarray:
        return weight.coords + self.rho


@dataclass(frozen=True, eq=False)
class Weight:
    dynkin: Tuple[int, ...]
    coords: np.ndarray

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Weight) and self.dynkin == other.dynkin

    def __hash__(self) -> int:
        return hash(self.dynkin)

    def __repr__(self) -> str:
        return f"Weight{self.dynkin}"


def parse_kind(kind: str) -> Tuple[str, int]:
    """'A1' -> ('A', 1), 'T3' -> ('T', 3)."""
    match = _KIND_PATTERN.match(kind.strip()) if isinstance(kind, str) else None
    if match is None:
        raise UnsupportedKindError(f"unsupported group kind {kind!r}; expected A1, A2 or T<n>")
    if match.group(2):
        return "T", int(match.group(2))
    return "A", int(kind.strip()[1])


def _cartan_rows(n: int) -> np.ndarray:
    rows = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        rows[k - 1, :k] = 1.0
        rows[k - 1, k] = -k
        rows[k - 1] /= np.sqrt(k * (k + 1))
    return rows


def _weyl_group(simple: np.ndarray) -> Tuple[List[np.ndarray], List[int]]:
    rank = simple.shape[1]
    reflections = [np.eye(rank) - 2.0 * np.outer(a, a) / (a @ a) for a in simple]
    elements = [np.eye(rank)]
    frontier = [np.eye(rank)]
    while frontier:
        fresh = []
        for w in frontier:
            for s in reflections:
                candidate = s @ w
                if not any(np.allclose(candidate, e, atol=1e-12) for e in elements):
                    elements.append(candidate)
                    fresh.append(candidate)
        frontier = fresh
    signs = [int(round(np.linalg.det(w))) for w in elements]
    return elements, signs


def _type_a(n: int) -> RootSystem:
    rows = _cartan_rows(n)
    size = n + 1
    roots, coeffs = [], []
    for i, j in itertools.combinations(range(size), 2):
        e = np.zeros(size)
        e[i], e[j] = 1.0, -1.0
        roots.append(rows @ e)
        c = np.zeros(n, dtype=int)
        c[i:j] = 1
        coeffs.append(c)
    order = np.argsort([c.sum() for c in coeffs], kind="stable")
    positive = np.array([roots[k] for k in order])
    coeffs = np.array([coeffs[k] for k in order])
    simple = positive[:n]
    coroots = 2.0 * simple / np.sum(simple**2, axis=1)[:, None]
    fundamental = np.linalg.inv(coroots).T
    rho = positive.sum(axis=0) / 2.0
    weyl, signs = _weyl_group(simple)
    heights = positive @ rho
    flag_volume = abs(np.linalg.det(2.0 * fundamental)) * (2 * np.pi) ** len(positive) / np.prod(heights)
    return RootSystem(
        kind=f"A{n}",
        rank=n,
        dim_k=n + 2 * len(positive),
        positive_roots=positive,
        simple_roots=simple,
        root_coefficients=coeffs,
        rho=rho,
        weyl_elements=tuple(weyl),
        weyl_signs=tuple(signs),
        fundamental_weights=fundamental,
        cartan_rows=rows,
        flag_volume=float(flag_volume),
    )


def _torus(n: int) -> RootSystem:
    return RootSystem(
        kind=f"T{n}",
        rank=n,
        dim_k=n,
        positive_roots=np.zeros((0, n)),
        simple_roots=np.zeros((0, n)),
        root_coefficients=np.zeros((0, n), dtype=int),
        rho=np.zeros(n),
        weyl_elements=(np.eye(n),),
        weyl_signs=(1,),
        fundamental_weights=np.eye(n),
        cartan_rows=np.eye(n),
        flag_volume=1.0,
    )


@lru_cache(maxsize=None)
def build_root_system(kind: str) -> RootSystem:
    family, n = parse_kind(kind)
    rs = _torus(n) if family == "T" else _type_a(n)
    logger.debug("built root system %s: |R+|=%d, |W|=%d", rs.kind, len(rs.positive_roots), len(rs.weyl_elements))
    return rs


def enumerate_dominant(rs: RootSystem, max_level: int) -> List[Weight]:
    """Dominant weights with every label at most max_level, in lexicographic Dynkin order.

    Every weight of a torus is dominant; its labels range over [-max_level, max_level].
    """
    if max_level < 0:
        raise ValueError("max_level must be non-negative")
    low = -max_level if rs.is_torus else 0
    labels = range(low, max_level + 1)
    return [rs.weight(d) for d in itertools.product(labels, repeat=rs.rank)]


def is_dominant(rs: RootSystem, weight: Weight) -> bool:
    return rs.is_torus or all(v >= 0 for v in weight.dynkin)


def _as_vector(rs: RootSystem, value: Union[Weight, Sequence[float], np.ndarray]) -> np.ndarray:
    vec = value.coords if isinstance(value, Weight) else np.asarray(value, dtype=float)
    if vec.shape[-1:] != (rs.rank,):
        raise RankMismatchError(f"expected rank {rs.rank} vector, got shape {vec.shape}")
    return vec


def weight_inner(rs: RootSystem, a, b) -> float:
    return float(_as_vector(rs, a) @ _as_vector(rs, b))


def dimension(rs: RootSystem, weight: Weight) -> int:
    if not is_dominant(rs, weight):
        raise NonDominantWeightError(f"{weight} is not dominant")
    if rs.is_torus:
        return 1
    shifted = rs.shifted(weight)
    value = np.prod(rs.positive_roots @ shifted) / np.prod(rs.positive_roots @ rs.rho)
    d = int(round(value))
    if abs(value - d) > 1e-9:
        raise ArithmeticError(f"Weyl dimension {value} of {weight} is not integral")
    return d


def weyl_orbit(rs: RootSystem, vector: np.ndarray) -> np.ndarray:
    return np.array([w @ vector for w in rs.weyl_elements])


def weight_multiplicities(rs: RootSystem, weight: Weight) -> List[Tuple[np.ndarray, int]]:
    """Weights of the irreducible representation with highest weight `weight`, with multiplicities.

    Freudenthal's recursion over mu = lambda - sum_i k_i alpha_i, layer by layer in depth sum(k).
    """
    if not is_dominant(rs, weight):
        raise NonDominantWeightError(f"{weight} is not dominant")
    if rs.is_torus:
        return [(weight.coords.copy(), 1)]
    top = rs.shifted(weight) @ rs.shifted(weight)
    mult: Dict[Tuple[int, ...], int] = {(0,) * rs.rank: 1}
    depth = 0
    while True:
        depth += 1
        layer = {}
        for k in itertools.product(range(depth + 1), repeat=rs.rank):
            if sum(k) != depth:
                continue
            mu = weight.coords - np.asarray(k) @ rs.simple_roots
            gap = top - (mu + rs.rho) @ (mu + rs.rho)
            if gap <= 1e-9:
                continue
            acc = 0.0
            for alpha, c in zip(rs.positive_roots, rs.root_coefficients):
                j = 1
                while True:
                    prev = tuple(np.asarray(k) - j * c)
                    if min(prev) < 0:
                        break
                    acc += mult.get(prev, 0) * ((mu + j * alpha) @ alpha)
                    j += 1
            m = int(round(2.0 * acc / gap))
            if m > 0:
                layer[k] = m
        if not layer:
            break
        mult.update(layer)
    return [(weight.coords - np.asarray(k) @ rs.simple_roots, m) for k, m in sorted(mult.items())]
