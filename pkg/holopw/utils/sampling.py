import logging
import zlib
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterator, Tuple

import numpy as np
from scipy.stats import norm

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 50_000


@dataclass(frozen=True)
class Estimate:
    """A value with its standard error (zero for deterministic results)."""

    value: Any
    stderr: Any = 0.0


@dataclass(frozen=True)
class Residual:
    """Two sides of an identity and the standard error of their difference."""

    lhs: complex
    rhs: complex
    stderr: float = 0.0

    @property
    def abs_err(self) -> float:
        return float(abs(self.lhs - self.rhs))

    @property
    def rel_err(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.abs_err / scale if scale > 0 else self.abs_err

    @property
    def sigma(self) -> float:
        if self.stderr > 0:
            return self.abs_err / self.stderr
        return 0.0 if self.abs_err == 0 else float("inf")


@dataclass(frozen=True)
class MonteCarlo:
    samples: int
    seed: int
    stream: Tuple[int, ...] = ()

    def rng(self, *key: int) -> np.random.Generator:
        """Generator for the stream (seed, *stream, *key); identical on every platform."""
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream + tuple(key))
        return np.random.default_rng(seq)

    def child(self, *key: int) -> "MonteCarlo":
        return replace(self, stream=self.stream + tuple(key))


@dataclass(frozen=True)
class ClosedFormA1:
    pass


@dataclass(frozen=True)
class GridA1:
    order: int = 48


def stream_key(label: str) -> int:
    """Stable integer key for a named task."""
    return zlib.crc32(label.encode("utf-8"))


def chunk_sizes(samples: int, chunk: int = DEFAULT_CHUNK) -> Iterator[int]:
    full, rest = divmod(samples, chunk)
    for _ in range(full):
        yield chunk
    if rest:
        yield rest


def monte_carlo_mean(
    draw: Callable[[np.random.Generator, int], np.ndarray],
    scheme: MonteCarlo,
    chunk: int = DEFAULT_CHUNK,
) -> Estimate:
    """Mean and standard error of draw() over scheme.samples values.

    draw(rng, n) returns an array whose leading axis has length n; trailing axes are
    averaged elementwise. Chunk k uses the derived stream (seed, *stream, k).
    """
    if scheme.samples < 2:
        raise ValueError("Monte-Carlo needs at least two samples")
    total = None
    total_sq = None
    for k, n in enumerate(chunk_sizes(scheme.samples, chunk)):
        values = np.asarray(draw(scheme.rng(k), n))
        part = values.sum(axis=0)
        part_sq = (np.abs(values) ** 2).sum(axis=0)
        total = part if total is None else total + part
        total_sq = part_sq if total_sq is None else total_sq + part_sq
    n = scheme.samples
    mean = total / n
    var = np.maximum(total_sq / n - np.abs(mean) ** 2, 0.0) * n / (n - 1)
    stderr = np.sqrt(var / n)
    logger.debug("monte-carlo mean over %d samples (stream %s)", n, scheme.stream)
    return Estimate(value=mean, stderr=stderr)


def family_band(band: float, count: int) -> float:
    """Per-check sigma band for `count` checks with the false-failure rate of one check at `band`.

    Sidak correction for two-sided normal deviations.
    """
    if count <= 1:
        return float(band)
    alpha = 2.0 * norm.sf(band)
    per_check = -np.expm1(np.log1p(-alpha) / count)
    return float(norm.isf(per_check / 2.0))
