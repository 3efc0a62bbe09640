"""Hidden-variable population tables and the classical Bell bound.

Each of the eight populations fixes the outcome of both particles along all
three directions a, b, c. Particle 1 runs through every sign pattern in
binary order (``+++``, ``++-``, ..., ``---``); particle 2 carries the
opposite signs (antiparallel table) or the same signs (parallel table).
Correlations follow from the product rule::

    P_c(x, y) = sum_i N_i s1_x(i) s2_y(i) / sum_i N_i
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .bell import bell_combination

PAIRS = {"ab": (0, 1), "ac": (0, 2), "bc": (1, 2)}

#: Particle-1 signs, rows N_1..N_8, columns a, b, c.
PARTICLE1_SIGNS = np.array(
    [[1 - 2 * bit for bit in bits] for bits in itertools.product((0, 1), repeat=3)],
    dtype=float,
)


class TableKind(enum.Enum):
    ANTIPARALLEL = "anti"
    PARALLEL = "par"


def sign_assignment(kind: TableKind) -> tuple[np.ndarray, np.ndarray]:
    """``(s1, s2)`` sign arrays of shape (8, 3) for the given table."""
    kind = TableKind(kind)
    s1 = PARTICLE1_SIGNS
    s2 = -s1 if kind is TableKind.ANTIPARALLEL else s1.copy()
    return s1, s2


@dataclass(frozen=True)
class Populations:
    """Eight non-negative weights N_1..N_8 (need not be normalized)."""

    n: tuple[float, ...]

    def __post_init__(self):
        n = tuple(float(x) for x in self.n)
        if len(n) != 8:
            raise ValueError(f"expected 8 populations, got {len(n)}")
        if any(not x >= 0.0 for x in n):
            raise ValueError("populations must be non-negative")
        object.__setattr__(self, "n", n)

    @classmethod
    def from_rows(cls, **rows: float) -> Populations:
        """Build from keyword rows, e.g. ``Populations.from_rows(N3=1, N6=1)``."""
        n = [0.0] * 8
        for key, value in rows.items():
            n[int(key.lstrip("Nn")) - 1] = value
        return cls(tuple(n))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.n)

    @property
    def total(self) -> float:
        return sum(self.n)


def _weights(p) -> np.ndarray:
    w = p.array if isinstance(p, Populations) else np.asarray(p, dtype=float)
    return w


def classical_correlation_matrix(p, kind: TableKind) -> np.ndarray:
    """Correlations for all (particle-1 direction, particle-2 direction) pairs.

    ``p`` may be a :class:`Populations` or an array of shape (..., 8).
    Returns shape (..., 3, 3).
    """
    w = _weights(p)
    total = w.sum(axis=-1)
    if np.any(total <= 0.0):
        raise ValueError("populations must have a positive sum")
    s1, s2 = sign_assignment(kind)
    products = s1[:, :, None] * s2[:, None, :]  # (8, 3, 3)
    return np.tensordot(w, products, axes=([-1], [0])) / total[..., None, None]


def classical_correlation(p, kind: TableKind, pair: str):
    """``P_c`` for ``pair`` in {"ab", "ac", "bc"}: particle 1 along the first letter."""
    x, y = PAIRS[pair]
    m = classical_correlation_matrix(p, kind)
    out = m[..., x, y]
    return float(out) if np.ndim(out) == 0 else out


def classical_qbcp(p, kind: TableKind):
    """Classical ``|P_c(a,b) - P_c(a,c)| - |P_c(b,c)|``; vectorized over rows."""
    m = classical_correlation_matrix(p, kind)
    out = bell_combination(m[..., 0, 1], m[..., 0, 2], m[..., 1, 2])
    return float(out) if np.ndim(out) == 0 else out


def population_samples(seed: int, count: int) -> np.ndarray:
    """``count`` uniform points on the 7-simplex, shape (count, 8).

    Rows are normalized standard exponentials drawn from
    ``numpy.random.default_rng(seed mod 2**64)``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(int(seed) % 2**64)
    e = rng.standard_exponential((int(count), 8))
    return e / e.sum(axis=1, keepdims=True)


def sample_populations(seed: int, count: int) -> Iterator[Populations]:
    for row in population_samples(seed, count):
        yield Populations(tuple(row))


def enumeration_candidates() -> np.ndarray:
    """The 8 vertices followed by the 28 uniform two-vertex mixtures."""
    eye = np.eye(8)
    mixes = [(eye[i] + eye[j]) / 2 for i, j in itertools.combinations(range(8), 2)]
    return np.vstack([eye, np.array(mixes)])


@dataclass(frozen=True)
class ClassicalSearchResult:
    best_value: float
    witness: Populations
    samples: int
    vertices_checked: int

    def __iter__(self):
        # allows ``best, witness = classical_max_search(...)``
        return iter((self.best_value, self.witness))


def classical_max_search(
    kind: TableKind, seed: int = 0, samples: int = 100_000, chunk: int = 250_000
) -> ClassicalSearchResult:
    """Largest classical Bell value over enumerated and sampled populations.

    Candidates are scanned in order (vertices, mixtures, then random samples);
    only a strictly larger value replaces the incumbent, so an enumerated
    witness wins ties.
    """
    candidates = enumeration_candidates()
    values = classical_qbcp(candidates, kind)
    best_idx = int(np.argmax(values))
    best_value = float(values[best_idx])
    witness = candidates[best_idx]

    rng_seed = int(seed) % 2**64
    rng = np.random.default_rng(rng_seed)
    remaining = int(samples)
    while remaining > 0:
        n = min(chunk, remaining)
        e = rng.standard_exponential((n, 8))
        batch = e / e.sum(axis=1, keepdims=True)
        v = classical_qbcp(batch, kind)
        i = int(np.argmax(v))
        if v[i] > best_value:
            best_value = float(v[i])
            witness = batch[i]
        remaining -= n
    return ClassicalSearchResult(
        best_value, Populations(tuple(witness)), int(samples), len(candidates)
    )
