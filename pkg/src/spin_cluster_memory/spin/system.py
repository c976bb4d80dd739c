"""
Spin-system description: spin count, per-spin offsets and the symmetric
dipolar coupling matrix, all in Hz in the rotating frame of the carrier.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from spin_cluster_memory.core.exceptions import (
    CouplingMatrixError,
    DenseLimitError,
    FileFormatError,
)
from spin_cluster_memory.utils.io_utils import read_json, write_json

logger = logging.getLogger(__name__)

DEFAULT_MAX_SPINS = 12
GEOMETRIES = ("chain", "ring")


def check_dense_limit(n: int, max_spins: Optional[int] = None) -> int:
    """Validate a spin count against the dense-matrix bound."""
    limit = DEFAULT_MAX_SPINS if max_spins is None else int(max_spins)
    n = int(n)
    if n < 1:
        raise ValueError(f"spin count must be >= 1, got {n}")
    if n > limit:
        raise DenseLimitError(n, limit)
    return n


def check_couplings(couplings: np.ndarray) -> None:
    """Raise CouplingMatrixError unless symmetric, zero-diagonal and finite."""
    c = np.asarray(couplings, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise CouplingMatrixError(f"coupling matrix must be square, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise CouplingMatrixError("coupling matrix contains non-finite entries")
    tol = 1e-9 * max(1.0, float(np.max(np.abs(c), initial=0.0)))
    if np.max(np.abs(c - c.T), initial=0.0) > tol:
        raise CouplingMatrixError("coupling matrix is not symmetric")
    if np.max(np.abs(np.diag(c)), initial=0.0) > tol:
        raise CouplingMatrixError("coupling matrix must have a zero diagonal")


@dataclass(frozen=True)
class SpinSystem:
    """
    A cluster of n spins-1/2.

    offsets: resonance offsets nu_i in Hz, length n.
    couplings: n x n dipolar constants d_ij in Hz, symmetric, zero diagonal.
    """

    n: int
    offsets: np.ndarray
    couplings: np.ndarray
    max_spins: int = DEFAULT_MAX_SPINS

    def __post_init__(self):
        n = check_dense_limit(self.n, self.max_spins)
        offsets = np.array(self.offsets, dtype=float).reshape(-1)
        couplings = np.array(self.couplings, dtype=float)
        if offsets.shape != (n,):
            raise ValueError(f"expected {n} offsets, got {offsets.shape[0]}")
        if not np.all(np.isfinite(offsets)):
            raise ValueError("offsets contain non-finite entries")
        if couplings.shape != (n, n):
            raise CouplingMatrixError(f"expected a {n}x{n} coupling matrix, got {couplings.shape}")
        check_couplings(couplings)

        couplings = 0.5 * (couplings + couplings.T)
        np.fill_diagonal(couplings, 0.0)
        offsets.setflags(write=False)
        couplings.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "couplings", couplings)

    @property
    def dim(self) -> int:
        return 2 ** self.n

    def bandwidth(self) -> float:
        """max|nu_i| + max row-sum |d_ij|: a bound on the free precession rates."""
        offsets = float(np.max(np.abs(self.offsets), initial=0.0))
        row_sum = float(np.max(np.sum(np.abs(self.couplings), axis=1), initial=0.0))
        return offsets + row_sum

    def __eq__(self, other):
        if not isinstance(other, SpinSystem):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.couplings, other.couplings)
        )

    # ---- serialization ----
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "offsets_hz": [float(v) for v in self.offsets],
            "couplings_hz": [[float(v) for v in row] for row in self.couplings],
        }

    @classmethod
    def from_json(cls, payload: dict, max_spins: Optional[int] = None) -> "SpinSystem":
        try:
            n = int(payload["n"])
            offsets = payload["offsets_hz"]
            couplings = payload["couplings_hz"]
        except (KeyError, TypeError, ValueError) as e:
            raise FileFormatError(f"spin system JSON is missing or has bad fields: {e}") from e
        return cls(
            n=n,
            offsets=offsets,
            couplings=couplings,
            max_spins=DEFAULT_MAX_SPINS if max_spins is None else max_spins,
        )

    def save(self, path: str | Path) -> Path:
        out = write_json(path, self.to_json())
        logger.info(f"Spin system ({self.n} spins) saved to {out}")
        return out

    @classmethod
    def load(cls, path: str | Path, max_spins: Optional[int] = None) -> "SpinSystem":
        return cls.from_json(read_json(path), max_spins=max_spins)


def _distances(geometry: str, n: int) -> np.ndarray:
    idx = np.arange(n)
    if geometry == "chain":
        return np.abs(idx[:, None] - idx[None, :]).astype(float)
    if geometry == "ring":
        if n == 1:
            return np.zeros((1, 1))
        # unit nearest-neighbour chord on a circle
        radius = 1.0 / (2.0 * np.sin(np.pi / n))
        sep = np.abs(idx[:, None] - idx[None, :])
        return 2.0 * radius * np.sin(np.pi * sep / n)
    raise ValueError(f"Unknown geometry '{geometry}'; expected one of {GEOMETRIES}")


def generate_spin_system(
    geometry: str,
    n: int,
    d_nn: float,
    spread: float,
    seed: int,
    max_spins: Optional[int] = None,
) -> SpinSystem:
    """
    Build a synthetic cluster with spins at unit spacing.

    Couplings fall off as d_nn / r^3; offsets are drawn uniformly over
    [-spread/2, +spread/2] from a generator seeded with ``seed``.
    """
    if geometry not in GEOMETRIES:
        raise ValueError(f"Unknown geometry '{geometry}'; expected one of {GEOMETRIES}")
    n = check_dense_limit(n, max_spins)
    if d_nn < 0:
        raise ValueError(f"d_nn must be >= 0, got {d_nn}")
    if spread < 0:
        raise ValueError(f"spread must be >= 0, got {spread}")

    r = _distances(geometry, n)
    couplings = np.zeros((n, n))
    off_diag = ~np.eye(n, dtype=bool)
    couplings[off_diag] = float(d_nn) / r[off_diag] ** 3

    rng = np.random.default_rng(seed)
    offsets = rng.uniform(-0.5 * spread, 0.5 * spread, size=n)

    system = SpinSystem(
        n=n,
        offsets=offsets,
        couplings=couplings,
        max_spins=DEFAULT_MAX_SPINS if max_spins is None else max_spins,
    )
    logger.info(f"Generated {geometry} of {n} spins (d_nn={d_nn} Hz, spread={spread} Hz, seed={seed})")
    return system
