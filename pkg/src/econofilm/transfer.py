"""Linear coupling between p sources and n supports: m = K M.

The coupling coefficients k_ij and all masses are nonnegative, in both the
physical and the investment reading. The inverse problem (which source
masses best explain target support masses) and calibration of K from
observed (M, m) pairs are nonnegative least-squares fits; calibration is
row-independent. The Lawson-Hanson solver in scipy provides the NNLS
kernel; it is deterministic for identical inputs and drives the KKT
residual to solver tolerance on the small dense systems used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
import scipy.optimize

from .core import validate
from .errors import InvalidInputError, NoInformationError, UnderDeterminedError


@dataclass(frozen=True)
class TransferMatrix:
    """Coupling grid: coefficients[i][j] moves source j's mass to support i."""

    coefficients: tuple       # n rows of p entries
    source_ids: tuple         # length p
    support_ids: tuple        # length n

    def __post_init__(self):
        rows = tuple(tuple(float(k) for k in row) for row in self.coefficients)
        object.__setattr__(self, "coefficients", rows)
        object.__setattr__(self, "source_ids", tuple(self.source_ids))
        object.__setattr__(self, "support_ids", tuple(self.support_ids))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coefficients, dtype=float)

    @property
    def n_supports(self) -> int:
        return len(self.support_ids)

    @property
    def n_sources(self) -> int:
        return len(self.source_ids)


@dataclass(frozen=True)
class Observation:
    """One observed (source masses, support masses) pair."""

    source_masses: tuple
    support_masses: tuple

    def __post_init__(self):
        object.__setattr__(self, "source_masses",
                           tuple(float(v) for v in self.source_masses))
        object.__setattr__(self, "support_masses",
                           tuple(float(v) for v in self.support_masses))


class SolveResult(NamedTuple):
    masses: np.ndarray
    residual: float


@validate.register
def _validate_transfer_matrix(obj: TransferMatrix) -> list:
    out = []
    widths = {len(row) for row in obj.coefficients}
    if len(widths) > 1:
        out.append("transfer matrix: ragged coefficient rows")
        return out
    p = widths.pop() if widths else 0
    if len(obj.coefficients) != len(obj.support_ids):
        out.append("transfer matrix: row count differs from support_ids length")
    if p != len(obj.source_ids):
        out.append("transfer matrix: column count differs from source_ids length")
    flat = [k for row in obj.coefficients for k in row]
    if any(not np.isfinite(k) for k in flat):
        out.append("transfer matrix: coefficients must be finite")
    elif any(k < 0 for k in flat):
        out.append("transfer matrix: coefficients must be >= 0")
    if len(set(obj.source_ids)) != len(obj.source_ids):
        out.append("transfer matrix: duplicate source ids")
    if len(set(obj.support_ids)) != len(obj.support_ids):
        out.append("transfer matrix: duplicate support ids")
    return out


@validate.register
def _validate_observation(obj: Observation) -> list:
    out = []
    if any(v < 0 for v in obj.source_masses):
        out.append("observation: source masses must be >= 0")
    if any(v < 0 for v in obj.support_masses):
        out.append("observation: support masses must be >= 0")
    return out


def forward_masses(matrix: TransferMatrix, source_masses: Sequence[float]) -> np.ndarray:
    """Support masses K M produced by the given source masses."""
    M = np.asarray(source_masses, dtype=float)
    if M.shape != (matrix.n_sources,):
        raise InvalidInputError(
            f"expected {matrix.n_sources} source masses, got shape {M.shape}")
    if np.any(M < 0):
        raise InvalidInputError("source masses must be >= 0")
    return matrix.array @ M


def solve_sources(matrix: TransferMatrix, target_masses: Sequence[float]) -> SolveResult:
    """Nonnegative source masses minimizing ||K M - target||_2.

    Returns the masses and the Euclidean residual. When the optimum is not
    unique (column-rank-deficient K), the minimum-norm optimal point is
    selected for reproducibility.
    """
    m = np.asarray(target_masses, dtype=float)
    if m.shape != (matrix.n_supports,):
        raise InvalidInputError(
            f"expected {matrix.n_supports} target masses, got shape {m.shape}")
    if np.any(m < 0):
        raise InvalidInputError("target masses must be >= 0")
    A = matrix.array
    if not A.any():
        raise NoInformationError(
            "all coupling coefficients are zero; sources are unrecoverable")
    x, _ = scipy.optimize.nnls(A, m)
    if np.linalg.matrix_rank(A) < matrix.n_sources:
        x = _min_norm_optimum(A, x)
    residual = float(np.linalg.norm(A @ x - m))
    return SolveResult(masses=x, residual=residual)


def _min_norm_optimum(A: np.ndarray, x0: np.ndarray) -> np.ndarray:
    # Among nonnegative minimizers (all of which share the image A @ x0),
    # pick the smallest-norm one: heavily weight the fit and add a unit
    # ridge block, then re-run NNLS on the stacked system.
    target = A @ x0
    mu = 1e8 / max(float(np.linalg.norm(A, 2)), np.finfo(float).tiny)
    stacked = np.vstack([mu * A, np.eye(A.shape[1])])
    rhs = np.concatenate([mu * target, np.zeros(A.shape[1])])
    x, _ = scipy.optimize.nnls(stacked, rhs)
    return x


def calibrate_matrix(observations: Sequence[Observation],
                     zero_pattern: Optional[Sequence[Sequence[bool]]] = None,
                     source_ids: Optional[Sequence[str]] = None,
                     support_ids: Optional[Sequence[str]] = None) -> TransferMatrix:
    """Fit the coupling grid to observed (M, m) pairs.

    Each support row is an independent nonnegative least-squares problem
    over the observations. zero_pattern, when given, marks entries pinned
    to zero (truthy = forced zero). Rows whose free columns are not spanned
    by the observations raise UnderDeterminedError naming every deficient
    row. Noiseless data generated from a nonnegative grid is recovered
    exactly up to solver tolerance.
    """
    obs = list(observations)
    if not obs:
        raise InvalidInputError("calibration needs at least one observation")
    p = len(obs[0].source_masses)
    n = len(obs[0].support_masses)
    for k, o in enumerate(obs):
        if len(o.source_masses) != p or len(o.support_masses) != n:
            raise InvalidInputError(
                f"observation {k} has inconsistent dimensions")
    if source_ids is None:
        source_ids = tuple(f"source_{j + 1}" for j in range(p))
    if support_ids is None:
        support_ids = tuple(f"support_{i + 1}" for i in range(n))
    if len(source_ids) != p or len(support_ids) != n:
        raise InvalidInputError("label lengths do not match observation dimensions")

    free_mask = np.ones((n, p), dtype=bool)
    if zero_pattern is not None:
        pattern = np.asarray(zero_pattern, dtype=bool)
        if pattern.shape != (n, p):
            raise InvalidInputError(
                f"zero_pattern shape {pattern.shape} does not match ({n}, {p})")
        free_mask = ~pattern

    X = np.array([o.source_masses for o in obs], dtype=float)
    Y = np.array([o.support_masses for o in obs], dtype=float)

    deficient = []
    for i in range(n):
        free = np.flatnonzero(free_mask[i])
        if free.size and np.linalg.matrix_rank(X[:, free]) < free.size:
            deficient.append(support_ids[i])
    if deficient:
        raise UnderDeterminedError(deficient)

    K = np.zeros((n, p))
    for i in range(n):
        free = np.flatnonzero(free_mask[i])
        if free.size:
            K[i, free], _ = scipy.optimize.nnls(X[:, free], Y[:, i])
    return TransferMatrix(coefficients=tuple(map(tuple, K)),
                          source_ids=tuple(source_ids),
                          support_ids=tuple(support_ids))
