"""Coupled opinion / influence recursion with homophily-driven signed appraisals.

The model evolves an ``n x m`` opinion matrix ``Y`` (agents by topics) as

    W(t+1) = (1/n) sgn(Y(t) Y(t)^T)
    Y(t+1) = (I - Theta) W(t+1) Y(t) + Theta Y(0)

Influence matrices are stored as integer sign matrices; the ``1/n`` scale is
applied whenever they are multiplied.
"""
import warnings
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from .exceptions import (
    DimensionMismatch,
    HorizonReachedWithoutConvergence,
    NonFiniteEntry,
    StubbornnessOutOfRange,
    ZeroColumn,
    ZeroRow,
)

SIGN_DTYPE = np.int8


def _frozen(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SimulationConfig:
    """Stopping rule and numerical knobs for :func:`simulate`.

    ``record=False`` keeps only the final state, which is useful for long
    horizons or parameter sweeps.
    """

    horizon: int = 1_000_000
    tol_conv: float = 1e-10
    sign_eps: float = 1e-12
    record: bool = True

    def __post_init__(self):
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ValueError(f"horizon must be a positive integer, got {self.horizon!r}")
        if not (np.isfinite(self.tol_conv) and self.tol_conv > 0):
            raise ValueError(f"tol_conv must be > 0, got {self.tol_conv!r}")
        if not (np.isfinite(self.sign_eps) and self.sign_eps >= 0):
            raise ValueError(f"sign_eps must be >= 0, got {self.sign_eps!r}")


@dataclass(frozen=True)
class SimulationState:
    """Snapshot at step ``t``.

    ``W_signs`` is the sign pattern that produced ``Y`` (i.e. ``W(t)``); it is
    ``None`` at ``t = 0``.
    """

    t: int
    Y: np.ndarray
    W_signs: Optional[np.ndarray]
    lock_time: Optional[int]


@dataclass
class SimulationResult:
    Y0: np.ndarray
    theta: np.ndarray
    config: SimulationConfig
    converged: bool
    steps: int
    lock_time: Optional[int]
    Y_inf: np.ndarray
    W_inf_signs: np.ndarray
    trajectory: List[SimulationState] = field(default_factory=list)

    @property
    def n_agents(self):
        return self.Y0.shape[0]

    @property
    def n_topics(self):
        return self.Y0.shape[1]

    @property
    def fixed_point_residual(self):
        """Infinity-norm distance between ``Y_inf`` and one more model step."""
        nxt = opinion_step(self.Y_inf, self.Y0, self.theta, self.W_inf_signs)
        return inf_norm(self.Y_inf - nxt)


def inf_norm(A):
    """Maximum absolute row sum (maximum absolute entry for a vector)."""
    A = np.asarray(A, dtype=float)
    if A.ndim == 1:
        return float(np.max(np.abs(A)))
    return float(np.max(np.sum(np.abs(A), axis=1)))


def validate_inputs(Y0, theta, sign_eps=0.0):
    """Check initial opinions and stubbornness and return them as float arrays.

    A 1-D ``Y0`` is treated as a single topic column. A row counts as zero
    when its squared norm is at most ``sign_eps``, since the sign map cannot
    tell it apart from an exactly zero row.

    Raises
    ------
    NonFiniteEntry, DimensionMismatch, StubbornnessOutOfRange, ZeroRow, ZeroColumn
    """
    Y0 = np.array(Y0, dtype=float)
    theta = np.array(theta, dtype=float)
    if Y0.ndim == 1:
        Y0 = Y0.reshape(-1, 1)
    if Y0.ndim != 2 or Y0.shape[0] < 1 or Y0.shape[1] < 1:
        raise DimensionMismatch(f"Y0 must be a non-empty n x m matrix, got shape {Y0.shape}")
    if theta.ndim != 1 or theta.shape[0] != Y0.shape[0]:
        raise DimensionMismatch(
            f"theta must have one entry per agent ({Y0.shape[0]}), got shape {theta.shape}"
        )
    if not np.all(np.isfinite(Y0)):
        raise NonFiniteEntry("Y0 contains NaN or infinite entries")
    if not np.all(np.isfinite(theta)):
        raise NonFiniteEntry("theta contains NaN or infinite entries")
    for i, th in enumerate(theta):
        if not 0.0 < th < 1.0:
            raise StubbornnessOutOfRange(i, float(th))
    zero_rows = np.flatnonzero(~np.any(Y0 != 0, axis=1) | (np.sum(Y0**2, axis=1) <= sign_eps))
    if zero_rows.size:
        raise ZeroRow(int(zero_rows[0]))
    zero_cols = np.flatnonzero(~np.any(Y0 != 0, axis=0))
    if zero_cols.size:
        raise ZeroColumn(int(zero_cols[0]))
    return Y0, theta


def sgn_scalar(x, sign_eps=1e-12):
    if abs(x) <= sign_eps:
        return 0
    return 1 if x > 0 else -1


def sgn(A, sign_eps=1e-12):
    """Entrywise sign with a symmetric zero band ``|a| <= sign_eps``."""
    A = np.asarray(A, dtype=float)
    out = np.sign(A).astype(SIGN_DTYPE)
    out[np.abs(A) <= sign_eps] = 0
    return out


def symmetric_signs(G, sign_eps=1e-12):
    """Signs of a (numerically) symmetric matrix, mirrored from the upper triangle."""
    S = sgn(G, sign_eps)
    upper = np.triu(S)
    return upper + np.triu(S, 1).T


def influence_update(Y, sign_eps=1e-12):
    """Sign pattern of the pairwise inner products of opinion rows."""
    Y = np.asarray(Y, dtype=float)
    return symmetric_signs(Y @ Y.T, sign_eps)


def opinion_step(Y, Y0, theta, W_signs):
    Y = np.asarray(Y, dtype=float)
    Y0 = np.asarray(Y0, dtype=float)
    theta = np.asarray(theta, dtype=float)
    W_signs = np.asarray(W_signs)
    n = Y.shape[0]
    if Y.shape != Y0.shape or theta.shape != (n,) or W_signs.shape != (n, n):
        raise DimensionMismatch(
            f"shapes disagree: Y{Y.shape}, Y0{Y0.shape}, theta{theta.shape}, W{W_signs.shape}"
        )
    social = (W_signs.astype(float) @ Y) / n
    return (1.0 - theta)[:, None] * social + theta[:, None] * Y0


def simulate(Y0, theta, config=None, **overrides):
    """Iterate the model from ``Y0`` until opinions and signs both settle.

    Halts at the first step where ``||Y(t+1) - Y(t)||_inf < tol_conv`` (max
    absolute row sum) and the sign pattern equals the previous one. If
    ``horizon`` steps elapse first, the partial result is returned with
    ``converged=False`` and a :class:`HorizonReachedWithoutConvergence`
    warning.

    Keyword ``overrides`` replace fields of ``config``.
    """
    config = config or SimulationConfig()
    if overrides:
        config = replace(config, **overrides)
    Y0, theta = validate_inputs(Y0, theta, config.sign_eps)
    Y0 = _frozen(Y0)
    theta = _frozen(theta)

    trajectory = [SimulationState(0, Y0, None, None)] if config.record else []
    Y = Y0
    W_prev = None
    lock_time = None
    converged = False
    step = 0
    W = None
    for t in range(config.horizon):
        W = influence_update(Y, config.sign_eps)
        Y_next = opinion_step(Y, Y0, theta, W)
        step = t + 1
        same = W_prev is not None and np.array_equal(W, W_prev)
        if not same:
            lock_time = step
        delta = inf_norm(Y_next - Y)
        Y_next = _frozen(Y_next)
        W = _frozen(W)
        if config.record:
            trajectory.append(SimulationState(step, Y_next, W, lock_time))
        Y, W_prev = Y_next, W
        if same and delta < config.tol_conv:
            converged = True
            break

    if not converged:
        warnings.warn(
            f"no convergence within horizon={config.horizon} steps",
            HorizonReachedWithoutConvergence,
            stacklevel=2,
        )
    if not config.record:
        trajectory = [SimulationState(step, Y, W, lock_time)]
    return SimulationResult(
        Y0=Y0,
        theta=theta,
        config=config,
        converged=converged,
        steps=step,
        lock_time=lock_time,
        Y_inf=Y,
        W_inf_signs=W,
        trajectory=trajectory,
    )


def continue_signs(result, extra_steps=100):
    """Run ``extra_steps`` beyond a converged result and return the sign patterns seen."""
    Y = result.Y_inf
    seen = []
    for _ in range(extra_steps):
        W = influence_update(Y, result.config.sign_eps)
        Y = opinion_step(Y, result.Y0, result.theta, W)
        seen.append(W)
    return seen


def check_influence_lock(result, extra_steps=100):
    """True iff the sign pattern stays bit-identical for ``extra_steps`` more steps."""
    return all(np.array_equal(W, result.W_inf_signs) for W in continue_signs(result, extra_steps))
