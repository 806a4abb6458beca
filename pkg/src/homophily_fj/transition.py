"""Transition-matrix form of the model and checks on its limit objects.

``M(t)`` maps initial opinions to opinions at time ``t``: ``Y(t) = M(t) Y(0)``.
It obeys its own closed recursion driven by the initial Gram matrix
``S0 = Y(0) Y(0)^T``, so it can be iterated without ever forming ``Y(t)``.
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .dynamics import SimulationConfig, _frozen, inf_norm, symmetric_signs, validate_inputs
from .exceptions import DimensionMismatch, SpectralAmbiguous
from .graph import from_sign_matrix, is_structurally_balanced

TOL_EIG = 1e-9
NORM_SLACK = 1e-12
SINGULAR_RATIO = 1e-10
DOMINANCE_TOL = 1e-9


def initial_gram(Y0):
    Y0 = np.asarray(Y0, dtype=float)
    return _frozen(Y0 @ Y0.T)


def transition_step(M, S0, theta, sign_eps=1e-12):
    """One step of the transition recursion.

    Returns ``(M_next, W_signs)`` with ``W_signs = sgn(M S0 M^T)``.
    """
    M = np.asarray(M, dtype=float)
    S0 = np.asarray(S0, dtype=float)
    theta = np.asarray(theta, dtype=float)
    n = M.shape[0]
    if M.shape != (n, n) or S0.shape != (n, n) or theta.shape != (n,):
        raise DimensionMismatch(f"shapes disagree: M{M.shape}, S0{S0.shape}, theta{theta.shape}")
    W = symmetric_signs(M @ S0 @ M.T, sign_eps)
    M_next = (1.0 - theta)[:, None] * ((W.astype(float) @ M) / n) + np.diag(theta)
    return M_next, W


@dataclass
class TransitionRun:
    matrices: List[np.ndarray]  # M(0), M(1), ...
    signs: List[np.ndarray]  # W(1), W(2), ...
    converged: bool

    @property
    def M_inf(self):
        return self.matrices[-1]

    @property
    def W_inf_signs(self):
        return self.signs[-1]


def iterate_transition(Y0, theta, config=None, steps=None, min_steps=0):
    """Iterate ``M(t)`` from the identity.

    With ``steps`` given, exactly that many steps are taken. Otherwise the
    same stopping rule as :func:`homophily_fj.dynamics.simulate` is applied
    to ``M``, but never before ``min_steps`` steps have been taken.
    """
    config = config or SimulationConfig()
    Y0, theta = validate_inputs(Y0, theta, config.sign_eps)
    S0 = initial_gram(Y0)
    n = Y0.shape[0]
    M = np.eye(n)
    matrices, signs = [M], []
    limit = config.horizon if steps is None else steps
    converged = False
    for _ in range(limit):
        M_next, W = transition_step(M, S0, theta, config.sign_eps)
        same = bool(signs) and np.array_equal(W, signs[-1])
        delta = inf_norm(M_next - M)
        matrices.append(M_next)
        signs.append(W)
        M = M_next
        if steps is None and len(signs) >= min_steps and same and delta < config.tol_conv:
            converged = True
            break
    return TransitionRun(matrices, signs, converged)


def equilibrium_residual(M, S0, theta, sign_eps=1e-12):
    """``||M - [(I - Theta)(1/n) sgn(M S0 M^T) M + Theta]||_inf`` (max abs row sum)."""
    M_next, _ = transition_step(M, S0, theta, sign_eps)
    return inf_norm(np.asarray(M, dtype=float) - M_next)


def norm_bound(theta):
    theta = np.asarray(theta, dtype=float)
    return float(np.max(1.0 - theta) + np.max(theta))


@dataclass(frozen=True)
class NormBoundReport:
    passed: bool
    bound: float
    worst_ratio: float
    worst_step: Optional[int]


def check_norm_bound(matrices, theta, start=1):
    """Check ``||M(t)||_inf <= max(1 - theta) + max(theta)`` for every given matrix.

    ``matrices[k]`` is taken to be ``M(start + k)``; pass ``run.matrices[1:]``
    to skip ``M(0) = I``, for which the bound is not claimed.
    """
    bound = norm_bound(theta)
    worst, worst_step = 0.0, None
    for k, M in enumerate(matrices):
        norm = inf_norm(M)
        if norm > worst:
            worst, worst_step = norm, start + k
    return NormBoundReport(worst <= bound + NORM_SLACK, bound, worst / bound, worst_step)


@dataclass(frozen=True)
class WinfReport:
    diag_ok: bool
    eig1: bool
    schur: bool
    balanced: Optional[bool]
    spectral_radius: float

    @property
    def ambiguous(self):
        return not (self.eig1 or self.schur)

    @property
    def ok(self):
        """Diagonal positive, dichotomy resolved, and balance holds whenever eig1."""
        return self.diag_ok and (self.eig1 != self.schur) and (not self.eig1 or bool(self.balanced))


def winf_properties(W_signs, n=None, tol_eig=TOL_EIG, strict=True):
    """Spectral and structural checks on a limit influence sign pattern.

    Either ``(1/n) W`` has eigenvalue 1, in which case its signed graph must
    be structurally balanced, or it is Schur stable. When the spectral radius
    falls in ``[1 - tol_eig, 1 + tol_eig]`` with no eigenvalue near 1 the
    case is ambiguous; ``strict`` raises :class:`SpectralAmbiguous` then,
    otherwise the report is returned with both flags false.
    """
    W_signs = np.asarray(W_signs)
    n = W_signs.shape[0] if n is None else n
    if W_signs.shape != (n, n):
        raise DimensionMismatch(f"W_signs shape {W_signs.shape} does not match n={n}")
    diag_ok = bool(np.all(np.diag(W_signs) == 1))
    # (1/n) W is symmetric, so the spectrum is real
    eigs = np.linalg.eigvalsh(W_signs.astype(float) / n)
    rho = float(np.max(np.abs(eigs)))
    eig1 = bool(np.any(np.abs(eigs - 1.0) < tol_eig))
    schur = rho < 1.0 - tol_eig
    balanced = None
    if eig1:
        balanced = is_structurally_balanced(from_sign_matrix(W_signs)).balanced
    report = WinfReport(diag_ok, eig1, schur, balanced, rho)
    if strict and report.ambiguous:
        raise SpectralAmbiguous(
            f"spectral radius {rho!r} lies within {tol_eig} of 1 without an eigenvalue at 1",
            report,
        )
    return report


@dataclass(frozen=True)
class MinfReport:
    nonsingular: bool
    column_dominant: bool
    diag_positive: bool
    singular_value_ratio: float

    @property
    def ok(self):
        return self.nonsingular and self.column_dominant and self.diag_positive


def minf_properties(M_inf):
    """Nonsingularity, column dominance of the diagonal, and positive diagonal."""
    M = np.asarray(M_inf, dtype=float)
    sv = np.linalg.svd(M, compute_uv=False)
    ratio = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
    diag = np.abs(np.diag(M))
    col_max = np.max(np.abs(M), axis=0)
    return MinfReport(
        nonsingular=ratio >= SINGULAR_RATIO,
        column_dominant=bool(np.all(col_max - diag <= DOMINANCE_TOL)),
        diag_positive=bool(np.all(np.diag(M) > 0)),
        singular_value_ratio=ratio,
    )
