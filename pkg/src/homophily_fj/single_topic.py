"""Closed-form limits when agents discuss a single topic (m = 1).

With one topic the sign pattern is ``v v^T`` where ``v = sgn(y(0))``, and it
never changes after the first step. The limit transition matrix is then

    M_inf = [I + (I - Theta) v v^T / sum(theta)] Theta
"""
import numpy as np

from .dynamics import validate_inputs
from .exceptions import NotApplicable, ZeroEntry


def _signs_of(y0, sign_eps):
    y0 = np.asarray(y0, dtype=float)
    if y0.ndim == 2 and y0.shape[1] == 1:
        y0 = y0[:, 0]
    if y0.ndim != 1:
        raise NotApplicable(f"expected a single-topic opinion vector, got shape {y0.shape}")
    for i, x in enumerate(y0):
        if not np.isfinite(x) or abs(x) <= sign_eps:
            raise ZeroEntry(i, float(x))
    return y0, np.sign(y0).astype(np.int8)


def sign_vector(y0, sign_eps=1e-12):
    return _signs_of(y0, sign_eps)[1]


def single_topic_winf(y0, sign_eps=1e-12):
    v = sign_vector(y0, sign_eps)
    return np.outer(v, v).astype(np.int8)


def single_topic_minf(y0, theta, sign_eps=1e-12):
    y0, v = _signs_of(y0, sign_eps)
    _, theta = validate_inputs(y0, theta)
    n = y0.shape[0]
    vf = v.astype(float)
    inner = np.eye(n) + np.outer((1.0 - theta) * vf, vf) / theta.sum()
    return inner * theta[None, :]


def single_topic_yinf(y0, theta, sign_eps=1e-12):
    y0 = np.asarray(y0, dtype=float).reshape(-1)
    return single_topic_minf(y0, theta, sign_eps) @ y0


def check_w_lock_single_topic(result):
    """True iff every recorded sign pattern from step 1 on equals ``v(0) v(0)^T``.

    ``result`` is a recorded :class:`~homophily_fj.dynamics.SimulationResult`
    with one topic.
    """
    if result.n_topics != 1:
        raise NotApplicable(f"single-topic lock check needs m = 1, got m = {result.n_topics}")
    expected = single_topic_winf(result.Y0[:, 0], result.config.sign_eps)
    patterns = [s.W_signs for s in result.trajectory if s.t >= 1]
    if not patterns:
        raise NotApplicable("result has no recorded steps")
    return all(np.array_equal(W, expected) for W in patterns)
