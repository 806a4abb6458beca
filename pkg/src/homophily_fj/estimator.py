import warnings

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .dynamics import SimulationConfig, simulate, validate_inputs
from .exceptions import HorizonReachedWithoutConvergence
from .transition import iterate_transition


class HomophilyFJ(TransformerMixin, BaseEstimator):
    """Signed Friedkin-Johnsen dynamics with homophily-driven influence, as a transformer.

    ``fit`` takes the initial opinion matrix (agents as rows, topics as
    columns) and runs the model to its limit. ``transform`` maps any initial
    opinion matrix for the same agents to its limit opinions.

    Parameters
    ----------
    theta : array-like of shape (n_agents,)
        Stubbornness of each agent, strictly inside (0, 1).
    horizon : int
        Maximum number of steps.
    tol_conv : float
        Convergence tolerance on the max-row-sum change of opinions.
    sign_eps : float
        Inner products with magnitude at most this count as zero.

    Attributes
    ----------
    Y_inf_ : ndarray of shape (n_agents, n_topics)
    W_inf_signs_ : ndarray of shape (n_agents, n_agents)
        Limit influence sign pattern; the influence matrix is this divided by n.
    M_inf_ : ndarray of shape (n_agents, n_agents)
        Limit transition matrix, ``Y_inf_ ~= M_inf_ @ X``.
    lock_time_ : int
    n_iter_ : int
    converged_ : bool
    """

    def __init__(self, theta=None, horizon=1_000_000, tol_conv=1e-10, sign_eps=1e-12):
        self.theta = theta
        self.horizon = horizon
        self.tol_conv = tol_conv
        self.sign_eps = sign_eps

    def _config(self, record=False):
        return SimulationConfig(self.horizon, self.tol_conv, self.sign_eps, record=record)

    def _check_X(self, X):
        if self.theta is None:
            raise ValueError("theta must be given (one stubbornness value per agent)")
        X = check_array(X, dtype=float, ensure_all_finite=True)
        X, _ = validate_inputs(X, self.theta, self.sign_eps)
        return X

    def fit(self, X, y=None):
        X = self._check_X(X)
        config = self._config()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HorizonReachedWithoutConvergence)
            result = simulate(X, self.theta, config)
        if not result.converged:
            warnings.warn(
                f"HomophilyFJ did not converge within horizon={self.horizon}",
                HorizonReachedWithoutConvergence,
            )
        trans = iterate_transition(X, self.theta, config, min_steps=result.steps)
        self.n_features_in_ = X.shape[1]
        self.X_fit_ = X
        self.Y_inf_ = np.array(result.Y_inf)
        self.W_inf_signs_ = np.array(result.W_inf_signs)
        self.M_inf_ = np.array(trans.M_inf)
        self.lock_time_ = result.lock_time
        self.n_iter_ = result.steps
        self.converged_ = result.converged
        return self

    def transform(self, X):
        check_is_fitted(self, "Y_inf_")
        X = self._check_X(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} topics, but HomophilyFJ was fitted with {self.n_features_in_}"
            )
        if np.array_equal(X, self.X_fit_):
            return self.Y_inf_.copy()
        return np.array(simulate(X, self.theta, self._config()).Y_inf)

    def fit_transform(self, X, y=None):
        return self.fit(X).Y_inf_.copy()
