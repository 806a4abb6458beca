import numpy as np
import pytest

from conftest import random_instance
from homophily_fj import load_fixture, simulate
from homophily_fj.exceptions import DimensionMismatch, SpectralAmbiguous
from homophily_fj.single_topic import single_topic_minf
from homophily_fj.transition import (
    check_norm_bound,
    equilibrium_residual,
    initial_gram,
    iterate_transition,
    minf_properties,
    norm_bound,
    transition_step,
    winf_properties,
)


def test_first_step_from_identity(rng):
    Y0, theta = random_instance(rng, 6, 3)
    n = Y0.shape[0]
    S0 = initial_gram(Y0)
    M1, W1 = transition_step(np.eye(n), S0, theta)
    np.testing.assert_array_equal(W1, np.sign(S0))
    expected = (1 - theta)[:, None] * np.sign(S0) / n + np.diag(theta)
    np.testing.assert_allclose(M1, expected, rtol=0, atol=1e-15)


def test_antagonistic_pair_by_hand():
    S0 = initial_gram([[1.0], [-1.0]])
    np.testing.assert_array_equal(S0, [[1, -1], [-1, 1]])
    M1, _ = transition_step(np.eye(2), S0, [0.5, 0.5])
    np.testing.assert_allclose(M1, [[0.75, -0.25], [-0.25, 0.75]], rtol=0, atol=1e-15)


def test_step_shape_check():
    with pytest.raises(DimensionMismatch):
        transition_step(np.eye(2), np.eye(3), [0.5, 0.5])


@pytest.mark.parametrize("seed", range(10))
def test_transition_reproduces_opinions(seed):
    rng = np.random.default_rng(seed)
    Y0, theta = random_instance(rng)
    r = simulate(Y0, theta)
    run = iterate_transition(Y0, theta, steps=r.steps)
    for s in r.trajectory:
        err = np.max(np.sum(np.abs(run.matrices[s.t] @ r.Y0 - s.Y), axis=1))
        assert err < 1e-12
        if s.t >= 1:
            np.testing.assert_array_equal(run.signs[s.t - 1], s.W_signs)


def test_norm_bound_values():
    assert norm_bound([0.5, 0.5]) == 1.0
    theta = [2 / 3, 1 / 2, 1 / 3, 1 / 3, 1 / 2, 2 / 3]
    assert norm_bound(theta) == pytest.approx(2 / 3 + 2 / 3)


@pytest.mark.parametrize("name", ["example1", "example2"])
def test_examples_norm_bound_and_equilibrium(name):
    fx = load_fixture(name)
    run = iterate_transition(fx.Y0, fx.theta, fx.config)
    assert run.converged
    assert check_norm_bound(run.matrices[1:], fx.theta).passed
    assert equilibrium_residual(run.M_inf, initial_gram(fx.Y0), fx.theta) < 10 * fx.config.tol_conv


def test_identity_is_excluded_and_not_an_equilibrium():
    fx = load_fixture("example1")
    # ||I||_inf = 1 < bound here, but the check is only claimed from t = 1
    report = check_norm_bound([np.eye(6) * 5], fx.theta, start=1)
    assert not report.passed and report.worst_step == 1
    assert equilibrium_residual(np.eye(6), initial_gram(fx.Y0), fx.theta) > 0


def test_closed_form_is_an_equilibrium():
    y0 = np.array([1.0, -1.0, 3.0, -0.5])
    theta = np.array([0.2, 0.4, 0.6, 0.8])
    M = single_topic_minf(y0, theta)
    assert equilibrium_residual(M, initial_gram(y0[:, None]), theta) < 1e-10


class TestWinf:
    def test_all_positive_has_eigenvalue_one_and_is_balanced(self):
        r = winf_properties(np.ones((3, 3), dtype=np.int8))
        assert r.diag_ok and r.eig1 and not r.schur and r.balanced
        assert r.spectral_radius == pytest.approx(1.0)

    def test_zero_offdiagonal_is_schur(self):
        W = np.array([[1, 0, 1], [0, 1, -1], [1, -1, 1]], dtype=np.int8)
        r = winf_properties(W)
        assert r.schur and not r.eig1 and r.balanced is None and r.ok

    def test_unbalanced_complete_pattern_is_schur(self):
        W = np.array([[1, 1, -1], [1, 1, 1], [-1, 1, 1]], dtype=np.int8)
        r = winf_properties(W)
        assert r.schur and not r.eig1

    def test_ambiguous_band(self):
        # (1/2)[[1,-1],[-1,1]] would have eigenvalue 1; build one with eigenvalue -1 instead
        W = np.array([[-1, -1], [-1, -1]], dtype=np.int8)
        with pytest.raises(SpectralAmbiguous) as exc:
            winf_properties(W)
        assert exc.value.report.ambiguous
        assert not winf_properties(W, strict=False).ok

    @pytest.mark.parametrize("name", ["example1", "example2"])
    def test_examples_resolve(self, name):
        fx = load_fixture(name)
        r = winf_properties(simulate(fx.Y0, fx.theta).W_inf_signs)
        assert r.ok


class TestMinf:
    def test_hand_computed_pair(self):
        r = minf_properties([[0.75, -0.25], [-0.25, 0.75]])
        assert r.nonsingular and r.column_dominant and r.diag_positive

    def test_pure_stubbornness(self):
        assert minf_properties(np.diag([0.3, 0.6, 0.9])).ok

    def test_failures_detected(self):
        assert not minf_properties([[1.0, 1.0], [1.0, 1.0]]).nonsingular
        assert not minf_properties([[0.1, 0.0], [0.5, 0.6]]).column_dominant
        assert not minf_properties([[-0.5, 0.0], [0.0, 0.6]]).diag_positive

    @pytest.mark.parametrize("name", ["example1", "example2"])
    def test_examples(self, name):
        fx = load_fixture(name)
        assert minf_properties(iterate_transition(fx.Y0, fx.theta).M_inf).ok
