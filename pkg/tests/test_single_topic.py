import numpy as np
import pytest

from conftest import random_single_topic
from homophily_fj import simulate
from homophily_fj.exceptions import NotApplicable, StubbornnessOutOfRange, ZeroEntry
from homophily_fj.graph import from_sign_matrix, is_structurally_balanced, SIDE_A
from homophily_fj.single_topic import (
    check_w_lock_single_topic,
    single_topic_minf,
    single_topic_winf,
    single_topic_yinf,
)
from homophily_fj.transition import minf_properties


def test_winf_patterns():
    np.testing.assert_array_equal(single_topic_winf([2.0, 1.0]), [[1, 1], [1, 1]])
    np.testing.assert_array_equal(single_topic_winf([1.0, -1.0]), [[1, -1], [-1, 1]])


def test_winf_example2_first_column():
    y0 = [-18.8898, 42.3380, -6.9793, -31.5184, 40.4881]
    v = np.array([-1, 1, -1, -1, 1])
    np.testing.assert_array_equal(single_topic_winf(y0), np.outer(v, v))


@pytest.mark.parametrize(
    "y0, expected",
    [
        ((1.0, -1.0), [[0.75, -0.25], [-0.25, 0.75]]),
        ((2.0, 1.0), [[0.75, 0.25], [0.25, 0.75]]),
    ],
)
def test_minf_hand_cases(y0, expected):
    np.testing.assert_allclose(single_topic_minf(y0, [0.5, 0.5]), expected, rtol=0, atol=1e-15)


@pytest.mark.parametrize(
    "y0, expected", [((2.0, 1.0), (1.75, 1.25)), ((1.0, -1.0), (1.0, -1.0))]
)
def test_yinf_hand_cases(y0, expected):
    np.testing.assert_allclose(single_topic_yinf(y0, [0.5, 0.5]), expected, rtol=0, atol=1e-12)


def test_minf_diagonal_formula(rng):
    for _ in range(20):
        y0, theta = random_single_topic(rng)
        M = single_topic_minf(y0, theta)
        np.testing.assert_allclose(np.diag(M), theta * (1 + (1 - theta) / theta.sum()), rtol=1e-14)
        assert minf_properties(M).ok


def test_equal_opinions_keep_their_sign(rng):
    for c in (3.0, -0.7):
        theta = rng.uniform(0.05, 0.95, size=7)
        y = single_topic_yinf(np.full(7, c), theta)
        assert np.all(np.sign(y) == np.sign(c))
        np.testing.assert_allclose(simulate(np.full(7, c), theta).Y_inf[:, 0], y, atol=1e-8)


def test_gershgorin_stability(rng):
    for _ in range(50):
        y0, theta = random_single_topic(rng)
        n = len(y0)
        A = (1 - theta)[:, None] * single_topic_winf(y0) / n
        assert np.max(np.abs(np.linalg.eigvals(A))) <= np.max(1 - theta) + 1e-12


def test_rank_one_pattern_is_balanced_along_signs(rng):
    for _ in range(30):
        y0, _ = random_single_topic(rng)
        res = is_structurally_balanced(from_sign_matrix(single_topic_winf(y0)))
        assert res.balanced
        on_a = np.array([s == SIDE_A for s in res.partition])
        v = np.sign(y0)
        # side A is the side of agent 0
        assert np.array_equal(on_a, v == v[0])


def test_lock_check():
    assert check_w_lock_single_topic(simulate([2.0, 1.0], [0.5, 0.5]))
    assert check_w_lock_single_topic(simulate([1.0, -1.0, 3.0], [0.3, 0.8, 0.55]))
    with pytest.raises(NotApplicable):
        check_w_lock_single_topic(simulate([[1.0, 2.0], [3.0, 4.0]], [0.5, 0.5]))


def test_errors():
    with pytest.raises(ZeroEntry) as exc:
        single_topic_minf([1.0, 0.0], [0.5, 0.5])
    assert exc.value.index == 1
    with pytest.raises(ZeroEntry):
        single_topic_winf([1.0, 1e-13])
    with pytest.raises(StubbornnessOutOfRange):
        single_topic_yinf([1.0, 2.0], [0.5, 1.0])
