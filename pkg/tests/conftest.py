import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (title, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def random_instance(rng, n_max=15, m_max=8, theta_range=(0.05, 0.95)):
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    Y0 = rng.uniform(-10, 10, size=(n, m))
    theta = rng.uniform(*theta_range, size=n)
    return Y0, theta


def random_single_topic(rng, n_max=20, sign_eps=1e-12):
    n = int(rng.integers(1, n_max + 1))
    y0 = rng.uniform(-10, 10, size=n)
    y0[np.abs(y0) <= sign_eps] = 1.0
    theta = rng.uniform(0.05, 0.95, size=n)
    return y0, theta


def random_sign_matrix(rng, n):
    S = rng.integers(-1, 2, size=(n, n))
    S = np.triu(S, 1)
    S = S + S.T + np.eye(n, dtype=int)
    return S.astype(np.int8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k}. {title}: {detail}")
