"""Regenerate tests/golden/ from the extended-precision oracle.

    python tests/make_goldens.py

Limit opinions and sign patterns come from the oracle alone. The DOT files
are rendered from the engine's run, and only after its limit matches the
oracle to 1e-8.
"""
import json
import sys
from pathlib import Path

import numpy as np

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from oracle import run_oracle  # noqa: E402

from homophily_fj import from_sign_matrix, load_fixture, simulate, to_dot  # noqa: E402

GOLDEN = HERE / "golden"


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name in ("example1", "example2"):
        s = load_fixture(name)
        Y, W = run_oracle(s.Y0.tolist(), s.theta.tolist())
        Y_inf = [[float(x) for x in row] for row in Y]
        (GOLDEN / f"{name}.json").write_text(
            json.dumps({"name": name, "oracle_steps": 10_000, "Y_inf": Y_inf, "W_inf_signs": W}, indent=2)
            + "\n"
        )
        r = simulate(s.Y0, s.theta, s.config)
        err = float(np.max(np.abs(np.array(Y_inf) - r.Y_inf)))
        if not (r.converged and err < 1e-8 and np.array_equal(r.W_inf_signs, np.array(W))):
            raise SystemExit(f"{name}: engine disagrees with oracle (max err {err:g}); DOT not written")
        (GOLDEN / f"{name}.dot").write_text(to_dot(from_sign_matrix(r.W_inf_signs)))
        print(f"{name}: max |engine - oracle| = {err:.3g}")


if __name__ == "__main__":
    main()
