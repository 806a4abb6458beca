"""Scenario files, full-check runs, and result serialization.

A scenario file is a JSON document::

    {"name": "...", "Y0": [[...], ...], "theta": [...],
     "horizon": 1000000, "tol_conv": 1e-10, "sign_eps": 1e-12}

The last three keys are optional. A run directory holds ``trajectory.csv``
(``t,agent,topic,opinion``), ``influence.csv`` (``t,i,j,sign``),
``summary.json`` and ``graph.dot``. Agent and topic indices in output files
are 1-based.
"""
import csv
import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from .dynamics import SimulationConfig, check_influence_lock, inf_norm, simulate, validate_inputs
from .exceptions import ParseError
from .graph import from_sign_matrix, to_dot
from .single_topic import (
    check_w_lock_single_topic,
    single_topic_minf,
    single_topic_winf,
    single_topic_yinf,
)
from .transition import (
    check_norm_bound,
    equilibrium_residual,
    initial_gram,
    iterate_transition,
    minf_properties,
    winf_properties,
)

PASS, FAIL, AMBIGUOUS, NOT_APPLICABLE = "pass", "fail", "ambiguous", "n/a"

EQUIVALENCE_TOL = 1e-12
CLOSED_FORM_TOL = 1e-8
LOCK_EXTRA_STEPS = 100

FIXTURES = ("example1", "example2")


@dataclass
class Scenario:
    name: str
    Y0: np.ndarray
    theta: np.ndarray
    config: SimulationConfig = field(default_factory=SimulationConfig)

    def __post_init__(self):
        self.Y0, self.theta = validate_inputs(self.Y0, self.theta, self.config.sign_eps)

    def to_dict(self):
        return {
            "name": self.name,
            "Y0": self.Y0.tolist(),
            "theta": self.theta.tolist(),
            "horizon": self.config.horizon,
            "tol_conv": self.config.tol_conv,
            "sign_eps": self.config.sign_eps,
        }


def _bool(x):
    return PASS if x else FAIL


def scenario_from_dict(data, source="<scenario>"):
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("Y0", "theta"):
        if key not in data:
            raise ParseError(f"{source}: missing required field", key)
    Y0, theta = data["Y0"], data["theta"]
    if not isinstance(Y0, list) or not all(isinstance(r, list) for r in Y0):
        raise ParseError(f"{source}: must be an array of rows", "Y0")
    if len({len(r) for r in Y0}) > 1:
        raise ParseError(f"{source}: rows have unequal lengths", "Y0")
    if not isinstance(theta, list):
        raise ParseError(f"{source}: must be an array", "theta")
    for key, values in (("Y0", [x for r in Y0 for x in r]), ("theta", theta)):
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in values):
            raise ParseError(f"{source}: entries must be numbers", key)
    defaults = SimulationConfig()
    try:
        config = SimulationConfig(
            horizon=int(data.get("horizon", defaults.horizon)),
            tol_conv=float(data.get("tol_conv", defaults.tol_conv)),
            sign_eps=float(data.get("sign_eps", defaults.sign_eps)),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{source}: {exc}", "config") from exc
    name = str(data.get("name", Path(str(source)).stem))
    return Scenario(name, Y0, theta, config)


def load_scenario(path):
    """Read and validate a scenario file.

    Raises :class:`ParseError` for malformed documents and a
    :class:`~homophily_fj.exceptions.ValidationError` subclass when the
    values break the model assumptions.
    """
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return scenario_from_dict(data, source=path)


def load_fixture(name):
    """One of the bundled scenarios, ``"example1"`` or ``"example2"``."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    text = resources.files("homophily_fj").joinpath("fixtures", f"{name}.json").read_text()
    return scenario_from_dict(json.loads(text), source=name)


def dumps_scenario(scenario):
    # one matrix row per line keeps fixtures readable; json emits shortest round-trip floats
    d = scenario.to_dict()
    rows = ",\n    ".join(json.dumps(r) for r in d["Y0"])
    return (
        "{\n"
        f'  "name": {json.dumps(d["name"])},\n'
        f'  "Y0": [\n    {rows}\n  ],\n'
        f'  "theta": {json.dumps(d["theta"])},\n'
        f'  "horizon": {d["horizon"]},\n'
        f'  "tol_conv": {json.dumps(d["tol_conv"])},\n'
        f'  "sign_eps": {json.dumps(d["sign_eps"])}\n'
        "}\n"
    )


def save_scenario(scenario, path):
    Path(path).write_text(dumps_scenario(scenario))


@dataclass
class RunReport:
    name: str
    converged: bool
    steps: int
    lock_time: Optional[int]
    Y_inf: np.ndarray
    W_inf_signs: np.ndarray
    M_inf: np.ndarray
    property_results: Dict[str, str]
    residuals: Dict[str, float]
    closed_form: Optional[Dict[str, list]] = None
    result: object = field(default=None, repr=False)

    @property
    def all_pass(self):
        return all(v in (PASS, NOT_APPLICABLE) for v in self.property_results.values())

    @property
    def exit_code(self):
        if not self.converged:
            return 2
        return 0 if self.all_pass else 3

    def to_dict(self):
        return {
            "name": self.name,
            "converged": self.converged,
            "steps": self.steps,
            "lock_time": self.lock_time,
            "Y_inf": self.Y_inf.tolist(),
            "W_inf_signs": self.W_inf_signs.astype(int).tolist(),
            "M_inf": self.M_inf.tolist(),
            "property_results": dict(self.property_results),
            "residuals": dict(self.residuals),
            "closed_form": self.closed_form,
        }


def run(scenario, out_dir=None, **overrides):
    """Simulate a scenario, evaluate every applicable invariant, optionally write files.

    ``overrides`` replace fields of the scenario's config (``horizon``,
    ``tol_conv``, ``sign_eps``). Files are written even when the run does not
    converge.
    """
    config = replace(scenario.config, record=True, **overrides)
    result = simulate(scenario.Y0, scenario.theta, config)
    Y0, theta = result.Y0, result.theta
    n, m = Y0.shape
    checks = {}
    residuals = {}

    checks["converged"] = _bool(result.converged)
    fp = result.fixed_point_residual
    residuals["fixed_point"] = fp
    checks["fixed_point_residual"] = _bool(result.converged and fp < 10 * config.tol_conv)
    checks["no_zero_rows"] = _bool(
        all(np.all(np.sum(s.Y**2, axis=1) > config.sign_eps) for s in result.trajectory)
    )

    # transition matrices: cover every simulated step, then run to their own convergence
    trans = iterate_transition(Y0, theta, config, min_steps=result.steps)
    M_inf = trans.M_inf
    eq_err = max(
        inf_norm(trans.matrices[s.t] @ Y0 - s.Y) for s in result.trajectory
    )
    residuals["transition_equivalence"] = eq_err
    checks["transition_equivalence"] = _bool(eq_err < EQUIVALENCE_TOL)
    nb = check_norm_bound(trans.matrices[1:], theta)
    residuals["norm_bound_worst_ratio"] = nb.worst_ratio
    checks["norm_bound"] = _bool(nb.passed)
    S0 = initial_gram(Y0)
    eq_res = equilibrium_residual(M_inf, S0, theta, config.sign_eps)
    residuals["equilibrium"] = eq_res
    checks["equilibrium_residual"] = _bool(trans.converged and eq_res < 10 * config.tol_conv)

    W_inf = result.W_inf_signs
    wr = winf_properties(W_inf, n, strict=False)
    residuals["winf_spectral_radius"] = wr.spectral_radius
    checks["winf_diagonal"] = _bool(wr.diag_ok)
    checks["winf_dichotomy"] = AMBIGUOUS if wr.ambiguous else PASS
    checks["winf_balanced_if_eig1"] = NOT_APPLICABLE if not wr.eig1 else _bool(wr.balanced)

    if np.all(W_inf != 0) and result.converged:
        locked = result.lock_time is not None and check_influence_lock(result, LOCK_EXTRA_STEPS)
        checks["influence_lock"] = _bool(locked)
    else:
        checks["influence_lock"] = NOT_APPLICABLE

    mr = minf_properties(M_inf)
    residuals["minf_singular_value_ratio"] = mr.singular_value_ratio
    checks["minf_nonsingular"] = _bool(mr.nonsingular)
    checks["minf_column_dominant"] = _bool(mr.column_dominant)
    checks["minf_diag_positive"] = _bool(mr.diag_positive)

    closed_form = None
    if m == 1:
        y0 = Y0[:, 0]
        y_cf = single_topic_yinf(y0, theta, config.sign_eps)
        M_cf = single_topic_minf(y0, theta, config.sign_eps)
        err = inf_norm(y_cf - result.Y_inf[:, 0])
        residuals["closed_form"] = err
        residuals["closed_form_equilibrium"] = equilibrium_residual(M_cf, S0, theta, config.sign_eps)
        checks["w_lock_single_topic"] = _bool(check_w_lock_single_topic(result))
        checks["closed_form_match"] = _bool(err < CLOSED_FORM_TOL)
        closed_form = {
            "W_inf_signs": single_topic_winf(y0, config.sign_eps).astype(int).tolist(),
            "M_inf": M_cf.tolist(),
            "y_inf": y_cf.tolist(),
        }

    report = RunReport(
        name=scenario.name,
        converged=result.converged,
        steps=result.steps,
        lock_time=result.lock_time,
        Y_inf=np.array(result.Y_inf),
        W_inf_signs=np.array(W_inf),
        M_inf=np.array(M_inf),
        property_results=checks,
        residuals=residuals,
        closed_form=closed_form,
        result=result,
    )
    if out_dir is not None:
        write_run(report, out_dir)
    return report


def write_trajectory_csv(result, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "agent", "topic", "opinion"])
        for s in result.trajectory:
            for i, row in enumerate(s.Y):
                for j, x in enumerate(row):
                    w.writerow([s.t, i + 1, j + 1, repr(float(x))])


def write_influence_csv(result, path):
    n = result.n_agents
    with open(path, "w", newline="") as fh:
        fh.write(f"# influence weight = sign / n with n = {n}\n")
        w = csv.writer(fh)
        w.writerow(["t", "i", "j", "sign"])
        for s in result.trajectory:
            if s.W_signs is None:
                continue
            for i in range(n):
                for j in range(n):
                    w.writerow([s.t, i + 1, j + 1, int(s.W_signs[i, j])])


def write_run(report, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(report.result, out / "trajectory.csv")
    write_influence_csv(report.result, out / "influence.csv")
    (out / "summary.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    (out / "graph.dot").write_text(to_dot(from_sign_matrix(report.W_inf_signs)))
    return out


def read_influence_csv(path):
    """Sign matrices by step from an ``influence.csv`` file."""
    by_t = {}
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        for r in rows:
            by_t.setdefault(int(r["t"]), []).append((int(r["i"]), int(r["j"]), int(r["sign"])))
    out = {}
    for t, entries in by_t.items():
        n = max(i for i, _, _ in entries)
        W = np.zeros((n, n), dtype=np.int8)
        for i, j, s in entries:
            W[i - 1, j - 1] = s
        out[t] = W
    return out


def export_dot(run_dir):
    """Regenerate ``graph.dot`` from a run directory's ``summary.json``."""
    run_dir = Path(run_dir)
    summary_path = run_dir / "summary.json"
    try:
        summary = json.loads(summary_path.read_text())
        W = np.array(summary["W_inf_signs"], dtype=np.int8)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ParseError(f"{summary_path}: {exc}") from exc
    dot = to_dot(from_sign_matrix(W))
    (run_dir / "graph.dot").write_text(dot)
    return dot
