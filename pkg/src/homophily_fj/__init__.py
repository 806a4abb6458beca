"""Friedkin-Johnsen opinion dynamics with homophily-driven signed influence."""
from .dynamics import (
    SimulationConfig,
    SimulationResult,
    SimulationState,
    check_influence_lock,
    influence_update,
    opinion_step,
    sgn_scalar,
    simulate,
    validate_inputs,
)
from .estimator import HomophilyFJ
from .exceptions import (
    AsymmetricInput,
    DimensionMismatch,
    HorizonReachedWithoutConvergence,
    NonFiniteEntry,
    NotApplicable,
    ParseError,
    SpectralAmbiguous,
    StubbornnessOutOfRange,
    ValidationError,
    ZeroColumn,
    ZeroEntry,
    ZeroRow,
)
from .graph import SignedGraph, from_sign_matrix, is_structurally_balanced, to_dot
from .io import RunReport, Scenario, load_fixture, load_scenario, run, save_scenario
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
    transition_step,
    winf_properties,
)

__version__ = "0.1.0"
