"""Recursive multiport interferometer circuits: generators, noise, experiments."""

from .circuit import (
    BEAM_SPLITTER,
    PHASE_SHIFTER,
    SWAP,
    Circuit,
    Element,
    Layer,
    apply,
    beam_splitter,
    circuit_matrix,
    concat,
    depth,
    element_count,
    empty_circuit,
    inverse,
    is_lossless,
    phase_shifter,
    swap,
)
from .experiments import (
    ExperimentResult,
    ExperimentSpec,
    SummaryStats,
    fd_histogram,
    fidelity,
    haar_state,
    run_experiment,
    run_grover_experiment,
    run_qft_experiment,
    summarize,
)
from .generators import (
    FAMILIES,
    build,
    count_formula,
    depth_formula,
    grover_inversion,
    grover_iterations,
    grover_search,
    oracle,
    phi,
    prep,
    qft,
    shuffle_sigma,
    v_circuit,
)
from .netlist import (
    parse_circuit,
    parse_fidelities,
    parse_results_csv,
    render_fidelities,
    render_results_csv,
    serialize_circuit,
)
from .noise import NoiseParams, realize, rectified_gaussian, sample_noise, trial_rng
from .verify import CheckResult, all_passed, run_verification

__version__ = "0.1.0"

__all__ = [
    "BEAM_SPLITTER",
    "PHASE_SHIFTER",
    "SWAP",
    "Circuit",
    "Element",
    "Layer",
    "apply",
    "beam_splitter",
    "circuit_matrix",
    "concat",
    "depth",
    "element_count",
    "empty_circuit",
    "inverse",
    "is_lossless",
    "phase_shifter",
    "swap",
    "ExperimentResult",
    "ExperimentSpec",
    "SummaryStats",
    "fd_histogram",
    "fidelity",
    "haar_state",
    "run_experiment",
    "run_grover_experiment",
    "run_qft_experiment",
    "summarize",
    "FAMILIES",
    "build",
    "count_formula",
    "depth_formula",
    "grover_inversion",
    "grover_iterations",
    "grover_search",
    "oracle",
    "phi",
    "prep",
    "qft",
    "shuffle_sigma",
    "v_circuit",
    "parse_circuit",
    "parse_fidelities",
    "parse_results_csv",
    "render_fidelities",
    "render_results_csv",
    "serialize_circuit",
    "NoiseParams",
    "realize",
    "rectified_gaussian",
    "sample_noise",
    "trial_rng",
    "CheckResult",
    "all_passed",
    "run_verification",
]
