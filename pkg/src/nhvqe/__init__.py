"""Variational eigensolver for non-Hermitian Ising chains.

The package decomposes operators into Pauli sums (:mod:`nhvqe.pauli`), builds
the transverse-field Ising chain and its imaginary-field variant
(:mod:`nhvqe.model`), simulates parameterized circuits on dense state vectors
(:mod:`nhvqe.statevector`, :mod:`nhvqe.ansatz`), minimizes the Hermitized
eigenpair cost (:mod:`nhvqe.solver`), checks everything against full dense
diagonalization (:mod:`nhvqe.exact`), and drives parameter sweeps with CSV and
SVG output (:mod:`nhvqe.sweep`, :mod:`nhvqe.cli`).
"""

from .ansatz import Circuit, Gate, build_ansatz, default_depth, prepare
from .errors import DimensionError, ResourceError
from .exact import EigenPair, Spectrum, diagonalize, ground_pair, observable, susceptibility
from .model import ModelConfig, build_hamiltonian, build_mx, build_nh_tim, build_tim
from .pauli import PauliString, PauliSum, multiply_strings
from .solver import (
    SolveResult,
    SolverConfig,
    Stage,
    build_m_minus,
    build_m_plus,
    cost_plus,
    gradient,
    optimal_energy,
    solve,
)
from .statevector import (
    NOISELESS,
    NoiseConfig,
    StateVector,
    apply_gate,
    apply_pauli_sum,
    expectation,
    new_zero_state,
)
from .sweep import SweepConfig, SweepResult, compare, interpolate_peak, read_csv, render_svg, run_sweep, write_csv

__all__ = [
    "Circuit",
    "DimensionError",
    "EigenPair",
    "Gate",
    "ModelConfig",
    "NOISELESS",
    "NoiseConfig",
    "PauliString",
    "PauliSum",
    "ResourceError",
    "SolveResult",
    "SolverConfig",
    "Spectrum",
    "Stage",
    "StateVector",
    "SweepConfig",
    "SweepResult",
    "apply_gate",
    "apply_pauli_sum",
    "build_ansatz",
    "build_hamiltonian",
    "build_m_minus",
    "build_m_plus",
    "build_mx",
    "build_nh_tim",
    "build_tim",
    "compare",
    "cost_plus",
    "default_depth",
    "diagonalize",
    "expectation",
    "gradient",
    "ground_pair",
    "interpolate_peak",
    "multiply_strings",
    "new_zero_state",
    "observable",
    "optimal_energy",
    "prepare",
    "read_csv",
    "render_svg",
    "run_sweep",
    "solve",
    "susceptibility",
    "write_csv",
]

__version__ = "0.1.0"
