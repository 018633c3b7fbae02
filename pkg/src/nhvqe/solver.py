"""Variational eigensolver for non-Hermitian operators.

For an operator ``H`` (which need not be Hermitian) and a complex trial
energy ``E``, the Hermitized products

    M_plus(E)  = (H^dag - conj(E)) (H - E)
    M_minus(E) = (H - E) (H^dag - conj(E))

are Hermitian and positive semi-definite, and ``<phi| M_plus |phi>`` vanishes
exactly when (E, |phi>) is a right eigenpair (M_minus detects left pairs; it
is constructed here but not optimized). The solver minimizes the cost
``C(theta, E) = <phi(theta)| M_plus(E) |phi(theta)>`` over circuit parameters
theta through a configurable sequence of gradient-descent and Adam stages with
random restarts. E starts at a seed value (below the spectrum by default, or a
caller-chosen target) and is held there during theta-only stages; tracking
stages update it every iteration with its closed-form minimizer
``E = <phi| H |phi>``. The seed steers each restart toward the eigenvalue
nearest the seeded E, which is how ground states (and, with an explicit seed,
other parts of the spectrum) are targeted.

Ground-state selection: restarts converge to arbitrary eigenpairs, so next to
the lowest-cost restart the solver also labels a ground candidate — among the
restarts whose noise-free final cost is within a small window of the best, the
energy with the smallest real part wins (real parts compared with a tolerance;
remaining ties broken by smallest |Im|, then smallest Im, matching the exact
diagonalizer's ordering).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .ansatz import Circuit, prepare, prepare_batch
from .pauli import PauliSum
from .statevector import (
    NOISELESS,
    NoiseConfig,
    StateVector,
    derive_seed,
    expectation,
    expectation_batch,
)

GD = "gd"
ADAM = "adam"

#: Restarts whose final cost exceeds ``best_cost * GROUND_COST_WINDOW`` (plus
#: the convergence threshold) are not considered when labeling the ground.
GROUND_COST_WINDOW = 10.0

#: Real parts closer than this are tied when ranking candidate ground energies.
GROUND_REAL_TOL = 1e-4


@dataclass(frozen=True)
class Stage:
    """One optimization stage: a step count, a learning rate, and an optimizer.

    With ``update_energy`` false the stage optimizes theta only, holding E at
    its current value; this is what steers a run toward the eigenvalue nearest
    the seeded E. Tracking stages re-optimize E after every step.
    """

    iterations: int
    learning_rate: float
    optimizer: str = GD
    update_energy: bool = True

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be > 0")
        if self.optimizer not in (GD, ADAM):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")


# Stage 1 pulls theta toward the eigenvalue nearest the seeded E without
# letting E drift; the remaining stages alternate theta steps with the
# closed-form E update, shrinking the step so the Adam orbit radius drops
# below the convergence threshold.
DEFAULT_STAGES = (
    Stage(iterations=300, learning_rate=0.1, optimizer=ADAM, update_energy=False),
    Stage(iterations=400, learning_rate=0.05, optimizer=ADAM),
    Stage(iterations=300, learning_rate=0.01, optimizer=ADAM),
    Stage(iterations=300, learning_rate=0.002, optimizer=ADAM),
)


@dataclass(frozen=True)
class SolverConfig:
    stages: tuple[Stage, ...] = DEFAULT_STAGES
    restarts: int = 5
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    convergence_cost: float = 1e-8
    convergence_grad: float = 1e-6
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    init_seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.convergence_cost <= 0 or self.convergence_grad <= 0:
            raise ValueError("convergence thresholds must be > 0")


@dataclass(frozen=True)
class GroundEstimate:
    """The restart labeled as the ground eigenpair."""

    energy: complex
    theta: np.ndarray
    state: StateVector
    final_cost: float
    restart_index: int


@dataclass(frozen=True)
class SolveResult:
    """Winning restart (lowest noise-free final cost) plus the ground label.

    ``final_cost`` and ``energy`` are re-evaluated without noise even when
    training was noisy, so restart ranking is insensitive to measurement
    noise. ``cost_history`` holds the per-iteration training costs of the
    winning restart (noisy when training was noisy).
    """

    energy: complex
    theta: np.ndarray
    state: StateVector
    final_cost: float
    cost_history: tuple[float, ...]
    restart_index: int
    seed: int
    ground: GroundEstimate


def build_m_plus(h: PauliSum, e: complex) -> PauliSum:
    """(H^dag - conj(E)) (H - E); Hermitian and positive semi-definite."""
    shifted = h - PauliSum.identity(h.qubit_count, complex(e))
    return shifted.adjoint() * shifted


def build_m_minus(h: PauliSum, e: complex) -> PauliSum:
    """(H - E) (H^dag - conj(E)); zero expectation detects left eigenpairs."""
    shifted = h - PauliSum.identity(h.qubit_count, complex(e))
    return shifted * shifted.adjoint()


def cost_plus(theta, e: complex, h: PauliSum, circuit: Circuit,
              noise: NoiseConfig = NOISELESS) -> float:
    """C(theta, E) = <phi(theta)| M_plus(E) |phi(theta)>, evaluated term by term.

    Noise-free this equals ||(H - E)|phi>||^2 and is nonnegative; the noisy
    value is the expectation of the expanded product sum under the per-string
    noise model.
    """
    state = prepare(circuit, theta)
    return expectation(state, build_m_plus(h, e), noise).real


def optimal_energy(theta, h: PauliSum, circuit: Circuit,
                   noise: NoiseConfig = NOISELESS) -> complex:
    """Closed-form minimizer of the cost over E at fixed theta: <phi| H |phi>."""
    return expectation(prepare(circuit, theta), h, noise)


def _shifted_thetas(theta: np.ndarray) -> np.ndarray:
    """Rows [theta + pi/2 e_k, theta - pi/2 e_k] for k = 0..P-1, interleaved."""
    p = theta.shape[0]
    rows = np.repeat(theta[None, :], 2 * p, axis=0)
    ks = np.arange(p)
    rows[2 * ks, ks] += np.pi / 2
    rows[2 * ks + 1, ks] -= np.pi / 2
    return rows


def _gradient_of(m_plus: PauliSum, theta: np.ndarray, circuit: Circuit,
                 noise: NoiseConfig) -> np.ndarray:
    states = prepare_batch(circuit, _shifted_thetas(theta))
    costs = expectation_batch(states, m_plus, noise).real
    return (costs[0::2] - costs[1::2]) / 2.0


def gradient(theta, e: complex, h: PauliSum, circuit: Circuit,
             noise: NoiseConfig = NOISELESS) -> np.ndarray:
    """Parameter-shift gradient of the cost over theta at fixed E.

    Every parameterized gate is a Pauli rotation and M_plus is Hermitian at
    fixed E, so dC/dtheta_k = [C(theta_k + pi/2) - C(theta_k - pi/2)] / 2
    exactly (up to noise).
    """
    arr = np.asarray(theta, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != circuit.param_count:
        raise ValueError(f"expected {circuit.param_count} parameters, got shape {arr.shape}")
    return _gradient_of(build_m_plus(h, e), arr, circuit, noise)


class _Adam:
    def __init__(self, lr: float, beta1: float, beta2: float, eps: float, dim: int):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = np.zeros(dim)
        self.v = np.zeros(dim)
        self.t = 0

    def step(self, theta: np.ndarray, grad: np.ndarray) -> np.ndarray:
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad**2
        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return theta - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


class _GradientDescent:
    def __init__(self, lr: float):
        self.lr = lr

    def step(self, theta: np.ndarray, grad: np.ndarray) -> np.ndarray:
        return theta - self.lr * grad


@dataclass
class _RestartOutcome:
    energy: complex
    theta: np.ndarray
    state: StateVector
    final_cost: float
    history: list[float]


def _run_restart(h: PauliSum, circuit: Circuit, config: SolverConfig,
                 restart_index: int, initial_energy: complex | None) -> _RestartOutcome:
    init_rng = np.random.default_rng([config.init_seed, restart_index])
    noise = config.noise.spawn(restart_index)
    theta = init_rng.uniform(-np.pi, np.pi, circuit.param_count)

    state = prepare(circuit, theta)
    if initial_energy is not None:
        e = complex(initial_energy)
    else:
        # Certain lower bound on every Re(eigenvalue): biases fixed-E stages
        # toward the ground eigenpair.
        e = complex(-(1.0 + h.spectral_scale))
    m_plus = build_m_plus(h, e)
    history: list[float] = [expectation(state, m_plus, noise).real]

    converged = False
    for stage in config.stages:
        if converged:
            break
        if stage.optimizer == ADAM:
            opt = _Adam(stage.learning_rate, config.adam_beta1, config.adam_beta2,
                        config.adam_eps, circuit.param_count)
        else:
            opt = _GradientDescent(stage.learning_rate)
        for _ in range(stage.iterations):
            grad = _gradient_of(m_plus, theta, circuit, noise)
            if float(np.linalg.norm(grad)) < config.convergence_grad:
                break
            theta = opt.step(theta, grad)
            state = prepare(circuit, theta)
            if stage.update_energy:
                e = expectation(state, h, noise)
                m_plus = build_m_plus(h, e)
            cost = expectation(state, m_plus, noise).real
            history.append(cost)
            # Noisy costs fluctuate through zero near convergence, so the
            # threshold stop is only meaningful for exact evaluation.
            if stage.update_energy and noise.exact and cost < config.convergence_cost:
                converged = True
                break

    # Noise-free re-evaluation for ranking and reporting.
    final_state = prepare(circuit, theta)
    final_e = expectation(final_state, h, NOISELESS)
    final_cost = expectation(final_state, build_m_plus(h, final_e), NOISELESS).real
    return _RestartOutcome(final_e, theta, final_state, final_cost, history)


def _ground_index(outcomes: list[_RestartOutcome], config: SolverConfig) -> int:
    """Among restarts near the best cost, smallest Re(E) wins.

    Comparisons are tolerance-based at every level (converged energies carry
    optimizer-scale errors, so exact float ties never happen): real parts
    within GROUND_REAL_TOL are tied, then the smallest |Im| wins with the same
    tolerance, then the smallest Im — which picks deterministically between
    complex-conjugate partners.
    """
    best_cost = min(o.final_cost for o in outcomes)
    window = best_cost * GROUND_COST_WINDOW + config.convergence_cost
    candidates = [i for i, o in enumerate(outcomes) if o.final_cost <= window]
    lowest_re = min(outcomes[i].energy.real for i in candidates)
    tied = [i for i in candidates if outcomes[i].energy.real <= lowest_re + GROUND_REAL_TOL]
    lowest_abs_im = min(abs(outcomes[i].energy.imag) for i in tied)
    tied = [i for i in tied if abs(outcomes[i].energy.imag) <= lowest_abs_im + GROUND_REAL_TOL]
    return min(tied, key=lambda i: outcomes[i].energy.imag)


def solve(h: PauliSum, circuit: Circuit, config: SolverConfig = SolverConfig(),
          initial_energy: complex | None = None) -> SolveResult:
    """Run the staged optimization over random restarts.

    Each restart draws theta ~ Uniform(-pi, pi) from a stream derived from
    (init_seed, restart index) and seeds E below the spectrum, at
    -(1 + sum_k |c_k|), so fixed-E stages pull toward the ground eigenpair;
    pass ``initial_energy`` to scan toward a chosen part of the spectrum
    instead. Non-convergence is reported through ``final_cost``, never as an
    error.
    """
    if h.qubit_count != circuit.qubit_count:
        raise ValueError(
            f"operator on {h.qubit_count} qubits, circuit on {circuit.qubit_count}"
        )
    outcomes = [
        _run_restart(h, circuit, config, r, initial_energy)
        for r in range(config.restarts)
    ]
    winner = min(range(len(outcomes)), key=lambda i: outcomes[i].final_cost)
    g = _ground_index(outcomes, config)
    ground = GroundEstimate(
        energy=outcomes[g].energy,
        theta=outcomes[g].theta,
        state=outcomes[g].state,
        final_cost=outcomes[g].final_cost,
        restart_index=g,
    )
    won = outcomes[winner]
    return SolveResult(
        energy=won.energy,
        theta=won.theta,
        state=won.state,
        final_cost=won.final_cost,
        cost_history=tuple(won.history),
        restart_index=winner,
        seed=config.init_seed,
        ground=ground,
    )


def noiseless_config(config: SolverConfig) -> SolverConfig:
    """The same schedule with exact evaluation (epsilon = 0)."""
    return replace(config, noise=NoiseConfig(0.0, config.noise.seed))
