"""Dense n-qubit state simulation.

States are immutable snapshots of 2^n complex amplitudes under the
bit-j-is-qubit-j labeling shared with :mod:`nhvqe.pauli`. Gate application and
Pauli-sum application never form dense matrices.

Rotation gates follow the convention R_a(theta) = exp(-i * theta * sigma_a / 2).

Expectation values optionally model measurement shot noise: with a noise
half-width epsilon > 0, every Pauli string in the sum receives an independent
additive draw from Uniform(-epsilon, epsilon) on the real part of its
expectation before the coefficient weighting. Draws come from the seeded
stream owned by the :class:`NoiseConfig`, so noisy runs are reproducible.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .errors import DimensionError, ResourceError
from .pauli import PauliSum

if TYPE_CHECKING:  # pragma: no cover
    from .ansatz import Gate

#: Largest simulated qubit count (16384 amplitudes keep sweeps laptop-fast).
QUBIT_LIMIT = 14

_NORM_TOL = 1e-8

ROTATION_KINDS = ("rx", "ry", "rz")
GATE_KINDS = ROTATION_KINDS + ("cnot",)


def derive_seed(*keys: int) -> int:
    """Stable child seed from an integer key path (master seed, index, ...)."""
    return int(np.random.SeedSequence(list(keys)).generate_state(1, np.uint64)[0])


class NoiseConfig:
    """Additive uniform measurement noise with a named, seedable stream.

    ``epsilon`` is the half-width of the uniform interval; 0 means exact
    evaluation (and the stream is never consumed). ``spawn`` derives an
    independent child stream, used to give parallel workers and solver
    restarts private streams.
    """

    __slots__ = ("epsilon", "seed", "_rng")

    def __init__(self, epsilon: float = 0.04, seed: int = 0):
        if epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {epsilon}")
        self.epsilon = float(epsilon)
        self.seed = int(seed)
        self._rng: np.random.Generator | None = None

    @property
    def exact(self) -> bool:
        return self.epsilon == 0.0

    def draws(self, shape) -> np.ndarray:
        """Uniform(-epsilon, epsilon) draws advancing the owned stream."""
        if self._rng is None:
            self._rng = np.random.default_rng(self.seed)
        return self._rng.uniform(-self.epsilon, self.epsilon, shape)

    def spawn(self, index: int) -> "NoiseConfig":
        return NoiseConfig(self.epsilon, derive_seed(self.seed, index))

    def __repr__(self) -> str:
        return f"NoiseConfig(epsilon={self.epsilon}, seed={self.seed})"


#: Shared exact-evaluation configuration.
NOISELESS = NoiseConfig(epsilon=0.0, seed=0)


class StateVector:
    """Normalized n-qubit state; operations return new instances.

    Unnormalized vectors (e.g. from :func:`apply_pauli_sum`) are plain numpy
    arrays, never StateVectors.
    """

    __slots__ = ("amplitudes", "qubit_count")

    def __init__(self, amplitudes: np.ndarray):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        n = int(amps.shape[0]).bit_length() - 1
        if amps.ndim != 1 or amps.shape[0] != (1 << n):
            raise DimensionError(f"amplitude count {amps.shape} is not a power of two")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        self.amplitudes = amps
        self.amplitudes.setflags(write=False)
        self.qubit_count = n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(qubits={self.qubit_count})"


def new_zero_state(n: int, limit: int = QUBIT_LIMIT) -> StateVector:
    """The reference state |0...0>."""
    if n < 1:
        raise ValueError(f"need at least 1 qubit, got {n}")
    if n > limit:
        raise ResourceError(f"{n} qubits exceeds the state-vector limit {limit}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


# -- low-level batched kernels -------------------------------------------------
# amps has shape (batch, 2^n) and is C-contiguous; rotations update in place,
# CNOT returns a permuted copy.

def _rotation_factors(kind: str, angles: np.ndarray):
    half = np.asarray(angles, dtype=np.float64) / 2.0
    c = np.cos(half).astype(np.complex128)
    s = np.sin(half)
    if kind == "rx":
        return c, -1j * s, -1j * s, c
    if kind == "ry":
        return c, -s + 0j, s + 0j, c
    if kind == "rz":
        e = np.exp(-1j * half)
        zero = np.zeros_like(e)
        return e, zero, zero, np.conj(e)
    raise ValueError(f"unknown rotation kind {kind!r}")


def _apply_rotation_batch(amps: np.ndarray, n: int, qubit: int, kind: str,
                          angles: np.ndarray) -> None:
    m00, m01, m10, m11 = _rotation_factors(kind, angles)
    view = amps.reshape(amps.shape[0], 1 << (n - 1 - qubit), 2, 1 << qubit)
    a0 = view[:, :, 0, :]
    a1 = view[:, :, 1, :]
    w = (slice(None), None, None)
    new0 = m00[w] * a0 + m01[w] * a1
    new1 = m10[w] * a0 + m11[w] * a1
    view[:, :, 0, :] = new0
    view[:, :, 1, :] = new1


def _cnot_permutation(n: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << n)
    return idx ^ (((idx >> control) & 1) << target)


def _apply_cnot_batch(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    return amps[:, _cnot_permutation(n, control, target)]


# -- public single-state operations ---------------------------------------------

def _check_qubit(n: int, index: int, role: str) -> None:
    if not 0 <= index < n:
        raise ValueError(f"{role} qubit {index} outside 0..{n - 1}")


def apply_gate(state: StateVector, gate: "Gate", angle: float | None = None) -> StateVector:
    """Apply a single gate; rotations take their angle explicitly.

    For gates taken from a parameterized circuit, resolve ``angle`` from the
    parameter vector first (see :func:`nhvqe.ansatz.prepare`).
    """
    n = state.qubit_count
    _check_qubit(n, gate.target, "target")
    amps = state.amplitudes[None, :].copy()
    if gate.kind == "cnot":
        _check_qubit(n, gate.control, "control")
        amps = _apply_cnot_batch(amps, n, gate.control, gate.target)
    elif gate.kind in ROTATION_KINDS:
        if angle is None:
            raise ValueError(f"rotation gate {gate.kind!r} needs an angle")
        _apply_rotation_batch(amps, n, gate.target, gate.kind, np.array([angle]))
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")
    return StateVector(amps[0])


def apply_pauli_sum(state: StateVector, s: PauliSum) -> np.ndarray:
    """Return sum_k c_k P_k |state> as an unnormalized vector, term by term."""
    if s.qubit_count != state.qubit_count:
        raise DimensionError(
            f"operator on {s.qubit_count} qubits applied to a "
            f"{state.qubit_count}-qubit state"
        )
    return s.apply(state.amplitudes)


def expectation(state: StateVector, s: PauliSum, noise: NoiseConfig = NOISELESS) -> complex:
    """<state| S |state>, optionally with per-string uniform measurement noise."""
    return complex(expectation_batch(state.amplitudes[None, :], s, noise)[0])


def expectation_batch(states: np.ndarray, s: PauliSum,
                      noise: NoiseConfig = NOISELESS) -> np.ndarray:
    """Expectations for a batch of row states; one noise draw per (state, string)."""
    dim = 1 << s.qubit_count
    if states.ndim != 2 or states.shape[1] != dim:
        raise DimensionError(f"expected states of shape (batch, {dim})")
    norms = np.linalg.norm(states, axis=1)
    if np.any(np.abs(norms - 1.0) > _NORM_TOL):
        worst = float(np.max(np.abs(norms - 1.0)))
        raise ValueError(f"expectation requires normalized states: |norm - 1| = {worst:.3e}")
    per_string = s.string_expectations(states)  # (batch, terms)
    if not noise.exact and per_string.shape[1]:
        per_string = per_string + noise.draws(per_string.shape)
    coeffs = s._compiled()[0]
    return per_string @ coeffs
