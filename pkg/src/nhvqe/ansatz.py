"""Hardware-efficient parameterized circuits.

The layered layout is: per layer, a Ry then an Rz rotation on every qubit
followed by a CNOT ring (control j -> target (j+1) mod n; omitted for a single
qubit), and a trailing Ry+Rz layer at the end, giving 2*n*(layers+1) free
parameters. With depth from :func:`default_depth` the parameter count exceeds
the 2^(n+1) - 2 real degrees of freedom of an n-qubit state, so the circuit is
over-expressive for the system sizes used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import statevector as sv
from .statevector import StateVector


@dataclass(frozen=True, slots=True)
class Gate:
    """One circuit element: an Rx/Ry/Rz rotation or a CNOT.

    Rotations carry ``param_index`` into the parameter vector (or None for a
    fixed standalone gate, with the angle supplied at application time); CNOTs
    carry a control and no parameter.
    """

    kind: str
    target: int
    control: int | None = None
    param_index: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in sv.GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cnot":
            if self.control is None or self.control == self.target:
                raise ValueError("cnot needs a control distinct from its target")
            if self.param_index is not None:
                raise ValueError("cnot takes no parameter")
        else:
            if self.control is not None:
                raise ValueError("rotations take no control")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on a fixed qubit count with ``param_count`` free angles."""

    qubit_count: int
    gates: tuple[Gate, ...]
    param_count: int

    def __post_init__(self) -> None:
        used = [g.param_index for g in self.gates if g.param_index is not None]
        if sorted(used) != list(range(self.param_count)):
            raise ValueError(
                "every parameter index in [0, param_count) must be used exactly once"
            )
        for g in self.gates:
            if not 0 <= g.target < self.qubit_count:
                raise ValueError(f"gate target {g.target} outside 0..{self.qubit_count - 1}")
            if g.control is not None and not 0 <= g.control < self.qubit_count:
                raise ValueError(f"gate control {g.control} outside 0..{self.qubit_count - 1}")


def build_ansatz(n: int, depth: int) -> Circuit:
    """Layered Ry/Rz + CNOT-ring circuit with 2*n*(depth+1) parameters."""
    if n < 1:
        raise ValueError(f"need at least 1 qubit, got {n}")
    if depth < 1:
        raise ValueError(f"need at least 1 layer, got {depth}")
    gates: list[Gate] = []
    p = 0

    def rotation_row() -> None:
        nonlocal p
        for kind in ("ry", "rz"):
            for q in range(n):
                gates.append(Gate(kind=kind, target=q, param_index=p))
                p += 1

    for _ in range(depth):
        rotation_row()
        if n >= 2:
            for j in range(n):
                gates.append(Gate(kind="cnot", target=(j + 1) % n, control=j))
    rotation_row()
    return Circuit(qubit_count=n, gates=tuple(gates), param_count=p)


def default_depth(n: int) -> int:
    """Smallest layer count making the ansatz over-expressive, plus one margin layer.

    Base depth is the smallest L >= 1 with 2*n*(L+1) >= 2^(n+1) - 2 parameters.
    """
    if n < 1:
        raise ValueError(f"need at least 1 qubit, got {n}")
    needed = (1 << (n + 1)) - 2
    base = max(1, math.ceil(needed / (2 * n)) - 1)
    return base + 1


def _run(circuit: Circuit, thetas: np.ndarray) -> np.ndarray:
    """Run the circuit on |0...0> for a batch of parameter rows -> (batch, 2^n)."""
    n = circuit.qubit_count
    batch = thetas.shape[0]
    amps = np.zeros((batch, 1 << n), dtype=np.complex128)
    amps[:, 0] = 1.0
    for g in circuit.gates:
        if g.kind == "cnot":
            amps = sv._apply_cnot_batch(amps, n, g.control, g.target)
        else:
            sv._apply_rotation_batch(amps, n, g.target, g.kind, thetas[:, g.param_index])
    return amps


def _check_theta(circuit: Circuit, theta) -> np.ndarray:
    arr = np.asarray(theta, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != circuit.param_count:
        raise ValueError(
            f"expected {circuit.param_count} parameters, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("parameters must be finite")
    return arr


def prepare(circuit: Circuit, theta) -> StateVector:
    """|phi(theta)>: apply the circuit gates in order to |0...0>."""
    arr = _check_theta(circuit, theta)
    if circuit.qubit_count > sv.QUBIT_LIMIT:
        raise sv.ResourceError(
            f"{circuit.qubit_count} qubits exceeds the state-vector limit {sv.QUBIT_LIMIT}"
        )
    return StateVector(_run(circuit, arr[None, :])[0])


def prepare_batch(circuit: Circuit, thetas: np.ndarray) -> np.ndarray:
    """Amplitudes for many parameter rows at once; shape (batch, 2^n).

    Used by gradient evaluation, where all parameter-shift displacements of one
    point are simulated together.
    """
    arr = np.asarray(thetas, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != circuit.param_count:
        raise ValueError(
            f"expected parameter rows of length {circuit.param_count}, got shape {arr.shape}"
        )
    return _run(circuit, arr)
