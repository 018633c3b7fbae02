"""Ising-chain Hamiltonians and observables as Pauli sums.

Two periodic chains are provided: the transverse-field Ising chain with a real
field of strength gamma, and its non-Hermitian variant where the field is
purely imaginary with strength gamma_i. Both sum the bond term literally over
j = 0..n-1 with site (j+1) taken mod n, so for n = 2 the single bond appears
twice (coefficient -2). The ZZ coupling constant is fixed at 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliString, PauliSum

TIM = "tim"
NH_TIM = "nh-tim"
MODEL_KINDS = (TIM, NH_TIM)


def build_tim(n: int, gamma: float) -> PauliSum:
    """Transverse-field Ising chain: -sum_j [Z_j Z_{j+1} + gamma * X_j]."""
    if n < 2:
        raise ValueError(f"chain needs at least 2 sites, got {n}")
    terms = []
    for j in range(n):
        terms.append((-1.0 + 0j, PauliString.from_sites(n, {j: "Z", (j + 1) % n: "Z"})))
        terms.append((-gamma + 0j, PauliString.from_sites(n, {j: "X"})))
    return PauliSum(terms, n)


def build_nh_tim(n: int, gamma_i: float) -> PauliSum:
    """Imaginary-field Ising chain: -sum_j [Z_j Z_{j+1} + i * gamma_i * X_j].

    Splits as H + i*eta with H = -sum Z_j Z_{j+1} and eta = -gamma_i * sum X_j,
    both Hermitian; the result is non-Hermitian whenever gamma_i != 0.
    """
    if n < 2:
        raise ValueError(f"chain needs at least 2 sites, got {n}")
    terms = []
    for j in range(n):
        terms.append((-1.0 + 0j, PauliString.from_sites(n, {j: "Z", (j + 1) % n: "Z"})))
        terms.append((-1j * gamma_i, PauliString.from_sites(n, {j: "X"})))
    return PauliSum(terms, n)


def build_mx(n: int) -> PauliSum:
    """Per-site transverse magnetization (1/n) * sum_j X_j."""
    if n < 1:
        raise ValueError(f"need at least 1 site, got {n}")
    return PauliSum([(1.0 / n, PauliString.from_sites(n, {j: "X"})) for j in range(n)], n)


@dataclass(frozen=True)
class ModelConfig:
    """Which chain to build and at what field strength.

    ``kind = "tim"`` uses ``gamma`` and ignores ``gamma_i``; ``kind = "nh-tim"``
    uses ``gamma_i`` and ignores ``gamma``.
    """

    n: int
    kind: str = TIM
    gamma: float = 0.0
    gamma_i: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}")
        if self.n < 2:
            raise ValueError(f"chain needs at least 2 sites, got {self.n}")

    def build(self) -> PauliSum:
        if self.kind == TIM:
            return build_tim(self.n, self.gamma)
        return build_nh_tim(self.n, self.gamma_i)


def build_hamiltonian(kind: str, n: int, field: float) -> PauliSum:
    """Dispatch on model kind; ``field`` is gamma for tim, gamma_i for nh-tim."""
    if kind == TIM:
        return build_tim(n, field)
    if kind == NH_TIM:
        return build_nh_tim(n, field)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
