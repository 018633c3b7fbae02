"""Classical baseline: dense diagonalization and exact observables.

Operators are realized as dense 2^n x 2^n matrices and fully diagonalized
(Hermitian inputs take the symmetric path, everything else the general complex
one). Eigenvectors are unit-norm right eigenvectors and observables are plain
self inner products <v|O|v>; a biorthogonal variant using the matching left
eigenvector is available separately for exploration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ResourceError
from .pauli import PauliSum

#: Largest qubit count accepted by :func:`diagonalize`.
DENSE_LIMIT = 12

#: Residual bound: ||H v - lambda v|| <= RESIDUAL_FACTOR * (1 + spectral scale).
RESIDUAL_FACTOR = 1e-9

#: Real parts of eigenvalues closer than this (times 1 + spectral scale) are
#: tied in the ground-selection ordering; exact float ties never occur.
_TIE_TOL = 1e-10


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class Spectrum:
    """All 2^n eigenpairs, sorted by (Re value, Im value) ascending."""

    pairs: tuple[EigenPair, ...]

    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs])


def diagonalize(h: PauliSum, limit: int = DENSE_LIMIT) -> Spectrum:
    """Full eigendecomposition of the dense realization of ``h``.

    Every returned pair satisfies the residual bound; a violation is reported
    as a numerical failure with the offending residual.
    """
    n = h.qubit_count
    if n > limit:
        raise ResourceError(f"diagonalization of {n} qubits exceeds limit {limit}")
    mat = h.to_matrix()
    if h.is_hermitian():
        values, vectors = np.linalg.eigh(mat)
        values = values.astype(np.complex128)
    else:
        values, vectors = np.linalg.eig(mat)
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)

    residuals = np.linalg.norm(mat @ vectors - vectors * values[None, :], axis=0)
    bound = RESIDUAL_FACTOR * (1.0 + h.spectral_scale)
    worst = float(residuals.max())
    if worst > bound:
        raise ArithmeticError(
            f"eigendecomposition residual {worst:.3e} exceeds bound {bound:.3e}"
        )

    order = np.lexsort((values.imag, values.real))
    pairs = tuple(
        EigenPair(complex(values[k]), vectors[:, k].copy(), float(residuals[k]))
        for k in order
    )
    return Spectrum(pairs)


def ground_pair(spectrum: Spectrum, tie_tol: float | None = None) -> EigenPair:
    """Pair with the smallest Re value; ties by smallest |Im|, then smallest Im.

    Comparisons use a small tolerance at each level: complex-conjugate pairs
    come out of the decomposition with real parts (and |Im|) equal only up to
    rounding, so exact float ties never occur and the final smallest-Im rule
    is what picks deterministically between conjugate partners.
    """
    if not spectrum.pairs:
        raise ValueError("empty spectrum")
    values = spectrum.values()
    if tie_tol is None:
        scale = 1.0 + float(np.abs(values).max())
        tie_tol = _TIE_TOL * scale
    lowest_re = values.real.min()
    tied = [p for p in spectrum.pairs if p.value.real <= lowest_re + tie_tol]
    lowest_abs_im = min(abs(p.value.imag) for p in tied)
    tied = [p for p in tied if abs(p.value.imag) <= lowest_abs_im + tie_tol]
    return min(tied, key=lambda p: p.value.imag)


def observable(pair: EigenPair, obs: PauliSum) -> complex:
    """Self inner product <v| obs |v> with the unit-norm right eigenvector."""
    dim = 1 << obs.qubit_count
    if pair.vector.shape != (dim,):
        raise DimensionError(
            f"observable on {obs.qubit_count} qubits, eigenvector of length "
            f"{pair.vector.shape[0]}"
        )
    return complex(np.vdot(pair.vector, obs.apply(pair.vector)))


def susceptibility(pair: EigenPair, mx: PauliSum) -> float:
    """Variance-style susceptibility <Mx^2> - <Mx>^2 (real part)."""
    return float((observable(pair, mx * mx) - observable(pair, mx) ** 2).real)


def biorthogonal_ground_observable(h: PauliSum, obs: PauliSum,
                                   limit: int = DENSE_LIMIT) -> complex:
    """<w| obs |v> / <w| v> with w the ground left eigenvector.

    Exploration-only alternative to :func:`observable`: it weighs the right
    eigenvector against its biorthogonal left partner instead of itself. Not
    used by the sweep pipeline.
    """
    n = h.qubit_count
    if n > limit:
        raise ResourceError(f"diagonalization of {n} qubits exceeds limit {limit}")
    if obs.qubit_count != n:
        raise DimensionError(f"observable on {obs.qubit_count} qubits, operator on {n}")
    mat = h.to_matrix()
    values, vectors = np.linalg.eig(mat)
    scale = 1.0 + float(np.abs(values).max())
    tol = _TIE_TOL * scale
    lowest_re = values.real.min()
    tied = np.flatnonzero(values.real <= lowest_re + tol)
    lowest_abs_im = min(abs(values[i].imag) for i in tied)
    tied = [i for i in tied if abs(values[i].imag) <= lowest_abs_im + tol]
    k = int(min(tied, key=lambda i: values[i].imag))
    # Rows of V^-1 are left eigenvectors with <w_k|v_k> = 1 built in.
    weighted = np.linalg.solve(vectors, obs.to_matrix() @ vectors)
    return complex(weighted[k, k])
