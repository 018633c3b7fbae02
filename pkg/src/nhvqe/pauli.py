"""Algebra of Pauli strings and complex-weighted Pauli sums.

A Pauli string is a tensor product of single-site operators from {I, X, Y, Z},
one letter per qubit. A Pauli sum is a merged linear combination of strings
with complex coefficients; it is the representation used for every operator in
this package (Hamiltonians, observables, and the Hermitized products built
from them).

Convention: qubit j indexes bit j of the basis-state integer label, so qubit 0
is the least significant bit. Dense realizations follow the same ordering,
i.e. ``to_matrix`` equals the Kronecker product ``kron(P_{n-1}, ..., P_0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import DimensionError, ResourceError

#: Largest qubit count for which dense 2^n x 2^n realizations are allowed.
DENSE_QUBIT_LIMIT = 14

#: Terms with |coefficient| below this are dropped when sums are merged.
MERGE_THRESHOLD = 1e-12

_VALID_LETTERS = frozenset("IXYZ")

# Single-site products: (a, b) -> (phase, c) with mat(a) @ mat(b) = phase * mat(c).
_SITE_PRODUCT = {
    ("I", "I"): (1.0 + 0j, "I"),
    ("I", "X"): (1.0 + 0j, "X"),
    ("I", "Y"): (1.0 + 0j, "Y"),
    ("I", "Z"): (1.0 + 0j, "Z"),
    ("X", "I"): (1.0 + 0j, "X"),
    ("Y", "I"): (1.0 + 0j, "Y"),
    ("Z", "I"): (1.0 + 0j, "Z"),
    ("X", "X"): (1.0 + 0j, "I"),
    ("Y", "Y"): (1.0 + 0j, "I"),
    ("Z", "Z"): (1.0 + 0j, "I"),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


@dataclass(frozen=True, slots=True)
class PauliString:
    """Tensor product of single-site Paulis; the letter at index j acts on qubit j.

    Strings carry no phase of their own: phases produced by products are
    returned separately and absorbed into the owning coefficient by
    :class:`PauliSum`.
    """

    letters: str

    def __post_init__(self) -> None:
        if not self.letters or not set(self.letters) <= _VALID_LETTERS:
            raise ValueError(f"invalid Pauli letters: {self.letters!r}")

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls("I" * n)

    @classmethod
    def from_sites(cls, n: int, sites: dict[int, str]) -> "PauliString":
        """String acting as ``sites[j]`` on qubit j and as identity elsewhere."""
        letters = ["I"] * n
        for j, letter in sites.items():
            if not 0 <= j < n:
                raise ValueError(f"site {j} outside 0..{n - 1}")
            letters[j] = letter
        return cls("".join(letters))

    @property
    def qubit_count(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    def masks(self) -> tuple[int, int, int]:
        """Return (x_mask, z_mask, y_count).

        Bit j of x_mask is set when the letter at j flips qubit j (X or Y);
        bit j of z_mask when it contributes a (-1)**bit_j sign (Z or Y).
        Together with y_count these determine the action on basis states:
        ``P|b> = i**y_count * (-1)**popcount(b & z_mask) |b XOR x_mask>``.
        """
        x = z = y = 0
        for j, letter in enumerate(self.letters):
            if letter in "XY":
                x |= 1 << j
            if letter in "ZY":
                z |= 1 << j
            if letter == "Y":
                y += 1
        return x, z, y

    def __str__(self) -> str:
        if self.is_identity:
            return "I"
        return "".join(f"{letter}{j}" for j, letter in enumerate(self.letters) if letter != "I")


def multiply_strings(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Sitewise product: returns (phase, string) with mat(a) @ mat(b) = phase * mat(string).

    The phase is one of {1, -1, 1j, -1j}.
    """
    if a.qubit_count != b.qubit_count:
        raise DimensionError(
            f"cannot multiply strings on {a.qubit_count} and {b.qubit_count} qubits"
        )
    phase = 1.0 + 0j
    out = []
    for x, y in zip(a.letters, b.letters):
        site_phase, letter = _SITE_PRODUCT[x, y]
        phase *= site_phase
        out.append(letter)
    return phase, PauliString("".join(out))


TermLike = tuple[complex, Union[PauliString, str]]


class PauliSum:
    """Merged complex-weighted sum of Pauli strings on a fixed qubit count.

    Terms sharing a letter sequence are merged at construction, terms with
    |coefficient| below :data:`MERGE_THRESHOLD` are dropped, and the surviving
    terms are kept sorted by letter sequence, so equal operators compare equal
    term-for-term. Instances are immutable; every operation returns a new sum.
    """

    __slots__ = ("qubit_count", "_letters", "_coeffs", "_compiled_cache")

    def __init__(self, terms: Iterable[TermLike], qubit_count: int):
        if qubit_count < 1:
            raise ValueError("qubit_count must be >= 1")
        merged: dict[str, complex] = {}
        for coeff, string in terms:
            letters = string.letters if isinstance(string, PauliString) else string
            if len(letters) != qubit_count:
                raise DimensionError(
                    f"term on {len(letters)} qubits in a {qubit_count}-qubit sum"
                )
            if not set(letters) <= _VALID_LETTERS:
                raise ValueError(f"invalid Pauli letters: {letters!r}")
            merged[letters] = merged.get(letters, 0j) + complex(coeff)
        kept = sorted(k for k, c in merged.items() if abs(c) > MERGE_THRESHOLD)
        self.qubit_count = qubit_count
        self._letters = tuple(kept)
        self._coeffs = tuple(merged[k] for k in kept)
        self._compiled_cache: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @classmethod
    def identity(cls, n: int, coeff: complex = 1.0) -> "PauliSum":
        return cls([(coeff, "I" * n)], n)

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls([], n)

    # -- basic inspection ---------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[complex, PauliString], ...]:
        return tuple((c, PauliString(k)) for c, k in zip(self._coeffs, self._letters))

    @property
    def spectral_scale(self) -> float:
        """Sum of |coefficient|; an upper bound on the operator norm."""
        return float(sum(abs(c) for c in self._coeffs))

    def coefficient(self, letters: str) -> complex:
        try:
            return self._coeffs[self._letters.index(letters)]
        except ValueError:
            return 0j

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self._coeffs)

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        return iter(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return (
            self.qubit_count == other.qubit_count
            and self._letters == other._letters
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.qubit_count, self._letters, self._coeffs))

    def allclose(self, other: "PauliSum", tol: float = 1e-12) -> bool:
        """Term-for-term equality of coefficients within ``tol``."""
        if self.qubit_count != other.qubit_count:
            return False
        keys = set(self._letters) | set(other._letters)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= tol for k in keys)

    # -- algebra ------------------------------------------------------------

    def adjoint(self) -> "PauliSum":
        """Hermitian adjoint: coefficients conjugated, strings unchanged."""
        return PauliSum(
            [(c.conjugate(), k) for c, k in zip(self._coeffs, self._letters)],
            self.qubit_count,
        )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        if self.qubit_count != other.qubit_count:
            raise DimensionError(
                f"cannot add sums on {self.qubit_count} and {other.qubit_count} qubits"
            )
        terms = list(zip(self._coeffs, self._letters))
        terms += list(zip(other._coeffs, other._letters))
        return PauliSum(terms, self.qubit_count)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __neg__(self) -> "PauliSum":
        return (-1.0) * self

    def __mul__(self, other: Union["PauliSum", complex, float, int]) -> "PauliSum":
        if isinstance(other, PauliSum):
            if self.qubit_count != other.qubit_count:
                raise DimensionError(
                    f"cannot multiply sums on {self.qubit_count} and "
                    f"{other.qubit_count} qubits"
                )
            products: list[TermLike] = []
            for ca, ka in zip(self._coeffs, self._letters):
                sa = PauliString(ka)
                for cb, kb in zip(other._coeffs, other._letters):
                    phase, string = multiply_strings(sa, PauliString(kb))
                    products.append((ca * cb * phase, string))
            return PauliSum(products, self.qubit_count)
        if isinstance(other, (int, float, complex)):
            return PauliSum(
                [(c * other, k) for c, k in zip(self._coeffs, self._letters)],
                self.qubit_count,
            )
        return NotImplemented

    def __rmul__(self, other: Union[complex, float, int]) -> "PauliSum":
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    # -- dense and vector realizations ---------------------------------------

    def _compiled(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-term basis action, cached: (coeffs, perms, phases).

        For term t, ``P_t |b> = phases[t, b] |perms[t, b]>``. Safe to cache
        because instances are immutable.
        """
        if self._compiled_cache is None:
            dim = 1 << self.qubit_count
            count = len(self._letters)
            idx = np.arange(dim)
            perms = np.empty((count, dim), dtype=np.intp)
            phases = np.empty((count, dim), dtype=np.complex128)
            for t, letters in enumerate(self._letters):
                x_mask, z_mask, y_count = PauliString(letters).masks()
                perms[t] = idx ^ x_mask
                signs = 1 - 2 * (np.bitwise_count(idx & z_mask).astype(np.int64) & 1)
                phases[t] = (1j**y_count) * signs
            coeffs = np.asarray(self._coeffs, dtype=np.complex128)
            self._compiled_cache = (coeffs, perms, phases)
        return self._compiled_cache

    def to_matrix(self, limit: int = DENSE_QUBIT_LIMIT) -> np.ndarray:
        """Dense 2^n x 2^n realization under the bit-j-is-qubit-j convention."""
        if self.qubit_count > limit:
            raise ResourceError(
                f"dense realization of {self.qubit_count} qubits exceeds limit {limit}"
            )
        dim = 1 << self.qubit_count
        out = np.zeros((dim, dim), dtype=np.complex128)
        coeffs, perms, phases = self._compiled()
        cols = np.arange(dim)
        for c, perm, phase in zip(coeffs, perms, phases):
            out[perm, cols] += c * phase
        return out

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Apply the operator to a dense vector without forming its matrix."""
        vec = np.asarray(vector, dtype=np.complex128)
        dim = 1 << self.qubit_count
        if vec.shape != (dim,):
            raise DimensionError(f"expected vector of length {dim}, got {vec.shape}")
        coeffs, perms, phases = self._compiled()
        if len(coeffs) == 0:
            return np.zeros(dim, dtype=np.complex128)
        contrib = coeffs[:, None] * phases * vec[None, :]
        return np.take_along_axis(contrib, perms, axis=1).sum(axis=0)

    def string_expectations(self, states: np.ndarray) -> np.ndarray:
        """Per-string expectations for a batch of row states.

        ``states`` has shape (batch, 2^n); the result e has shape
        (batch, term_count) with ``e[m, t] = <psi_m| P_t |psi_m>``.
        """
        coeffs, perms, phases = self._compiled()
        dim = 1 << self.qubit_count
        if states.ndim != 2 or states.shape[1] != dim:
            raise DimensionError(f"expected states of shape (batch, {dim})")
        if len(coeffs) == 0:
            return np.zeros((states.shape[0], 0), dtype=np.complex128)
        permuted = np.conj(states)[:, perms]  # (batch, terms, dim)
        return np.einsum("btd,td,bd->bt", permuted, phases, states)

    def __str__(self) -> str:
        if not self._letters:
            return "0"
        parts = []
        for c, k in zip(self._coeffs, self._letters):
            parts.append(f"({c.real:g}{c.imag:+g}i)*{PauliString(k)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PauliSum({self!s}, qubits={self.qubit_count})"
