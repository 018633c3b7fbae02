"""Shared oracles: dense Pauli realizations built independently of the package.

Everything here goes through explicit 2x2 matrices and numpy.kron so that
package results can be checked against a second, unrelated computation path.
The qubit-0-least-significant convention means kron runs from the highest site
down to site 0.
"""

import numpy as np
import pytest

PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_string(letters: str) -> np.ndarray:
    """kron(P_{n-1}, ..., P_0) for a letter sequence indexed by qubit."""
    out = np.array([[1.0 + 0j]])
    for letter in reversed(letters):
        out = np.kron(out, PAULI_MATS[letter])
    return out


def dense_sum(pauli_sum) -> np.ndarray:
    """Dense realization computed from the term list, not via to_matrix."""
    dim = 1 << pauli_sum.qubit_count
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in pauli_sum:
        out += coeff * dense_string(string.letters)
    return out


def random_pauli_sum(rng, n: int, max_terms: int = 6):
    """Random merged sum with coefficients in the unit square."""
    from nhvqe.pauli import PauliSum

    count = rng.integers(1, max_terms + 1)
    terms = []
    for _ in range(count):
        letters = "".join(rng.choice(list("IXYZ")) for _ in range(n))
        coeff = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((coeff, letters))
    return PauliSum(terms, n)


def random_state(rng, n: int) -> np.ndarray:
    vec = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return vec / np.linalg.norm(vec)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
