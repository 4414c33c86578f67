"""Dense-matrix oracles shared by the test modules.

Everything here is built literally from 2x2 kronecker factors and numpy
linear algebra, independent of the bitmask arithmetic inside the package.
"""

import numpy as np

from gaugeqec.pauli import PauliString, PauliSum

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
LETTER_MATS = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def dense_pauli(p: PauliString) -> np.ndarray:
    """Matrix of i^phase * X^x * Z^z with qubit 0 as the leftmost factor."""
    out = np.array([[1]], dtype=complex)
    for q in range(p.n_qubits):
        m = np.eye(2, dtype=complex)
        if (p.x_mask >> q) & 1:
            m = m @ X2
        if (p.z_mask >> q) & 1:
            m = m @ Z2
        out = np.kron(out, m)
    return (1j ** p.phase_exp) * out


def dense_sum(h: PauliSum) -> np.ndarray:
    out = np.zeros((2 ** h.n_qubits, 2 ** h.n_qubits), dtype=complex)
    for c, op in h.complex_terms():
        out = out + c * dense_pauli(op)
    return out


def expm_hermitian(mat: np.ndarray, scale: complex) -> np.ndarray:
    """exp(scale * mat) for Hermitian mat via eigendecomposition."""
    vals, vecs = np.linalg.eigh(mat)
    return (vecs * np.exp(scale * vals)) @ vecs.conj().T


def random_pauli(rng, n_qubits: int) -> PauliString:
    full = (1 << n_qubits) - 1
    return PauliString(
        n_qubits,
        int(rng.integers(0, full + 1)),
        int(rng.integers(0, full + 1)),
        int(rng.integers(0, 4)),
    )


def random_hermitian_pauli(rng, n_qubits: int) -> PauliString:
    ops = {}
    for q in range(n_qubits):
        letter = "IXYZ"[rng.integers(0, 4)]
        if letter != "I":
            ops[q] = letter
    sign = int(rng.integers(0, 2)) * 2
    return PauliString.from_ops(n_qubits, ops, phase_exp=sign)


def random_state(rng, n_qubits: int) -> np.ndarray:
    vec = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return vec / np.linalg.norm(vec)
