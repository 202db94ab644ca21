"""Dense-matrix ground truth.

Every other representation in the package is checked against the explicit
2^n x 2^n operators built here. Qubit 1 is the leftmost Kronecker factor
(most significant bit of the basis index). Matrices are plain complex128
numpy arrays; naive O(8^n) products are fine below the capacity cap.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import CapacityError, DimensionMismatchError
from .gates import GENERIC1Q, Gate
from .pauli import PauliWord

DENSE_QUBIT_CAP = 12
ENV_MAX_QUBITS = "LOCALITY_LAB_MAX_QUBITS"

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)

_I2 = np.eye(2, dtype=complex)
# X^x Z^z per qubit; (1,1) is the matrix X @ Z, not Y (the word's phase
# carries the missing factor of i).
_XZ_FACTORS = {
    (0, 0): _I2,
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),
}

_GATE_MATRICES = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
}


def max_dense_qubits() -> int:
    """The dense cap; the environment may lower it but never raise it."""
    cap = DENSE_QUBIT_CAP
    raw = os.environ.get(ENV_MAX_QUBITS)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError:
            return cap
        if 1 <= value < cap:
            cap = value
    return cap


def _check_capacity(n: int) -> None:
    cap = max_dense_qubits()
    if n > cap:
        raise CapacityError(f"{n} qubits exceed the dense cap of {cap}")


def num_qubits_of(a: np.ndarray) -> int:
    dim = a.shape[0]
    if a.ndim != 2 or a.shape[1] != dim or dim & (dim - 1) or dim == 0:
        raise ValueError(f"not a square power-of-two matrix: shape {a.shape}")
    return dim.bit_length() - 1


def dense_of_word(p: PauliWord) -> np.ndarray:
    """Kronecker-product matrix of a word, with its exact phase."""
    _check_capacity(p.n)
    m = np.array([[_PHASES[p.phase_exp]]])
    for q in range(1, p.n + 1):
        bit = 1 << (q - 1)
        m = np.kron(m, _XZ_FACTORS[int(bool(p.x_mask & bit)), int(bool(p.z_mask & bit))])
    return m


def _bit_of(index: int, qubit: int, n: int) -> int:
    return (index >> (n - qubit)) & 1


def dense_of_gate(g: Gate, n: int) -> np.ndarray:
    """The gate's unitary embedded on n qubits."""
    _check_capacity(n)
    if max(g.targets) > n:
        raise DimensionMismatchError(f"gate targets {g.targets} exceed {n} qubits")
    if g.kind == GENERIC1Q or g.kind in _GATE_MATRICES:
        u2 = g.matrix if g.kind == GENERIC1Q else _GATE_MATRICES[g.kind]
        m = np.array([[1.0 + 0j]])
        for q in range(1, n + 1):
            m = np.kron(m, u2 if q == g.targets[0] else _I2)
        return m
    dim = 1 << n
    a, b = g.targets
    if g.kind == "CZ":
        diag = np.ones(dim, dtype=complex)
        for i in range(dim):
            if _bit_of(i, a, n) and _bit_of(i, b, n):
                diag[i] = -1
        return np.diag(diag)
    if g.kind == "CNOT":
        m = np.zeros((dim, dim), dtype=complex)
        flip = 1 << (n - b)
        for col in range(dim):
            row = col ^ flip if _bit_of(col, a, n) else col
            m[row, col] = 1
        return m
    raise ValueError(f"unknown gate kind {g.kind!r}")


def dense_of_product_state(s) -> np.ndarray:
    """Dense density matrix of a product-notation state.

    Thin alias for ProductState.to_dense(), kept here so every dense
    constructor lives in one module.
    """
    return s.to_dense()


def zero_state_density(n: int) -> np.ndarray:
    _check_capacity(n)
    rho = np.zeros((1 << n, 1 << n), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    dim = u.shape[0]
    return u.shape == (dim, dim) and np.max(np.abs(u @ u.conj().T - np.eye(dim))) <= atol


def conjugate_dense(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    """u a u^dagger, requiring u unitary within 1e-12."""
    if u.shape != a.shape:
        raise DimensionMismatchError(f"shapes differ: {u.shape} vs {a.shape}")
    if not is_unitary(u):
        raise ValueError("conjugating operator is not unitary within 1e-12")
    return u @ a @ u.conj().T


def operators_close(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    """Absolute entrywise comparison; the package-wide equality notion."""
    if a.shape != b.shape:
        return False
    return float(np.max(np.abs(a - b))) <= atol


def assert_density_matrix(a: np.ndarray, atol: float = 1e-10) -> None:
    """Hermitian, unit trace, PSD (eigenvalue floor -1e-10); ValueError otherwise."""
    n = num_qubits_of(a)
    if np.max(np.abs(a - a.conj().T)) > atol:
        raise ValueError("matrix is not Hermitian")
    if abs(np.trace(a) - 1.0) > atol:
        raise ValueError(f"trace is {np.trace(a):.6g}, expected 1")
    eigenvalues = np.linalg.eigvalsh(a)
    if eigenvalues.min() < -1e-10:
        raise ValueError(f"matrix is not PSD (min eigenvalue {eigenvalues.min():.3g})")
    del n


def partial_trace(a: np.ndarray, keep) -> np.ndarray:
    """Trace out every qubit not in ``keep``; kept qubits stay in ascending order."""
    n = num_qubits_of(a)
    kept = sorted(set(int(q) for q in keep))
    if not kept:
        raise ValueError("keep set must be nonempty")
    if kept[0] < 1 or kept[-1] > n:
        raise ValueError(f"keep set {kept} outside [1, {n}]")
    t = a.reshape((2,) * (2 * n))
    removed = 0
    for q in range(1, n + 1):
        if q in kept:
            continue
        remaining = n - removed
        row_axis = (q - 1) - removed
        t = np.trace(t, axis1=row_axis, axis2=row_axis + remaining)
        removed += 1
    k = len(kept)
    return t.reshape((1 << k, 1 << k))


def born_probabilities(rho: np.ndarray, qubits) -> dict[str, float]:
    """Computational-basis outcome probabilities on a subset of qubits.

    Keys are bitstrings whose leftmost character is the smallest kept qubit.
    """
    assert_density_matrix(rho)
    qs = sorted(set(int(q) for q in qubits))
    if len(qs) > 10:
        raise ValueError(f"at most 10 qubits per distribution, got {len(qs)}")
    n = num_qubits_of(rho)
    reduced = rho if qs == list(range(1, n + 1)) else partial_trace(rho, qs)
    diag = np.real(np.diag(reduced))
    k = len(qs)
    table = {format(i, f"0{k}b"): float(diag[i]) for i in range(1 << k)}
    total = sum(table.values())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    return table


def pauli_expectation(rho: np.ndarray, word: PauliWord) -> float:
    """Tr(rho * P) for a Hermitian word."""
    if num_qubits_of(rho) != word.n:
        raise DimensionMismatchError("state and observable sizes differ")
    return float(np.trace(rho @ dense_of_word(word)).real)
