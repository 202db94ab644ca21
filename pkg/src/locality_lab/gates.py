"""Gate objects and exact Clifford conjugation of Pauli words.

Named Clifford gates act on words through small tabulated images of the
basic X/Z letters on their targets. Generic single-qubit unitaries carry an
explicit 2x2 matrix and are deliberately excluded from the word-level path:
conjugating by them leaves the Pauli group, and silently approximating that
would defeat the point of exact sign tracking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    CircuitParseError,
    DimensionMismatchError,
    UnsupportedRepresentationError,
)
from .pauli import MAX_QUBITS, PauliWord, pauli_mul

GENERIC1Q = "GENERIC1Q"

CLIFFORD_ARITY = {
    "X": 1, "Y": 1, "Z": 1, "H": 1, "S": 1, "SDG": 1,
    "CZ": 2, "CNOT": 2,
}

# Images of the basic letters under U . U^dagger: sign plus one letter per
# target slot. Everything else about conjugation follows from these rows.
_IMAGES: dict[str, dict[str, tuple[str, str]]] = {
    "X": {"X": ("+", "X"), "Z": ("-", "Z")},
    "Y": {"X": ("-", "X"), "Z": ("-", "Z")},
    "Z": {"X": ("-", "X"), "Z": ("+", "Z")},
    "H": {"X": ("+", "Z"), "Z": ("+", "X")},
    "S": {"X": ("+", "Y"), "Z": ("+", "Z")},
    "SDG": {"X": ("-", "Y"), "Z": ("+", "Z")},
    "CZ": {"X1": ("+", "XZ"), "Z1": ("+", "ZI"),
           "X2": ("+", "ZX"), "Z2": ("+", "IZ")},
    "CNOT": {"X1": ("+", "XX"), "Z1": ("+", "ZI"),
             "X2": ("+", "IX"), "Z2": ("+", "ZZ")},
}

# S is the only supported gate whose inverse is a different named gate.
_INVERSE_KIND = {"S": "SDG", "SDG": "S"}

_UNITARY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class Gate:
    """A named Clifford gate, or a generic 1-qubit unitary with a matrix."""

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind == GENERIC1Q:
            arity = 1
            if self.matrix is None:
                raise ValueError("generic gates require a 2x2 matrix")
            m = np.asarray(self.matrix, dtype=complex)
            if m.shape != (2, 2):
                raise ValueError(f"generic gate matrix must be 2x2, got {m.shape}")
            if np.max(np.abs(m @ m.conj().T - np.eye(2))) > _UNITARY_ATOL:
                raise ValueError("generic gate matrix is not unitary within 1e-12")
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        elif self.kind in CLIFFORD_ARITY:
            arity = CLIFFORD_ARITY[self.kind]
            if self.matrix is not None:
                raise ValueError("only generic gates carry a matrix")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {len(targets)}")
        if len(set(targets)) != len(targets):
            raise ValueError(f"{self.kind} targets must be distinct, got {targets}")
        if any(t < 1 or t > MAX_QUBITS for t in targets):
            raise ValueError(f"targets must be in [1, {MAX_QUBITS}], got {targets}")

    @property
    def is_clifford(self) -> bool:
        return self.kind != GENERIC1Q

    def __str__(self) -> str:
        return f"{self.kind} " + " ".join(str(t) for t in self.targets)


def clifford_gate(kind: str, *targets: int) -> Gate:
    return Gate(kind.upper(), tuple(targets))


def matrix_gate(matrix: np.ndarray, target: int) -> Gate:
    return Gate(GENERIC1Q, (target,), np.asarray(matrix, dtype=complex))


_ROTATION_AXES = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def rotation_gate(axis: str, target: int, angle: float) -> Gate:
    """exp(-i * angle/2 * sigma_axis) as a generic 1-qubit gate."""
    sigma = _ROTATION_AXES[axis.upper()]
    half = angle / 2.0
    return matrix_gate(math.cos(half) * np.eye(2) - 1j * math.sin(half) * sigma, target)


def _image_word(rule: tuple[str, str], targets: tuple[int, ...], n: int) -> PauliWord:
    sign, letters = rule
    x = z = 0
    phase = 2 if sign == "-" else 0
    for letter, q in zip(letters, targets):
        bit = 1 << (q - 1)
        if letter in "XY":
            x |= bit
        if letter in "ZY":
            z |= bit
        if letter == "Y":
            phase += 1
    return PauliWord(n, x, z, phase)


@lru_cache(maxsize=None)
def _target_images(kind: str, targets: tuple[int, ...], n: int) -> dict[tuple[str, int], PauliWord]:
    rules = _IMAGES[kind]
    images: dict[tuple[str, int], PauliWord] = {}
    if CLIFFORD_ARITY[kind] == 1:
        images[("X", targets[0])] = _image_word(rules["X"], targets, n)
        images[("Z", targets[0])] = _image_word(rules["Z"], targets, n)
    else:
        for slot, q in enumerate(targets, start=1):
            images[("X", q)] = _image_word(rules[f"X{slot}"], targets, n)
            images[("Z", q)] = _image_word(rules[f"Z{slot}"], targets, n)
    return images


def conjugate(g: Gate, p: PauliWord) -> PauliWord:
    """U p U^dagger for a Clifford gate, with exact sign."""
    if not g.is_clifford:
        raise UnsupportedRepresentationError(
            "generic gates have no Pauli-word conjugation; use the dense path")
    if max(g.targets) > p.n:
        raise DimensionMismatchError(f"gate targets {g.targets} exceed word size {p.n}")
    images = _target_images(g.kind, g.targets, p.n)
    target_set = set(g.targets)
    acc = PauliWord(p.n, 0, 0, p.phase_exp)
    for q in p.support():
        bit = 1 << (q - 1)
        if q in target_set:
            if p.x_mask & bit:
                acc = pauli_mul(acc, images[("X", q)])
            if p.z_mask & bit:
                acc = pauli_mul(acc, images[("Z", q)])
        else:
            # Untouched letters append with no extra phase: the qubit is
            # fresh in acc, so the X-then-Z encoding order is preserved.
            acc = PauliWord(p.n, acc.x_mask | (p.x_mask & bit),
                            acc.z_mask | (p.z_mask & bit), acc.phase_exp)
    return acc


def inverse_conjugate(g: Gate, p: PauliWord) -> PauliWord:
    """U^dagger p U; distinguishes S from SDG, everything else is an involution."""
    if not g.is_clifford:
        raise UnsupportedRepresentationError(
            "generic gates have no Pauli-word conjugation; use the dense path")
    kind = _INVERSE_KIND.get(g.kind, g.kind)
    return conjugate(Gate(kind, g.targets), p)


# -- gate-line and circuit text ----------------------------------------

_GENERIC_NAMES = ("RX", "RY", "RZ", "U2")


def parse_gate_tokens(tokens: list[str], n: int, line: int | None = None) -> Gate:
    """Build a Gate from scenario-file tokens like ``["CZ", "1", "2"]``.

    Supported names: X Y Z H S SDG CZ CNOT RX RY RZ U2. Rotations take one
    target and an angle in radians; U2 takes one target and 8 reals giving
    the row-major 2x2 complex matrix.
    """
    if not tokens:
        raise CircuitParseError("missing gate name", line)
    name = tokens[0].upper()
    args = tokens[1:]

    def _index(tok: str) -> int:
        try:
            q = int(tok)
        except ValueError:
            raise CircuitParseError(f"bad qubit index {tok!r}", line) from None
        if not 1 <= q <= n:
            raise CircuitParseError(f"qubit index {q} outside [1, {n}]", line)
        return q

    def _real(tok: str) -> float:
        try:
            return float(tok)
        except ValueError:
            raise CircuitParseError(f"bad number {tok!r}", line) from None

    try:
        if name in CLIFFORD_ARITY:
            arity = CLIFFORD_ARITY[name]
            if len(args) != arity:
                raise CircuitParseError(
                    f"{name} takes {arity} qubit argument(s), got {len(args)}", line)
            return Gate(name, tuple(_index(a) for a in args))
        if name in ("RX", "RY", "RZ"):
            if len(args) != 2:
                raise CircuitParseError(f"{name} takes a qubit and an angle", line)
            return rotation_gate(name[1], _index(args[0]), _real(args[1]))
        if name == "U2":
            if len(args) != 9:
                raise CircuitParseError("U2 takes a qubit and 8 reals", line)
            target = _index(args[0])
            reals = [_real(a) for a in args[1:]]
            m = np.array([[reals[0] + 1j * reals[1], reals[2] + 1j * reals[3]],
                          [reals[4] + 1j * reals[5], reals[6] + 1j * reals[7]]])
            return matrix_gate(m, target)
    except ValueError as exc:
        raise CircuitParseError(str(exc), line) from None
    raise CircuitParseError(f"unknown gate name {tokens[0]!r}", line)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list with optional named positions between gates."""

    n: int
    gates: tuple[Gate, ...]
    labels: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for g in self.gates:
            if max(g.targets) > self.n:
                raise ValueError(f"gate {g} targets exceed {self.n} qubits")
        for name, pos in self.labels:
            if not 0 <= pos <= len(self.gates):
                raise ValueError(f"label {name!r} at invalid position {pos}")


def parse_circuit(text: str) -> Circuit:
    """Parse ``gate``/``label`` lines (optionally preceded by ``qubits N``).

    Without a ``qubits`` line the count is inferred from the largest target.
    """
    declared_n: int | None = None
    gates: list[Gate] = []
    labels: list[tuple[str, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        head = tokens[0].lower()
        if head == "qubits":
            if declared_n is not None:
                raise CircuitParseError("duplicate qubits line", line_no)
            if gates or labels:
                raise CircuitParseError("qubits must come before gates", line_no)
            try:
                declared_n = int(tokens[1])
            except (IndexError, ValueError):
                raise CircuitParseError("qubits takes one integer", line_no) from None
            if not 1 <= declared_n <= MAX_QUBITS:
                raise CircuitParseError(f"qubit count outside [1, {MAX_QUBITS}]", line_no)
        elif head == "gate":
            gates.append(parse_gate_tokens(tokens[1:], declared_n or MAX_QUBITS, line_no))
        elif head == "label":
            if len(tokens) != 2:
                raise CircuitParseError("label takes one name", line_no)
            if tokens[1] in (name for name, _ in labels):
                raise CircuitParseError(f"duplicate label {tokens[1]!r}", line_no)
            labels.append((tokens[1], len(gates)))
        else:
            raise CircuitParseError(f"unknown directive {tokens[0]!r}", line_no)
    n = declared_n
    if n is None:
        n = max((max(g.targets) for g in gates), default=1)
    return Circuit(n, tuple(gates), tuple(labels))
