"""Exact algebra of signed n-qubit Pauli words.

A word is stored as X/Z bitmasks plus an integer power of i:

    i**phase_exp * prod_j X_j**x_j * Z_j**z_j        (j ascending)

Bit j-1 of each mask belongs to qubit j; qubit numbering is 1-based in all
text formats and throughout the public API. Phases are integers mod 4, so
products, commutators and signs are exact -- no floating point enters the
Clifford sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionMismatchError, PauliParseError

MAX_QUBITS = 64

_LETTER_OF_BITS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class PauliWord:
    """A signed Pauli operator on ``n`` qubits."""

    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {self.n}")
        full = (1 << self.n) - 1
        if self.x_mask < 0 or self.z_mask < 0:
            raise ValueError("masks must be nonnegative integers")
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError(f"mask has bits outside the {self.n}-qubit range")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliWord":
        return cls(n)

    @classmethod
    def from_letter(cls, letter: str, qubit: int, n: int) -> "PauliWord":
        """Single-letter word, e.g. ``from_letter("X", 2, n=3)`` is X2."""
        if not 1 <= qubit <= n:
            raise ValueError(f"qubit {qubit} outside [1, {n}]")
        bit = 1 << (qubit - 1)
        if letter == "X":
            return cls(n, x_mask=bit)
        if letter == "Z":
            return cls(n, z_mask=bit)
        if letter == "Y":
            # Y = i X Z
            return cls(n, x_mask=bit, z_mask=bit, phase_exp=1)
        raise ValueError(f"unknown Pauli letter {letter!r}")

    # -- structure ----------------------------------------------------

    def y_count(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0 and self.phase_exp == 0

    @property
    def is_identity_up_to_phase(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_exp + self.y_count()) % 2 == 0

    def sign(self) -> int:
        """The +1/-1 prefactor of a Hermitian word."""
        k = (self.phase_exp - self.y_count()) % 4
        if k == 0:
            return 1
        if k == 2:
            return -1
        raise ValueError(f"{self!r} is not Hermitian; it has no real sign")

    def negated(self) -> "PauliWord":
        return PauliWord(self.n, self.x_mask, self.z_mask, self.phase_exp + 2)

    def positive(self) -> "PauliWord":
        """The same word with its sign stripped to +1."""
        return self if self.sign() > 0 else self.negated()

    def letter_at(self, qubit: int) -> str:
        bit = 1 << (qubit - 1)
        return _LETTER_OF_BITS[(int(bool(self.x_mask & bit)), int(bool(self.z_mask & bit)))]

    def support(self) -> tuple[int, ...]:
        """1-based qubits the word acts on non-trivially, ascending."""
        return tuple(_iter_bits(self.x_mask | self.z_mask))

    def commutes_with(self, other: "PauliWord") -> bool:
        return commutes(self, other)

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        return pauli_mul(self, other)

    # -- text ----------------------------------------------------------

    def body_text(self) -> str:
        """Unsigned letters, ascending qubit order, Y preferred: ``Y1Y2``."""
        parts = []
        for q in self.support():
            parts.append(f"{self.letter_at(q)}{q}")
        return "".join(parts) or "I"

    def text(self, explicit_plus: bool = False) -> str:
        if not self.is_hermitian:
            raise ValueError("only Hermitian (sign +/-1) words have a text form")
        sign = "-" if self.sign() < 0 else ("+" if explicit_plus else "")
        return sign + self.body_text()

    def __str__(self) -> str:
        if self.is_hermitian:
            return self.text()
        return f"i^{self.phase_exp} {self.body_text()}"


def _iter_bits(mask: int) -> Iterator[int]:
    q = 1
    while mask:
        if mask & 1:
            yield q
        mask >>= 1
        q += 1


def _check_same_n(a: PauliWord, b: PauliWord) -> None:
    if a.n != b.n:
        raise DimensionMismatchError(f"words act on {a.n} and {b.n} qubits")


def pauli_mul(a: PauliWord, b: PauliWord) -> PauliWord:
    """The exact group product a*b.

    With words encoded as i**k X(x) Z(z), moving b's X block through a's Z
    block contributes a factor (-1)**|a.z & b.x|; the masks simply XOR.
    """
    _check_same_n(a, b)
    phase = a.phase_exp + b.phase_exp + 2 * (a.z_mask & b.x_mask).bit_count()
    return PauliWord(a.n, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask, phase)


def commutes(a: PauliWord, b: PauliWord) -> bool:
    """Symplectic commutation test: even total overlap means commuting."""
    _check_same_n(a, b)
    overlap = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return overlap % 2 == 0


def parse_pauli(text: str, n: int) -> PauliWord:
    """Parse ``[+-]? ( I | ([XYZ]<index>)+ )`` into a Hermitian word.

    Indices are 1-based, at most ``n``, and may not repeat; Y stands for the
    Hermitian product of X and Z on its qubit. Raises PauliParseError with
    the offending position on malformed input.
    """
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    i = 0
    negative = False
    if i < len(stripped) and stripped[i] in "+-":
        negative = stripped[i] == "-"
        i += 1
    if i >= len(stripped):
        raise PauliParseError("empty Pauli word", lead + i)

    x = z = 0
    phase = 2 if negative else 0
    if stripped[i] == "I":
        if i + 1 != len(stripped):
            raise PauliParseError("unexpected text after 'I'", lead + i + 1)
        return PauliWord(n, 0, 0, phase)

    seen: set[int] = set()
    while i < len(stripped):
        letter = stripped[i]
        if letter not in "XYZ":
            raise PauliParseError(f"expected X, Y or Z, found {letter!r}", lead + i)
        i += 1
        j = i
        while j < len(stripped) and stripped[j].isdigit():
            j += 1
        if j == i:
            raise PauliParseError(f"missing qubit index after {letter!r}", lead + i)
        qubit = int(stripped[i:j])
        if not 1 <= qubit <= n:
            raise PauliParseError(f"qubit index {qubit} outside [1, {n}]", lead + i)
        if qubit in seen:
            raise PauliParseError(f"qubit index {qubit} appears twice", lead + i)
        seen.add(qubit)
        bit = 1 << (qubit - 1)
        if letter in "XY":
            x |= bit
        if letter in "ZY":
            z |= bit
        if letter == "Y":
            phase += 1
        i = j
    return PauliWord(n, x, z, phase)


def render(word: PauliWord) -> str:
    """Canonical signed text, the inverse of parse_pauli: ``+X1Z2``."""
    return word.text(explicit_plus=True)


def substitute(word: PauliWord, x_images: Sequence[PauliWord],
               z_images: Sequence[PauliWord]) -> PauliWord:
    """Rewrite ``word`` through per-qubit images of the basic letters.

    Returns i**word.phase_exp times the product of x_images[q-1]**x_q and
    z_images[q-1]**z_q over the support, multiplied in ascending-qubit,
    X-before-Z order with exact phases. When images on distinct qubits all
    commute (as conjugated letters do), the result is order-independent and
    equals the conjugation of ``word`` by the circuit behind the images.
    """
    if len(x_images) != word.n or len(z_images) != word.n:
        raise DimensionMismatchError(
            f"need {word.n} images per letter, got {len(x_images)}/{len(z_images)}")
    m = x_images[0].n if x_images else word.n
    acc = PauliWord(m, 0, 0, word.phase_exp)
    for q in word.support():
        bit = 1 << (q - 1)
        if word.x_mask & bit:
            acc = pauli_mul(acc, x_images[q - 1])
        if word.z_mask & bit:
            acc = pauli_mul(acc, z_images[q - 1])
    return acc
