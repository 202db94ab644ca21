"""Product-notation density states.

A state on n qubits is an ordered list of factors (I + P_k)/2 with commuting
Hermitian Pauli words P_k, normalized as 2^-n * prod_k (I + P_k); fewer
factors than qubits leaves the remaining dimensions maximally mixed. Factor
identity is positional: evolution maps factor k to factor k and never
re-canonicalizes, because "which factor changed" is exactly the question the
factor diff is meant to answer.

A factor hit by a generic (non-Clifford) gate leaves the Pauli sector and is
stored as its full matrix I + (traceless Hermitian part) from then on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import dense
from .errors import (
    DependentFactorsError,
    DimensionMismatchError,
    IncomparableStatesError,
    InvalidFactorizationError,
    UnsupportedRepresentationError,
)
from .gates import GENERIC1Q, Gate, conjugate
from .pauli import PauliWord, commutes, parse_pauli, pauli_mul

_FACTOR_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class Factor:
    """One factor: either a signed Pauli word or a dense I + traceless matrix."""

    word: PauliWord | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.word is None) == (self.matrix is None):
            raise ValueError("factor needs exactly one of word or matrix")
        if self.word is not None:
            if not self.word.is_hermitian:
                raise InvalidFactorizationError(f"factor word {self.word!r} is not Hermitian")
        else:
            m = np.asarray(self.matrix, dtype=complex)
            dim = dense.num_qubits_of(m)
            if np.max(np.abs(m - m.conj().T)) > 1e-10:
                raise ValueError("dense factor must be Hermitian")
            if abs(np.trace(m) - m.shape[0]) > 1e-9:
                raise ValueError("dense factor must equal I plus a traceless part")
            m = m.copy()
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
            del dim

    @property
    def is_pauli(self) -> bool:
        return self.word is not None

    def to_matrix(self, n: int) -> np.ndarray:
        if self.word is not None:
            return np.eye(1 << n, dtype=complex) + dense.dense_of_word(self.word)
        return self.matrix

    def text(self) -> str:
        if self.word is None:
            return "[dense]"
        return self.word.text(explicit_plus=True)


class ChangeKind(str, enum.Enum):
    UNCHANGED = "UNCHANGED"
    SIGN_FLIP = "SIGN_FLIP"
    WORD_CHANGE = "WORD_CHANGE"
    LEFT_PAULI_SECTOR = "LEFT_PAULI_SECTOR"


@dataclass(frozen=True)
class FactorChange:
    position: int  # 1-based
    kind: ChangeKind
    before: Factor
    after: Factor


@dataclass(frozen=True)
class FactorDiff:
    """Position-by-position comparison of two states' factor lists."""

    changes: tuple[FactorChange, ...]

    @property
    def changed(self) -> frozenset[int]:
        return frozenset(c.position for c in self.changes if c.kind is not ChangeKind.UNCHANGED)

    def kind_at(self, position: int) -> ChangeKind:
        return self.changes[position - 1].kind

    def __str__(self) -> str:
        inner = ",".join(str(p) for p in sorted(self.changed))
        return "{" + inner + "}"


@dataclass(frozen=True, eq=False)
class ProductState:
    n: int
    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        for f in self.factors:
            if f.word is not None and f.word.n != self.n:
                raise DimensionMismatchError(
                    f"factor word on {f.word.n} qubits in a {self.n}-qubit state")
            if f.matrix is not None and f.matrix.shape[0] != 1 << self.n:
                raise DimensionMismatchError("dense factor has the wrong dimension")
        if self.all_pauli:
            _check_pairwise_commuting([f.word for f in self.factors])

    @classmethod
    def from_factors(cls, n: int, words) -> "ProductState":
        """Build a state from signed commuting words; the order is kept.

        Rejects identity factors, non-commuting pairs (naming the pair) and
        dependent sets (some sub-product equal to plus or minus identity).
        """
        words = tuple(words)
        if len(words) > n:
            raise InvalidFactorizationError(
                f"{len(words)} factors on {n} qubits; at most n factors are independent")
        for w in words:
            if w.n != n:
                raise DimensionMismatchError(f"factor {w!r} does not act on {n} qubits")
            if not w.is_hermitian:
                raise InvalidFactorizationError(f"factor {w!r} is not Hermitian")
            if w.is_identity_up_to_phase:
                raise InvalidFactorizationError("factors (I + P) with P = +/-I are not allowed")
        _check_pairwise_commuting(words)
        _check_independent(words, n)
        return cls(n, tuple(Factor(word=w) for w in words))

    @property
    def all_pauli(self) -> bool:
        return all(f.is_pauli for f in self.factors)

    def evolve(self, g: Gate) -> "ProductState":
        """Conjugate every factor independently; positions are preserved."""
        if max(g.targets) > self.n:
            raise DimensionMismatchError(f"gate targets {g.targets} exceed {self.n} qubits")
        if g.kind == GENERIC1Q:
            u = dense.dense_of_gate(g, self.n)
            new = tuple(Factor(matrix=u @ f.to_matrix(self.n) @ u.conj().T)
                        for f in self.factors)
            return ProductState(self.n, new)
        u = None
        out = []
        for f in self.factors:
            if f.is_pauli:
                out.append(Factor(word=conjugate(g, f.word)))
            else:
                if u is None:
                    u = dense.dense_of_gate(g, self.n)
                out.append(Factor(matrix=u @ f.matrix @ u.conj().T))
        return ProductState(self.n, tuple(out))

    def to_dense(self) -> np.ndarray:
        """2^-n * prod_k (I + P_k); fewer factors than qubits still traces to 1."""
        acc = np.eye(1 << self.n, dtype=complex)
        for f in self.factors:
            acc = acc @ f.to_matrix(self.n)
        return acc * (2.0 ** -self.n)

    def expand_to_pauli_sum(self) -> list[tuple[float, PauliWord]]:
        """All 2^m subset products as (signed coefficient, positive word) terms.

        Coefficients are +/- 2^-n; terms are sorted by (x_mask, z_mask).
        """
        if not self.all_pauli:
            raise UnsupportedRepresentationError(
                "cannot expand a state with dense factors into a Pauli sum")
        terms = [PauliWord.identity(self.n)]
        for f in self.factors:
            terms += [pauli_mul(t, f.word) for t in terms]
        unit = 2.0 ** -self.n
        out = [(unit * t.sign(), t.positive()) for t in terms]
        out.sort(key=lambda cw: (cw[1].x_mask, cw[1].z_mask))
        return out

    # -- text ----------------------------------------------------------

    def factors_text(self) -> str:
        return " ; ".join(f.text() for f in self.factors)

    def to_product_text(self) -> str:
        """E.g. ``1/4 (I + X1Z2)(I - Z1X2)``; dense factors print as [dense]."""
        prefix = f"1/{1 << self.n} "
        if not self.factors:
            return prefix + "I"
        parts = []
        for f in self.factors:
            if f.is_pauli:
                sign = "+" if f.word.sign() > 0 else "-"
                parts.append(f"(I {sign} {f.word.body_text()})")
            else:
                parts.append("[dense]")
        return prefix + "".join(parts)

    def to_tensor_sum_text(self) -> str | None:
        """E.g. ``1/4 (I + X1Z2 + Z1X2 + Y1Y2)``; None if a factor is dense."""
        if not self.all_pauli:
            return None
        pieces = []
        for coeff, word in self.expand_to_pauli_sum():
            body = word.body_text()
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append(("- " if coeff < 0 else "+ ") + body)
        return f"1/{1 << self.n} (" + " ".join(pieces) + ")"

    def __str__(self) -> str:
        return self.to_product_text()


def _check_pairwise_commuting(words) -> None:
    words = list(words)
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if not commutes(words[i], words[j]):
                raise InvalidFactorizationError(
                    f"factors {words[i].text(True)} and {words[j].text(True)} anticommute")


def _check_independent(words, n: int) -> None:
    pivots: dict[int, int] = {}
    for w in words:
        v = (w.x_mask << n) | w.z_mask
        while v:
            h = v.bit_length() - 1
            if h not in pivots:
                pivots[h] = v
                break
            v ^= pivots[h]
        if v == 0:
            raise DependentFactorsError(
                "factor words are dependent: some sub-product is +/- identity")


def from_factors(n: int, words) -> ProductState:
    return ProductState.from_factors(n, words)


def evolve(s: ProductState, g: Gate) -> ProductState:
    return s.evolve(g)


def expand_to_pauli_sum(s: ProductState) -> list[tuple[float, PauliWord]]:
    return s.expand_to_pauli_sum()


def factor_diff(before: ProductState, after: ProductState,
                atol: float = _FACTOR_ATOL) -> FactorDiff:
    """Which positions changed, and how.

    Pauli factors compare exactly (same masks but different sign is a
    SIGN_FLIP, any mask change a WORD_CHANGE). Comparisons involving dense
    factors are entrywise within ``atol``; a Pauli factor whose content
    changed while crossing into the dense sector reports LEFT_PAULI_SECTOR.
    """
    if before.n != after.n or len(before.factors) != len(after.factors):
        raise IncomparableStatesError(
            "states must have the same qubit and factor counts to diff")
    changes = []
    for k, (f0, f1) in enumerate(zip(before.factors, after.factors), start=1):
        if f0.is_pauli and f1.is_pauli:
            if f0.word == f1.word:
                kind = ChangeKind.UNCHANGED
            elif (f0.word.x_mask, f0.word.z_mask) == (f1.word.x_mask, f1.word.z_mask):
                kind = ChangeKind.SIGN_FLIP
            else:
                kind = ChangeKind.WORD_CHANGE
        else:
            same = dense.operators_close(f0.to_matrix(before.n), f1.to_matrix(after.n), atol)
            if same:
                kind = ChangeKind.UNCHANGED
            elif f0.is_pauli and not f1.is_pauli:
                kind = ChangeKind.LEFT_PAULI_SECTOR
            else:
                kind = ChangeKind.WORD_CHANGE
        changes.append(FactorChange(k, kind, f0, f1))
    return FactorDiff(tuple(changes))


def state_equal(a: ProductState, b: ProductState, atol: float = _FACTOR_ATOL) -> bool:
    """Equality of the represented operators, independent of factor history."""
    if a.n != b.n:
        raise DimensionMismatchError(f"states act on {a.n} and {b.n} qubits")
    return dense.operators_close(a.to_dense(), b.to_dense(), atol)


def parse_factor_list(text: str, n: int) -> list[PauliWord]:
    """Parse the ``+X1 ; +X2`` factor-list form."""
    words = []
    for chunk in text.split(";"):
        words.append(parse_pauli(chunk.strip(), n))
    return words
