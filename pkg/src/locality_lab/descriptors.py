"""Per-qubit Heisenberg-picture descriptors.

Each qubit i carries the pair of conjugated observables
(U^dagger X_i U, U^dagger Z_i U) for the circuit U applied so far, written
over the fixed time-0 algebra; the reference state is pinned to |0...0>.
The pair determines everything measurable about qubit i jointly with the
other pairs, yet a gate on qubit i never touches the pairs of other qubits:
the evolution rule rewrites only the acted-on letters.

Non-Clifford gates are rejected rather than approximated; outside the
Clifford sector the pairs would stop being Pauli words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, UnsupportedRepresentationError
from .pauli import PauliWord, commutes, substitute
from .gates import Gate, inverse_conjugate


@dataclass(frozen=True)
class DescriptorSet:
    """The (X-component, Z-component) observable pair for every qubit."""

    n: int
    pairs: tuple[tuple[PauliWord, PauliWord], ...]

    def __post_init__(self) -> None:
        if len(self.pairs) != self.n:
            raise ValueError(f"need {self.n} descriptor pairs, got {len(self.pairs)}")
        for qubit, (x_part, z_part) in enumerate(self.pairs, start=1):
            for w in (x_part, z_part):
                if w.n != self.n:
                    raise DimensionMismatchError(
                        f"descriptor word on {w.n} qubits in a {self.n}-qubit set")
                if not w.is_hermitian:
                    raise ValueError(f"descriptor component {w!r} is not Hermitian")
            if commutes(x_part, z_part):
                raise ValueError(f"qubit {qubit} components must anticommute")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                for a in self.pairs[i]:
                    for b in self.pairs[j]:
                        if not commutes(a, b):
                            raise ValueError(
                                f"components of qubits {i + 1} and {j + 1} must commute")

    def x_component(self, qubit: int) -> PauliWord:
        return self.pairs[qubit - 1][0]

    def z_component(self, qubit: int) -> PauliWord:
        return self.pairs[qubit - 1][1]

    def evolve(self, g: Gate) -> "DescriptorSet":
        """Append gate V: conjugate the acted-on letters by V, then rewrite
        each letter of the result with the current component for that letter.

        Only the pairs of V's targets are recomputed; all others are shared
        unchanged, which is the locality property in executable form.
        """
        if not g.is_clifford:
            raise UnsupportedRepresentationError(
                "descriptor evolution is defined for Clifford gates only")
        if max(g.targets) > self.n:
            raise DimensionMismatchError(f"gate targets {g.targets} exceed {self.n} qubits")
        xs = tuple(p[0] for p in self.pairs)
        zs = tuple(p[1] for p in self.pairs)
        new_pairs = list(self.pairs)
        for t in g.targets:
            rewritten_x = inverse_conjugate(g, PauliWord.from_letter("X", t, self.n))
            rewritten_z = inverse_conjugate(g, PauliWord.from_letter("Z", t, self.n))
            new_pairs[t - 1] = (substitute(rewritten_x, xs, zs),
                                substitute(rewritten_z, xs, zs))
        return DescriptorSet(self.n, tuple(new_pairs))

    def expectation(self, observable: PauliWord) -> float:
        """<P> for the tracked state, computed entirely inside the algebra.

        Rewriting P's letters with the components gives the conjugated word
        W; against |0...0> that is W's sign if W is Z-only, else 0.
        """
        if observable.n != self.n:
            raise DimensionMismatchError(
                f"observable on {observable.n} qubits, descriptors on {self.n}")
        if not observable.is_hermitian:
            raise ValueError("expectation values need a Hermitian observable")
        xs = tuple(p[0] for p in self.pairs)
        zs = tuple(p[1] for p in self.pairs)
        w = substitute(observable, xs, zs)
        if w.x_mask:
            return 0.0
        return float(w.sign())

    def born_distribution(self, qubits) -> dict[str, float]:
        """Computational-basis probabilities on a subset, from Z-word expectations.

        p(outcome) = 2^-k * sum over Z-subsets of (+/-) <Z_S>; keys are
        bitstrings with the smallest qubit leftmost.
        """
        qs = sorted(set(int(q) for q in qubits))
        if not qs:
            raise ValueError("qubit subset must be nonempty")
        if qs[0] < 1 or qs[-1] > self.n:
            raise ValueError(f"qubits {qs} outside [1, {self.n}]")
        k = len(qs)
        if k > 10:
            raise ValueError(f"at most 10 qubits per distribution, got {k}")
        expectations = []
        for subset in range(1 << k):
            z_mask = 0
            for i, q in enumerate(qs):
                if subset & (1 << (k - 1 - i)):
                    z_mask |= 1 << (q - 1)
            expectations.append(self.expectation(PauliWord(self.n, 0, z_mask)))
        table: dict[str, float] = {}
        for outcome in range(1 << k):
            acc = 0.0
            for subset in range(1 << k):
                if (subset & outcome).bit_count() & 1:
                    acc -= expectations[subset]
                else:
                    acc += expectations[subset]
            table[format(outcome, f"0{k}b")] = acc / (1 << k)
        total = sum(table.values())
        if abs(total - 1.0) > 1e-10:
            raise AssertionError(f"probabilities sum to {total!r}")
        return table

    def component_texts(self, qubit: int) -> tuple[str, str]:
        x_part, z_part = self.pairs[qubit - 1]
        return x_part.text(), z_part.text()

    def text_lines(self) -> list[str]:
        """One ``q1 = (-Z1X2, X1)`` line per qubit."""
        lines = []
        for q in range(1, self.n + 1):
            x_text, z_text = self.component_texts(q)
            lines.append(f"q{q} = ({x_text}, {z_text})")
        return lines


def initial_descriptors(n: int) -> DescriptorSet:
    """The identity-circuit set: qubit i carries (X_i, Z_i)."""
    pairs = tuple((PauliWord.from_letter("X", q, n), PauliWord.from_letter("Z", q, n))
                  for q in range(1, n + 1))
    return DescriptorSet(n, pairs)


def evolve_descriptors(d: DescriptorSet, g: Gate) -> DescriptorSet:
    return d.evolve(g)


def descriptor_diff(before: DescriptorSet, after: DescriptorSet) -> frozenset[int]:
    """Qubits whose pair changed in any way (word or sign)."""
    if before.n != after.n:
        raise DimensionMismatchError(f"sets cover {before.n} and {after.n} qubits")
    return frozenset(q for q in range(1, before.n + 1)
                     if before.pairs[q - 1] != after.pairs[q - 1])


def expectation(d: DescriptorSet, observable: PauliWord) -> float:
    return d.expectation(observable)


def born_distribution(d: DescriptorSet, qubits) -> dict[str, float]:
    return d.born_distribution(qubits)
