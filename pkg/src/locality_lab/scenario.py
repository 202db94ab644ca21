"""Scenario files: a line-based grammar for branching gate timelines.

Directives (``#`` starts a comment, blank lines are skipped):

    qubits N
    factors <signed-word> ; ...     initial product-notation factors
                                    (default: +Z1 ; ... ; +Zn, i.e. |0...0>)
    prep GATE ARGS...               preparation circuit from |0...0> used to
                                    seed the descriptor tracking
    label NAME                      snapshot the current states under NAME
    gate GATE ARGS...               apply a gate to all representations
    branch NAME                     rewind to the snapshot of the most recent
                                    trunk label; labels taken inside branches
                                    do not move that branch point, so several
                                    branches replay from the same parent
    assert equal A B                represented operators match (1e-12)
    assert unequal A B              represented operators differ
    assert factordiff A B {k,...}   changed factor positions, 1-based
    assert descdiff A B {q,...}     changed descriptor qubits
    assert expect LABEL WORD V TOL  expectation value of WORD at LABEL

Gate names: X Y Z H S SDG CZ CNOT RX RY RZ U2 (angles in radians; U2 takes
8 reals, the row-major 2x2 complex matrix).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    CircuitParseError,
    LocalityLabError,
    PauliParseError,
    ScenarioError,
)
from .gates import Gate, parse_gate_tokens
from .pauli import MAX_QUBITS, PauliWord, parse_pauli
from .product import ProductState, parse_factor_list


@dataclass(frozen=True)
class GateStep:
    gate: Gate
    text: str
    line: int


@dataclass(frozen=True)
class LabelStep:
    name: str
    line: int


@dataclass(frozen=True)
class BranchStep:
    name: str
    line: int


@dataclass(frozen=True)
class Assertion:
    kind: str  # equal | unequal | factordiff | descdiff | expect
    line: int
    text: str
    labels: tuple[str, ...]
    expected_set: frozenset[int] | None = None
    word: PauliWord | None = None
    value: float | None = None
    tol: float | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    n: int
    initial: ProductState
    prep: tuple[Gate, ...]
    steps: tuple[object, ...]
    assertions: tuple[Assertion, ...] = field(default=())

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.steps if isinstance(s, LabelStep))


def _parse_position_set(token: str, line: int, name: str) -> frozenset[int]:
    token = token.strip()
    if not (token.startswith("{") and token.endswith("}")):
        raise ScenarioError(f"expected a {{...}} set, got {token!r}", line, name)
    inner = token[1:-1].strip()
    if not inner:
        return frozenset()
    values = set()
    for piece in inner.split(","):
        try:
            values.add(int(piece.strip()))
        except ValueError:
            raise ScenarioError(f"bad set element {piece.strip()!r}", line, name) from None
    return frozenset(values)


def parse_scenario_text(text: str, name: str = "<scenario>") -> Scenario:
    """Parse and validate scenario text; every problem raises ScenarioError."""
    n: int | None = None
    factor_line: tuple[str, int] | None = None
    prep: list[Gate] = []
    steps: list[object] = []
    raw_asserts: list[tuple[list[str], str, int]] = []
    label_names: set[str] = set()
    seen_step = False

    def _need_n(line: int) -> int:
        if n is None:
            raise ScenarioError("qubits must be declared first", line, name)
        return n

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        head = tokens[0].lower()
        if head == "qubits":
            if n is not None:
                raise ScenarioError("duplicate qubits line", line_no, name)
            if seen_step or factor_line or prep or raw_asserts:
                raise ScenarioError("qubits must be the first directive", line_no, name)
            try:
                n = int(tokens[1])
            except (IndexError, ValueError):
                raise ScenarioError("qubits takes one integer", line_no, name) from None
            if not 1 <= n <= MAX_QUBITS:
                raise ScenarioError(f"qubit count outside [1, {MAX_QUBITS}]", line_no, name)
        elif head == "factors":
            _need_n(line_no)
            if factor_line is not None:
                raise ScenarioError("duplicate factors line", line_no, name)
            if seen_step:
                raise ScenarioError("factors must come before labels and gates", line_no, name)
            factor_line = (stripped[len("factors"):].strip(), line_no)
        elif head == "prep":
            _need_n(line_no)
            if seen_step:
                raise ScenarioError("prep gates must come before labels and gates", line_no, name)
            try:
                gate = parse_gate_tokens(tokens[1:], n, line_no)
            except CircuitParseError as exc:
                raise ScenarioError(str(exc), line_no, name) from None
            if not gate.is_clifford:
                raise ScenarioError("prep gates must be Clifford", line_no, name)
            prep.append(gate)
        elif head == "label":
            _need_n(line_no)
            if len(tokens) != 2:
                raise ScenarioError("label takes one name", line_no, name)
            if tokens[1] in label_names:
                raise ScenarioError(f"duplicate label {tokens[1]!r}", line_no, name)
            label_names.add(tokens[1])
            steps.append(LabelStep(tokens[1], line_no))
            seen_step = True
        elif head == "gate":
            _need_n(line_no)
            try:
                gate = parse_gate_tokens(tokens[1:], n, line_no)
            except CircuitParseError as exc:
                raise ScenarioError(str(exc), line_no, name) from None
            steps.append(GateStep(gate, stripped, line_no))
            seen_step = True
        elif head == "branch":
            _need_n(line_no)
            if len(tokens) != 2:
                raise ScenarioError("branch takes one name", line_no, name)
            if not any(isinstance(s, LabelStep) for s in steps):
                raise ScenarioError("branch before any label", line_no, name)
            steps.append(BranchStep(tokens[1], line_no))
            seen_step = True
        elif head == "assert":
            _need_n(line_no)
            raw_asserts.append((tokens[1:], stripped, line_no))
        else:
            raise ScenarioError(f"unknown directive {tokens[0]!r}", line_no, name)

    if n is None:
        raise ScenarioError("scenario has no qubits line", path=name)

    if factor_line is None:
        words = [PauliWord.from_letter("Z", q, n) for q in range(1, n + 1)]
        factors_line_no = None
    else:
        text_part, factors_line_no = factor_line
        try:
            words = parse_factor_list(text_part, n)
        except PauliParseError as exc:
            raise ScenarioError(str(exc), factors_line_no, name) from None
    try:
        initial = ProductState.from_factors(n, words)
    except LocalityLabError as exc:
        raise ScenarioError(str(exc), factors_line_no, name) from None

    assertions = []
    for tokens, raw_text, line_no in raw_asserts:
        assertions.append(_parse_assertion(tokens, raw_text, line_no, name, n,
                                           label_names, len(initial.factors)))

    return Scenario(name=name, n=n, initial=initial, prep=tuple(prep),
                    steps=tuple(steps), assertions=tuple(assertions))


def _parse_assertion(tokens: list[str], raw_text: str, line_no: int, name: str,
                     n: int, label_names: set[str], factor_count: int) -> Assertion:
    if not tokens:
        raise ScenarioError("assert needs a kind", line_no, name)
    kind = tokens[0].lower()

    def _label(tok: str) -> str:
        if tok not in label_names:
            raise ScenarioError(f"assertion references undefined label {tok!r}", line_no, name)
        return tok

    if kind in ("equal", "unequal"):
        if len(tokens) != 3:
            raise ScenarioError(f"assert {kind} takes two labels", line_no, name)
        return Assertion(kind, line_no, raw_text, (_label(tokens[1]), _label(tokens[2])))
    if kind in ("factordiff", "descdiff"):
        if len(tokens) != 4:
            raise ScenarioError(f"assert {kind} takes two labels and a set", line_no, name)
        expected = _parse_position_set(tokens[3], line_no, name)
        bound = factor_count if kind == "factordiff" else n
        for v in expected:
            if not 1 <= v <= bound:
                raise ScenarioError(f"set element {v} outside [1, {bound}]", line_no, name)
        return Assertion(kind, line_no, raw_text,
                         (_label(tokens[1]), _label(tokens[2])), expected_set=expected)
    if kind == "expect":
        if len(tokens) != 5:
            raise ScenarioError("assert expect takes LABEL WORD VALUE TOL", line_no, name)
        label = _label(tokens[1])
        try:
            word = parse_pauli(tokens[2], n)
        except PauliParseError as exc:
            raise ScenarioError(str(exc), line_no, name) from None
        try:
            value, tol = float(tokens[3]), float(tokens[4])
        except ValueError:
            raise ScenarioError("expect value and tolerance must be numbers",
                                line_no, name) from None
        if tol < 0:
            raise ScenarioError("tolerance must be nonnegative", line_no, name)
        return Assertion(kind, line_no, raw_text, (label,), word=word, value=value, tol=tol)
    raise ScenarioError(f"unknown assertion kind {tokens[0]!r}", line_no, name)


def parse_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}", path=str(path)) from None
    return parse_scenario_text(text, name=path.name)


def bundled_scenario_path(filename: str) -> Path:
    """Filesystem path of a scenario shipped with the package."""
    return Path(str(resources.files("locality_lab") / "scenarios" / filename))


def bundled_scenario_names() -> list[str]:
    folder = resources.files("locality_lab") / "scenarios"
    return sorted(entry.name for entry in folder.iterdir() if entry.name.endswith(".scn"))
