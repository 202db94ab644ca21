"""Execute scenarios across all three representations and render reports.

The runner keeps the product-notation state and the per-qubit descriptors in
lockstep along a branching timeline; the dense oracle seeds the consistency
check between the declared factors and the preparation circuit. Reports are
deterministic: the same scenario file renders byte-identical text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from . import dense
from .descriptors import DescriptorSet, descriptor_diff, initial_descriptors
from .errors import ScenarioError
from .gates import CLIFFORD_ARITY, Gate, clifford_gate, rotation_gate
from .product import FactorDiff, ProductState, factor_diff, state_equal
from .scenario import (
    Assertion,
    BranchStep,
    GateStep,
    LabelStep,
    Scenario,
    parse_scenario,
)

_PREP_ATOL = 1e-12


@dataclass
class LabelEntry:
    name: str
    parent: str | None
    product: ProductState
    descriptors: DescriptorSet | None
    descriptor_note: str | None
    fdiff: FactorDiff | None
    ddiff: frozenset[int] | None


@dataclass
class AssertionResult:
    assertion: Assertion
    passed: bool
    detail: str | None


@dataclass
class Report:
    scenario: Scenario
    entries: list[LabelEntry]
    results: list[AssertionResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _load(source: str | Path | Scenario) -> Scenario:
    if isinstance(source, Scenario):
        return source
    return parse_scenario(source)


def execute(source: str | Path | Scenario) -> Report:
    """Run the timeline; assertions are evaluated after execution."""
    sc = _load(source)
    descriptors, note = _seed_descriptors(sc)

    product = sc.initial
    snapshots: dict[str, LabelEntry] = {}
    entries: list[LabelEntry] = []
    trunk_parent: str | None = None
    current_parent: str | None = None
    branching = False

    for step in sc.steps:
        if isinstance(step, LabelStep):
            fdiff = ddiff = None
            if current_parent is not None:
                parent = snapshots[current_parent]
                fdiff = factor_diff(parent.product, product)
                if parent.descriptors is not None and descriptors is not None:
                    ddiff = descriptor_diff(parent.descriptors, descriptors)
            entry = LabelEntry(step.name, current_parent, product, descriptors,
                               note, fdiff, ddiff)
            snapshots[step.name] = entry
            entries.append(entry)
            current_parent = step.name
            if not branching:
                trunk_parent = step.name
        elif isinstance(step, BranchStep):
            if trunk_parent is None:
                raise ScenarioError("branch before any label", step.line, sc.name)
            branching = True
            parent = snapshots[trunk_parent]
            product = parent.product
            descriptors = parent.descriptors
            note = parent.descriptor_note
            current_parent = trunk_parent
        else:
            assert isinstance(step, GateStep)
            product = product.evolve(step.gate)
            if descriptors is not None:
                if step.gate.is_clifford:
                    descriptors = descriptors.evolve(step.gate)
                else:
                    descriptors = None
                    note = "non-Clifford gate applied"

    results = [_evaluate(a, snapshots, sc) for a in sc.assertions]
    return Report(sc, entries, results)


def _seed_descriptors(sc: Scenario) -> tuple[DescriptorSet | None, str | None]:
    """Descriptors track pure states prepared from |0...0> by the prep circuit.

    When the factor list is pure (n factors), the prepared state must match
    the declared factors within 1e-12 or the scenario is rejected. Mixed
    factor lists have no preparation circuit and run without descriptors.
    """
    pure = len(sc.initial.factors) == sc.n
    if not pure and not sc.prep:
        return None, "mixed initial state has no preparation circuit"
    rho = dense.zero_state_density(sc.n)
    for g in sc.prep:
        u = dense.dense_of_gate(g, sc.n)
        rho = u @ rho @ u.conj().T
    if not dense.operators_close(rho, sc.initial.to_dense(), _PREP_ATOL):
        raise ScenarioError(
            "prep circuit does not prepare the declared factors", path=sc.name)
    descriptors = initial_descriptors(sc.n)
    for g in sc.prep:
        descriptors = descriptors.evolve(g)
    return descriptors, None


def _evaluate(a: Assertion, snapshots: dict[str, LabelEntry], sc: Scenario) -> AssertionResult:
    if a.kind in ("equal", "unequal"):
        first, second = (snapshots[name] for name in a.labels)
        equal = state_equal(first.product, second.product)
        passed = equal if a.kind == "equal" else not equal
        detail = None
        if not passed:
            detail = (f"states at {a.labels[0]} and {a.labels[1]} are "
                      f"{'different' if a.kind == 'equal' else 'identical'}")
        return AssertionResult(a, passed, detail)
    if a.kind == "factordiff":
        first, second = (snapshots[name] for name in a.labels)
        diff = factor_diff(first.product, second.product)
        passed = diff.changed == a.expected_set
        detail = None if passed else f"actual changed positions {_set_text(diff.changed)}"
        return AssertionResult(a, passed, detail)
    if a.kind == "descdiff":
        first, second = (snapshots[name] for name in a.labels)
        if first.descriptors is None or second.descriptors is None:
            return AssertionResult(a, False, "descriptors are not tracked here")
        diff = descriptor_diff(first.descriptors, second.descriptors)
        passed = diff == a.expected_set
        detail = None if passed else f"actual changed qubits {_set_text(diff)}"
        return AssertionResult(a, passed, detail)
    assert a.kind == "expect"
    entry = snapshots[a.labels[0]]
    dense_value = dense.pauli_expectation(entry.product.to_dense(), a.word)
    values = [("dense", dense_value)]
    if entry.descriptors is not None:
        values.append(("descriptor", entry.descriptors.expectation(a.word)))
    bad = [f"{src} value {v:.12g}" for src, v in values if abs(v - a.value) > a.tol]
    if bad:
        return AssertionResult(a, False, ", ".join(bad))
    return AssertionResult(a, True, None)


# -- rendering -----------------------------------------------------------


def _fmt_float(x: float) -> str:
    out = f"{x:.12f}".rstrip("0").rstrip(".")
    return out if out not in ("", "-0") else "0"


def _set_text(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def _fdiff_text(diff: FactorDiff) -> str:
    kinds = " ".join(f"{c.position}={c.kind.value}" for c in diff.changes)
    return f"{_set_text(diff.changed)} ({kinds})"


def _born_line(product: ProductState) -> str | None:
    if product.n > 10:
        return None
    table = dense.born_probabilities(product.to_dense(), range(1, product.n + 1))
    return " ".join(f"{bits}={_fmt_float(p)}" for bits, p in table.items())


def render_text(report: Report) -> str:
    lines = [f"scenario: {report.scenario.name}", f"qubits: {report.scenario.n}"]
    for entry in report.entries:
        lines.append("")
        head = f"label {entry.name}"
        head += " (initial)" if entry.parent is None else f" (parent: {entry.parent})"
        lines.append(head)
        lines.append(f"  factors:    {entry.product.factors_text()}")
        lines.append(f"  product:    {entry.product.to_product_text()}")
        tensor = entry.product.to_tensor_sum_text()
        lines.append(f"  tensor sum: {tensor if tensor else 'n/a (dense factor present)'}")
        if entry.descriptors is not None:
            for text in entry.descriptors.text_lines():
                lines.append(f"  {text}")
        else:
            lines.append(f"  descriptors: n/a ({entry.descriptor_note})")
        if entry.fdiff is not None:
            lines.append(f"  factor diff vs {entry.parent}: {_fdiff_text(entry.fdiff)}")
        if entry.ddiff is not None:
            lines.append(f"  descriptor diff vs {entry.parent}: {_set_text(entry.ddiff)}")
        born = _born_line(entry.product)
        lines.append(f"  born: {born if born else 'n/a (more than 10 qubits)'}")
    if report.results:
        lines.append("")
        for r in report.results:
            suffix = "PASS" if r.passed else f"FAIL ({r.detail})"
            lines.append(f"{r.assertion.text}: {suffix}")
    passed = sum(r.passed for r in report.results)
    failed = len(report.results) - passed
    lines.append("")
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'} "
                 f"({passed} passed, {failed} failed)")
    return "\n".join(lines) + "\n"


def render_json_dict(report: Report) -> dict:
    labels = []
    for entry in report.entries:
        descriptors = None
        if entry.descriptors is not None:
            descriptors = [list(entry.descriptors.component_texts(q))
                           for q in range(1, report.scenario.n + 1)]
        fdiff = None
        if entry.fdiff is not None:
            fdiff = {
                "changed": sorted(entry.fdiff.changed),
                "kinds": {str(c.position): c.kind.value for c in entry.fdiff.changes},
            }
        born = None
        if report.scenario.n <= 10:
            born = dense.born_probabilities(entry.product.to_dense(),
                                            range(1, report.scenario.n + 1))
        labels.append({
            "name": entry.name,
            "parent": entry.parent,
            "factors": [f.text() for f in entry.product.factors],
            "product": entry.product.to_product_text(),
            "tensor_sum": entry.product.to_tensor_sum_text(),
            "descriptors": descriptors,
            "descriptor_note": entry.descriptor_note,
            "factor_diff": fdiff,
            "descriptor_diff": sorted(entry.ddiff) if entry.ddiff is not None else None,
            "born": born,
        })
    assertions = [{
        "kind": r.assertion.kind,
        "text": r.assertion.text,
        "passed": r.passed,
        "detail": r.detail,
    } for r in report.results]
    return {
        "scenario": report.scenario.name,
        "qubits": report.scenario.n,
        "labels": labels,
        "assertions": assertions,
        "passed": report.passed,
    }


def run_scenario(source: str | Path | Scenario, output: str = "text") -> tuple[Report, int]:
    """Execute and report; exit code 0 when every assertion passed, else 1."""
    if output not in ("text", "json"):
        raise ValueError(f"unknown output format {output!r}")
    report = execute(source)
    return report, 0 if report.passed else 1


# -- locality check -------------------------------------------------------

DEFAULT_PROBE_GATES = ("X", "Z", "H")

_ROTATION_TOKEN = re.compile(r"(RX|RY|RZ)\(([-+0-9.eE]+)\)")


@dataclass
class ProbeRow:
    label: str
    gate: str
    qubit: int
    factors_changed: frozenset[int]
    descriptors_changed: frozenset[int] | None
    flags: tuple[str, ...]


@dataclass
class LocalityCheck:
    scenario: Scenario
    gate_names: tuple[str, ...]
    rows: list[ProbeRow]

    @property
    def flagged_rows(self) -> list[ProbeRow]:
        return [r for r in self.rows if r.flags]


def _probe_gate(token: str, qubit: int) -> Gate:
    t = token.strip().upper()
    if t in CLIFFORD_ARITY and CLIFFORD_ARITY[t] == 1:
        return clifford_gate(t, qubit)
    m = _ROTATION_TOKEN.fullmatch(t)
    if m:
        return rotation_gate(m.group(1)[1], qubit, float(m.group(2)))
    raise ScenarioError(f"unsupported probe gate {token!r} (single-qubit names "
                        "like X, Z, H, S, SDG or RY(0.7))")


def check_locality(source: str | Path | Scenario,
                   gates=DEFAULT_PROBE_GATES) -> LocalityCheck:
    """Probe every label with every gate on every qubit and tabulate which
    factors and which descriptors change.

    A row is flagged MISMATCH when the changed factor positions are not
    exactly {acted qubit}, and AMBIGUOUS when a gate on a different qubit
    produces the identical changed-factor set at the same label. Flags are
    findings about the representation, not failures.
    """
    gate_names = tuple(g.strip() for g in gates if g.strip())
    if not gate_names:
        raise ScenarioError("empty probe gate set")
    report = execute(source)
    rows: list[ProbeRow] = []
    for entry in report.entries:
        group: list[ProbeRow] = []
        for name in gate_names:
            for qubit in range(1, report.scenario.n + 1):
                gate = _probe_gate(name, qubit)
                after = entry.product.evolve(gate)
                fchanged = factor_diff(entry.product, after).changed
                dchanged = None
                if entry.descriptors is not None and gate.is_clifford:
                    dchanged = descriptor_diff(entry.descriptors,
                                               entry.descriptors.evolve(gate))
                group.append(ProbeRow(entry.name, name, qubit, fchanged, dchanged, ()))
        for row in group:
            flags = []
            if row.factors_changed != frozenset({row.qubit}):
                flags.append("MISMATCH")
            if any(other.qubit != row.qubit and other.factors_changed == row.factors_changed
                   for other in group):
                flags.append("AMBIGUOUS")
            row.flags = tuple(flags)
        rows.extend(group)
    return LocalityCheck(report.scenario, gate_names, rows)


def render_locality_text(check: LocalityCheck) -> str:
    lines = [f"locality check: {check.scenario.name}",
             f"gate set: {', '.join(check.gate_names)}"]
    widths = {
        "gate": max([len("gate")] + [len(r.gate) for r in check.rows]),
        "fact": max([len("factors")] + [len(_set_text(r.factors_changed)) for r in check.rows]),
        "desc": len("descriptors"),
    }
    by_label: dict[str, list[ProbeRow]] = {}
    for row in check.rows:
        by_label.setdefault(row.label, []).append(row)
    for label, group in by_label.items():
        lines.append("")
        lines.append(f"label {label}")
        header = (f"  {'gate'.ljust(widths['gate'])}  qubit  "
                  f"{'factors'.ljust(widths['fact'])}  "
                  f"{'descriptors'.ljust(widths['desc'])}  flags")
        lines.append(header)
        for row in group:
            desc = _set_text(row.descriptors_changed) if row.descriptors_changed is not None else "n/a"
            flags = ",".join(row.flags) if row.flags else "-"
            lines.append(f"  {row.gate.ljust(widths['gate'])}  "
                         f"{str(row.qubit).ljust(5)}  "
                         f"{_set_text(row.factors_changed).ljust(widths['fact'])}  "
                         f"{desc.ljust(widths['desc'])}  {flags}")
    tracked = [r for r in check.rows if r.descriptors_changed is not None]
    desc_ok = sum(1 for r in tracked if r.descriptors_changed <= {r.qubit})
    flagged = len(check.flagged_rows)
    lines.append("")
    lines.append(f"descriptor changes matched the acted qubit in {desc_ok}/{len(tracked)} rows")
    lines.append(f"factor changes identified the acted qubit in "
                 f"{len(check.rows) - flagged}/{len(check.rows)} rows; {flagged} flagged")
    return "\n".join(lines) + "\n"
