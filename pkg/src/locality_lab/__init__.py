"""Stabilizer states kept in three representations at once.

The package tracks a circuit through product-notation factor lists
(Schroedinger picture), per-qubit Heisenberg descriptors, and a dense matrix
oracle, and ships an analyzer that tabulates which factors move when a local
gate is applied -- the factor positions do not identify the acted-on qubit,
while the descriptors always do.
"""

from .dense import (
    born_probabilities,
    conjugate_dense,
    dense_of_gate,
    dense_of_product_state,
    dense_of_word,
    max_dense_qubits,
    operators_close,
    partial_trace,
    pauli_expectation,
    zero_state_density,
)
from .descriptors import (
    DescriptorSet,
    born_distribution,
    descriptor_diff,
    evolve_descriptors,
    expectation,
    initial_descriptors,
)
from .errors import (
    CapacityError,
    CircuitParseError,
    DependentFactorsError,
    DimensionMismatchError,
    IncomparableStatesError,
    InvalidFactorizationError,
    LocalityLabError,
    PauliParseError,
    ScenarioError,
    UnsupportedRepresentationError,
)
from .gates import (
    Circuit,
    Gate,
    clifford_gate,
    conjugate,
    inverse_conjugate,
    matrix_gate,
    parse_circuit,
    rotation_gate,
)
from .pauli import PauliWord, commutes, parse_pauli, pauli_mul, render, substitute
from .product import (
    ChangeKind,
    Factor,
    FactorDiff,
    ProductState,
    expand_to_pauli_sum,
    factor_diff,
    from_factors,
    parse_factor_list,
    state_equal,
)
from .runner import check_locality, render_locality_text, render_text, run_scenario
from .scenario import (
    Scenario,
    bundled_scenario_names,
    bundled_scenario_path,
    parse_scenario,
    parse_scenario_text,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ChangeKind", "Circuit", "CircuitParseError",
    "DependentFactorsError", "DescriptorSet", "DimensionMismatchError",
    "Factor", "FactorDiff", "Gate", "IncomparableStatesError",
    "InvalidFactorizationError", "LocalityLabError", "PauliParseError",
    "PauliWord", "ProductState", "Scenario", "ScenarioError",
    "UnsupportedRepresentationError", "born_distribution",
    "born_probabilities", "bundled_scenario_names", "bundled_scenario_path",
    "check_locality", "clifford_gate", "commutes", "conjugate",
    "conjugate_dense", "dense_of_gate", "dense_of_product_state",
    "dense_of_word", "descriptor_diff", "evolve_descriptors",
    "expand_to_pauli_sum", "expectation", "factor_diff", "from_factors",
    "initial_descriptors", "inverse_conjugate", "matrix_gate",
    "max_dense_qubits", "operators_close", "parse_circuit",
    "parse_factor_list", "parse_pauli", "parse_scenario",
    "parse_scenario_text", "partial_trace", "pauli_expectation", "pauli_mul",
    "render", "render_locality_text", "render_text", "rotation_gate",
    "run_scenario", "state_equal", "substitute", "zero_state_density",
]
