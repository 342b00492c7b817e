"""Magic monotones for qubit states and gates.

Stabilizer Renyi entropies, amortized generation bounds, convex
stabilizer decompositions and T-count lower bounds, all under one bit
convention: qubit 0 is the most significant index bit, angles are in
radians, entropies in bits, and R_z(theta) = exp(-i theta Z).
"""

from .amortize import (
    OptimizerReport,
    PsdCheckError,
    amortized_sre_lower_bound,
    direct_lemma_min_eig,
    lemma_matrices,
    sre_generation_gap,
    strict_amortized_sre,
    verify_psd_lemmas,
    verify_r2_inequalities,
)
from .decompositions import (
    Decomposition,
    DecompositionError,
    robustness_of_magic,
    stabilizer_extent,
    strict_amortized_log_extent,
    strict_amortized_log_rom,
    write_decomposition_json,
)
from .pauli import (
    PauliSpectrum,
    PauliString,
    apply_pauli,
    expectation,
    full_spectrum,
    pauli_application_table,
    write_spectrum_csv,
)
from .simplex import SimplexError, SimplexResult, simplex_solve
from .sre import SreValue, nonstabilizing_power, r2_sum, renyi_entropy, stabilizer_nullity
from .stabilizers import (
    StabilizerSet,
    enumerate_stabilizer_states,
    is_stabilizer_state,
    stabilizer_count,
)
from .states import (
    CircuitSpec,
    HamiltonianSpec,
    StateVector,
    UnitaryMatrix,
    build_gate,
    choi_state,
    embed_gate,
    evolve,
    gate_names,
    haar_random_state,
    heisenberg_hamiltonian,
    parse_circuit,
    preset_state,
    run_circuit,
    state_from_json,
    state_to_json,
)
from .tcount import (
    TWO_MINUS_LOG2_3,
    BoundReport,
    CcrzScanRow,
    HeisenbergScanRow,
    RzScanRow,
    scan_heisenberg,
    scan_rz,
    tcount_bound_ccrz,
    tcount_lower_bound,
    write_ccrz_scan_csv,
    write_heisenberg_scan_csv,
    write_rz_scan_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CcrzScanRow",
    "CircuitSpec",
    "Decomposition",
    "DecompositionError",
    "HamiltonianSpec",
    "HeisenbergScanRow",
    "OptimizerReport",
    "PauliSpectrum",
    "PauliString",
    "PsdCheckError",
    "RzScanRow",
    "SimplexError",
    "SimplexResult",
    "SreValue",
    "StabilizerSet",
    "StateVector",
    "TWO_MINUS_LOG2_3",
    "UnitaryMatrix",
    "amortized_sre_lower_bound",
    "apply_pauli",
    "build_gate",
    "choi_state",
    "direct_lemma_min_eig",
    "embed_gate",
    "enumerate_stabilizer_states",
    "evolve",
    "expectation",
    "full_spectrum",
    "gate_names",
    "haar_random_state",
    "heisenberg_hamiltonian",
    "is_stabilizer_state",
    "lemma_matrices",
    "nonstabilizing_power",
    "parse_circuit",
    "pauli_application_table",
    "preset_state",
    "r2_sum",
    "renyi_entropy",
    "robustness_of_magic",
    "run_circuit",
    "scan_heisenberg",
    "scan_rz",
    "simplex_solve",
    "sre_generation_gap",
    "stabilizer_count",
    "stabilizer_extent",
    "stabilizer_nullity",
    "state_from_json",
    "state_to_json",
    "strict_amortized_log_extent",
    "strict_amortized_log_rom",
    "strict_amortized_sre",
    "tcount_bound_ccrz",
    "tcount_lower_bound",
    "verify_psd_lemmas",
    "verify_r2_inequalities",
    "write_ccrz_scan_csv",
    "write_decomposition_json",
    "write_heisenberg_scan_csv",
    "write_rz_scan_csv",
    "write_spectrum_csv",
]
