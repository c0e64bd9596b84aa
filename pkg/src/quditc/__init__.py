"""Compile qubit gates into two-level rotations on a single (2**n + 1)-level qudit."""
from .core import (
    ControlledNot,
    ControlledZ,
    GateSpec,
    Hadamard,
    Not,
    Rotation,
    RotationProgram,
    SystemShape,
    T,
    bits_to_index,
    gate_from_json,
    gate_to_json,
    index_to_bits,
    pair_partner,
    rotation_matrix,
)
from .grover import (
    GroverReport,
    build_grover,
    comparison_table,
    optimal_iterations,
    run_grover,
    theoretical_success,
)
from .oracle import EquivalenceResult, check_equivalence, qubit_gate_matrix, qubit_grover_depth
from .schedule import DepthMetrics, commutes, concat, merge_adjacent, metrics, validate_program
from .simulate import (
    QuditState,
    apply_layer,
    apply_program,
    apply_rotation,
    ground_state,
    probabilities,
    program_unitary,
)
from .synth import (
    SynthesisRecord,
    synth_cnot,
    synth_gate,
    synth_hadamard,
    synth_mcz,
    synth_not,
    synth_t,
)

__version__ = "0.1.0"
