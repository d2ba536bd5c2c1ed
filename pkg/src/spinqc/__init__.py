"""Two-layer spin-register quantum simulator.

The ideal layer provides exact gate unitaries (transverse rotations,
conditional flips, register NOT, Bell readout, Fourier transform) over
n-spin registers; the pulse layer compiles two-spin gates to resonant
rectangular pulses and validates them by numerical time evolution.
"""

from spinqc.circuit import (
    Circuit,
    CircuitParseError,
    CompilationError,
    ExecutionTrace,
    PulseRunResult,
    builtin_circuit,
    circuit_unitary,
    load_circuit,
    parse_circuit,
    render_circuit,
    run_ideal,
    run_pulse,
)
from spinqc.gates import (
    Gate,
    bell_readout_matrix,
    bell_state,
    cnot,
    cnot_matrix,
    embed,
    not_all_matrix,
    qft_matrix,
    rotation_matrix,
    rx,
    ry,
    rz,
)
from spinqc.linalg import (
    HBAR,
    SPIN1_FASTEST,
    adjoint,
    equal_up_to_global_phase,
    expm_hermitian,
    is_unitary,
    kron,
    matmul,
    max_abs,
)
from spinqc.pulse import (
    ConfigError,
    FeasibilityError,
    IntegrationError,
    Pulse,
    SpinSystem,
    TransitionLine,
    compile_cnot,
    compile_rotation,
    demo_system,
    evolve_free,
    evolve_pulse,
    gate_fidelity,
    load_system_config,
    pulse_propagator,
    transition_spectrum,
)
from spinqc.register import (
    NormalizationError,
    QuantumState,
    StateLabel,
    basis_state,
    format_state,
    inner_product,
    is_product_state,
    translate_label,
)

__version__ = "0.1.0"
