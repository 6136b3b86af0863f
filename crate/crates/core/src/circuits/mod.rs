//! Gate-level statevector simulation of the trapped-particle evolution.
//!
//! Qubit 0 is the least significant bit of the basis index. Printed Pauli
//! strings put the highest qubit on the left.

mod evolution;
mod gate;
mod hadamard;
mod pauli;
mod state;

pub use evolution::{
    circuit_exp_h1, circuit_exp_h2, circuit_exp_ha, circuit_exp_hb, circuit_exp_hv, decrement,
    diagonal_evolution, increment, split_terms, trotter_evolution, trotter_step, z_string_exponential,
};
pub use gate::{Gate, GateKind};
pub use hadamard::{
    estimate_from_p0, hadamard_circuit, hadamard_prefix, hadamard_test, icf_difference_estimate,
    icf_trace_estimate, trace_estimate, HadamardEstimate, Part, Shots, TraceEstimate,
};
pub use pauli::{
    h1_constant, multiply, pauli_terms_h1, pauli_terms_h2, pauli_terms_hv, scale, simplify, to_dense,
    u_operator, Pauli, PauliString, PauliTerm,
};
pub use state::{Circuit, StateVector, MAX_WIDTH};
pub(crate) use state::{apply_kernel, mask};
