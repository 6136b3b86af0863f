//! Scattering phase shifts from integrated correlation functions (ICF) of a
//! particle trapped in a periodic 1D box.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`] builds the discretized trapped Hamiltonians (coordinate,
//!   momentum and the `L -> iL` rotated variant).
//! - [`analytic`] holds the closed-form infinite-volume references: phase
//!   shift, scattering and transmission amplitudes, the erfc-form ICF limit
//!   and the free resolvent.
//! - [`spectral`] diagonalizes trapped Hamiltonians and turns spectra into
//!   ICFs, resolvent traces and extracted phases.
//! - [`circuits`] is a statevector simulator with the Pauli decompositions,
//!   time-evolution circuits, Trotterization and the ancilla Hadamard test.
//! - [`noise`] runs the same circuits on density matrices with readout,
//!   depolarizing and thermal-relaxation channels.
//! - [`field`] builds the discretized scalar `phi^4` Hamiltonian on tiny lattices.
//! - [`cli`] is the experiment front-end behind the `icf` binary.
//!
//! Units: `hbar = 1` and dimensionless lengths throughout.

pub mod analytic;
pub mod circuits;
pub mod cli;
mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod noise;
pub mod spectral;

pub use error::{Error, Result};

/// Complex double used everywhere in the crate.
pub type C64 = num_complex::Complex64;
