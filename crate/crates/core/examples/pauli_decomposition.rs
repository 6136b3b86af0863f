//! Pauli decompositions of the lattice Hamiltonian terms on G qubits,
//! checked against the dense matrices.
//!
//! ```text
//! cargo run --example pauli_decomposition
//! ```

use icf_scatter::circuits::{pauli_terms_h1, pauli_terms_h2, pauli_terms_hv, split_terms, to_dense};
use icf_scatter::lattice::{Basis, LatticeConfig};
use icf_scatter::linalg::max_abs_diff;

fn main() -> icf_scatter::Result<()> {
    let cfg = LatticeConfig::new(4, 4.0, 1.0, 2.0)?;
    let coord = split_terms(&cfg, Basis::Coordinate)?;
    let mom = split_terms(&cfg, Basis::Momentum)?;
    let parts = [
        ("H_v (coordinate potential)", pauli_terms_hv(&cfg)?, &coord[2]),
        ("H_1 (momentum kinetic)", pauli_terms_h1(&cfg)?, &mom[0]),
        ("H_2 (momentum potential)", pauli_terms_h2(&cfg)?, &mom[1]),
    ];
    for (name, terms, dense) in parts {
        println!("{name}: {} terms, dense mismatch {:.1e}", terms.len(), max_abs_diff(&to_dense(&terms, 2), dense));
        for t in &terms {
            println!("  {:+.5}{:+.5}i  {}", t.coeff.re, t.coeff.im, t.string);
        }
    }
    Ok(())
}
