//! Gate-level first-order Trotter evolution: gate counts and operator-norm
//! error against the exact exponential as the step shrinks.
//!
//! ```text
//! cargo run --release --example trotter_circuits
//! ```

use icf_scatter::circuits::trotter_evolution;
use icf_scatter::lattice::{build_coordinate_hamiltonian, build_momentum_hamiltonian, Basis, LatticeConfig};
use icf_scatter::linalg::{operator_norm, unitary_exp};

fn main() -> icf_scatter::Result<()> {
    let cfg = LatticeConfig::new(8, 4.0, 1.0, 2.0)?;
    let t = 1.0;
    for basis in [Basis::Coordinate, Basis::Momentum] {
        let h = match basis {
            Basis::Coordinate => build_coordinate_hamiltonian(&cfg, true)?,
            Basis::Momentum => build_momentum_hamiltonian(&cfg, true)?,
        };
        let exact = unitary_exp(&h.entries, t)?;
        println!("{basis:?}");
        for steps in [10, 20, 40, 80] {
            let c = trotter_evolution(&cfg, basis, t, steps)?;
            let err = operator_norm(&(c.dense_matrix()? - &exact));
            println!("  steps {steps:>3}: {:>5} gates, {:>5} multi-qubit, error {err:.3e}", c.gates().len(), c.multi_qubit_count());
        }
    }
    Ok(())
}
