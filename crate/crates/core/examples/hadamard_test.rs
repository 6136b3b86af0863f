//! Hadamard-test estimate of the ICF difference on qubits, exact
//! probabilities versus finite shots.
//!
//! ```text
//! cargo run --release --example hadamard_test
//! ```

use icf_scatter::circuits::{icf_difference_estimate, Shots};
use icf_scatter::lattice::{Basis, LatticeConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> icf_scatter::Result<()> {
    let cfg = LatticeConfig::new(4, 4.0, 1.0, 2.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dt = 0.04;
    println!("{:>5} {:>20} {:>30}", "t", "exact", "1000 shots (stderr)");
    for i in 1..=5 {
        let t = 0.4 * i as f64;
        let steps = (t / dt).round() as usize;
        let ex = icf_difference_estimate(&cfg, Basis::Coordinate, t, steps, Shots::Exact, &mut rng)?.value;
        let s = icf_difference_estimate(&cfg, Basis::Coordinate, t, steps, Shots::Count(1000), &mut rng)?;
        println!(
            "{t:>5.1} {:>+9.4}{:>+9.4}i {:>+9.4}{:>+9.4}i ({:.3}, {:.3})",
            ex.re, ex.im, s.value.re, s.value.im, s.stderr.re, s.stderr.im
        );
    }
    Ok(())
}
