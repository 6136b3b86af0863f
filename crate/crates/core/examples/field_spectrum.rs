//! Scalar field on a small spatial lattice with a digitized field axis:
//! low levels under both kinetic conventions.
//!
//! ```text
//! cargo run --release --example field_spectrum
//! ```

use icf_scatter::field::{build_field_hamiltonian, compare_conventions, Convention, FieldLatticeConfig};

fn main() -> icf_scatter::Result<()> {
    let single = FieldLatticeConfig { nx: 1, spacing: 1.0, m: 1.0, lambda: 0.0, nphi: 64, phi_max: 12.0 };
    let w = build_field_hamiltonian(&single, Convention::Canonical)?.eigenvalues()?;
    println!("one site, free: {:.4} {:.4} {:.4} (oscillator 0.5 1.5 2.5)", w[0], w[1], w[2]);

    let cfg = FieldLatticeConfig { nx: 2, spacing: 1.0, m: 1.0, lambda: 0.1, nphi: 32, phi_max: 8.0 };
    let d = compare_conventions(&cfg, 4)?;
    println!("two sites, lambda = 0.1, N_phi = 32");
    for (a, c) in d.as_printed_levels.iter().zip(&d.canonical_levels) {
        println!("  as printed {a:>9.4}   canonical {c:>9.4}");
    }
    println!("matrix difference: max {:.3e} (diagonal {:.3e}, off-diagonal {:.3e})", d.max_abs, d.diagonal_max_abs, d.offdiagonal_max_abs);
    Ok(())
}
